#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errw/trajectory.hpp"
#include "errw/walker_system.hpp"

namespace errw {

struct ZConfig {
  std::size_t walkers = 2;
  std::vector<Node> initial_positions;  // empty: every walker starts at 0
  Reinforcement reinforcement = Reinforcement::linear();
  Rational default_weight{1};
  std::map<EdgeIndex, Rational> weight_overrides;
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> diagnose_walker;  // track F, M, H for this walker
};

SystemConfig make_system_config(const ZConfig& config);

/// State of the potential F(n, X^i_n) and the processes M^i (stopped at the
/// first time X^i <= 0) and H^i = M^i + accumulated weight corrections.
template <class T>
struct DiagnosticState {
  std::size_t walker = 0;
  Node position = 0;
  T F_value{0};
  T M_value{0};
  T H_value{0};
  bool tau_hit = false;
  std::uint64_t b_events = 0;  // rightward first crossings of a weight-1 edge before tau
};

/// sum_{y=0}^{z-1} 1/w(y) for z > 0, else 0.
template <class T>
T potential(const WeightState& weights, Node z);

template <class T>
DiagnosticState<T> init_diagnostic(const WeightState& weights, const std::vector<Node>& positions, std::size_t walker_i);

/// Advances the diagnostic by one step; `weight_before` and `weight_after` are
/// the weights of step.edge around the step.
template <class T>
DiagnosticState<T> diagnostic_update(const DiagnosticState<T>& state, const StepRecord& step, const T& weight_before,
                                     const T& weight_after);

struct IncrementRow {
  std::size_t walker = 0;
  Direction direction = Direction::Left;
  Rational probability;
  Rational d;  // increment of H
  Rational e;  // increment of M
};

/// All 2K next moves under uniform walker selection on the integer line, with
/// the exact increments they would cause.
std::vector<IncrementRow> conditional_increment_table(const WalkerSystem& system,
                                                      const DiagnosticState<Rational>& state);

struct ZResult {
  TrajectorySummary summary;
  std::optional<DiagnosticState<double>> diagnostic;
  bool diagnostic_ordered = true;  // H >= M >= 0 held after every step
};

ZResult run_z(const ZConfig& config);

using WalkerPath = std::vector<Node>;

/// Successive times n >= 0 at which the two paths coincide.
std::vector<std::uint64_t> meeting_times(const WalkerPath& x1, const WalkerPath& x2);

/// Swaps the labels on (tau_m, tau_{m+1}] whenever coins[m-1] is 1. Needs one
/// coin per meeting.
std::pair<WalkerPath, WalkerPath> label_exchange(const WalkerPath& x1, const WalkerPath& x2,
                                                 const std::vector<int>& coins);

using JointLaw = std::map<std::pair<WalkerPath, WalkerPath>, Rational>;

/// Exact law of the two position paths over `horizon` steps, by enumerating
/// every move sequence allowed by the scheduler.
JointLaw joint_path_law(const SystemConfig& config, std::uint64_t horizon);

/// Law of the relabelled pair when each meeting carries an independent fair coin.
JointLaw relabeled_law(const JointLaw& law);

enum class Verdict { RecurrentEvidence, FiniteRangeEvidence, Undecided };

std::string to_string(Verdict v);

struct RecurrenceThresholds {
  std::uint64_t stall_window = 10000;
  std::uint64_t r_min = 10;
};

struct ReplicaVerdict {
  Verdict verdict = Verdict::Undecided;
  bool all_trapped = false;    // every crossing of the final window used one edge
  bool anomaly = false;        // one walker ranging while another is stalled away from 0
  std::size_t stalled_without_zero = 0;
};

/// Finite-horizon evidence only. FiniteRange: no range growth and no fresh node
/// in the final window. Recurrent: every walker returned to 0 at least r_min
/// times in the second half. When both hold, FiniteRange wins only if the final
/// window used a single edge.
ReplicaVerdict classify_replica(const TrajectorySummary& s, const RecurrenceThresholds& t = {});

struct RecurrenceReport {
  std::vector<ReplicaVerdict> replicas;
  std::uint64_t recurrent = 0;
  std::uint64_t finite_range = 0;
  std::uint64_t undecided = 0;
  std::uint64_t all_trapped = 0;
  std::uint64_t anomalies = 0;
};

RecurrenceReport recurrence_report(const std::vector<TrajectorySummary>& summaries, const RecurrenceThresholds& t = {});

}  // namespace errw
