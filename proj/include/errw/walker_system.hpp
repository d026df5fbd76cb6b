#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "errw/rational.hpp"
#include "errw/reinforcement.hpp"
#include "errw/weight_state.hpp"

namespace errw {

enum class Domain { Segment3, IntegerLine };
enum class Scheduler { Alternating, UniformRandom };
enum class Direction { Left, Right };

/// Seed of replica `replica` derived from `base_seed`:
/// splitmix64(base_seed + (replica + 1) * 0x9E3779B97F4A7C15).
std::uint64_t replica_seed(std::uint64_t base_seed, std::uint64_t replica) noexcept;

/// One transition. Walker ids are 0-based (walker 0 is "walker 1").
struct StepRecord {
  std::uint64_t time = 0;  // time after the step
  std::size_t walker = 0;
  Node from = 0;
  Node to = 0;
  EdgeIndex edge{};

  Direction direction() const noexcept { return to > from ? Direction::Right : Direction::Left; }
  bool operator==(const StepRecord&) const = default;
};

template <class T>
struct JumpProbabilities {
  T left;
  T right;
};

bool is_valid_node(Domain domain, Node x) noexcept;

/// Jump law of a walker sitting at `position`; proportional to the weights of
/// the two incident edges, or the single edge at a Segment3 endpoint.
JumpProbabilities<Rational> transition_probabilities(const WeightState& weights, Node position, Domain domain);
JumpProbabilities<double> transition_probabilities_double(const WeightState& weights, Node position, Domain domain);

/// w(-1) / (w(-1) + w(0)) on the 3-node segment.
Rational left_edge_fraction(const WeightState& weights);
double left_edge_fraction_double(const WeightState& weights);

struct SystemConfig {
  Domain domain = Domain::IntegerLine;
  Scheduler scheduler = Scheduler::UniformRandom;
  std::vector<Node> initial_positions{0};
  Reinforcement reinforcement = Reinforcement::linear();
  Rational default_weight{1};
  std::map<EdgeIndex, Rational> weight_overrides;
  std::uint64_t seed = 0;
};

/// K walkers sharing one set of edge weights. Exactly one walker moves per
/// step; Alternating moves walker 0 from even times and walker 1 from odd times.
class WalkerSystem {
 public:
  explicit WalkerSystem(SystemConfig config);

  /// Samples and applies one transition.
  StepRecord step();

  /// Applies a prescribed move without consuming randomness. Used by the exact
  /// enumerators. Throws if the move leaves the domain.
  StepRecord apply(std::size_t walker, Direction direction);

  /// Walker that moves next under the Alternating scheduler.
  std::size_t scheduled_walker() const noexcept { return time_ % 2 == 0 ? 0 : 1; }

  const std::vector<Node>& positions() const noexcept { return positions_; }
  std::size_t walker_count() const noexcept { return positions_.size(); }
  std::uint64_t time() const noexcept { return time_; }
  Domain domain() const noexcept { return domain_; }
  Scheduler scheduler() const noexcept { return scheduler_; }
  const WeightState& weights() const noexcept { return weights_; }

 private:
  Domain domain_;
  Scheduler scheduler_;
  std::vector<Node> positions_;
  std::uint64_t time_ = 0;
  WeightState weights_;
  std::mt19937_64 rng_;
};

}  // namespace errw
