#include "errw/z_simulator.hpp"

#include <algorithm>

namespace errw {

SystemConfig make_system_config(const ZConfig& config) {
  if (config.walkers == 0) throw std::invalid_argument("at least one walker is required");
  SystemConfig sc;
  sc.domain = Domain::IntegerLine;
  sc.scheduler = Scheduler::UniformRandom;
  sc.initial_positions = config.initial_positions.empty() ? std::vector<Node>(config.walkers, 0) : config.initial_positions;
  if (sc.initial_positions.size() != config.walkers) {
    throw std::invalid_argument(std::to_string(config.initial_positions.size()) + " initial positions for " +
                                std::to_string(config.walkers) + " walkers");
  }
  sc.reinforcement = config.reinforcement;
  sc.default_weight = config.default_weight;
  sc.weight_overrides = config.weight_overrides;
  sc.seed = config.seed;
  return sc;
}

namespace {

template <class T>
T weight_as(const WeightState& weights, EdgeIndex e);

template <>
double weight_as<double>(const WeightState& weights, EdgeIndex e) {
  return weights.weight(e);
}

template <>
Rational weight_as<Rational>(const WeightState& weights, EdgeIndex e) {
  return weights.exact_weight(e);
}

template <class T>
T reciprocal(const T& w) {
  return T(1) / w;
}

}  // namespace

template <class T>
T potential(const WeightState& weights, Node z) {
  T sum(0);
  for (Node y = 0; y < z; ++y) sum += reciprocal(weight_as<T>(weights, EdgeIndex{y}));
  return sum;
}

template <class T>
DiagnosticState<T> init_diagnostic(const WeightState& weights, const std::vector<Node>& positions, std::size_t walker_i) {
  if (walker_i >= positions.size()) throw std::out_of_range("diagnosed walker does not exist");
  DiagnosticState<T> s;
  s.walker = walker_i;
  s.position = positions[walker_i];
  s.F_value = potential<T>(weights, s.position);
  s.tau_hit = s.position <= 0;
  s.M_value = s.tau_hit ? T(0) : s.F_value;
  s.H_value = s.M_value;
  return s;
}

template <class T>
DiagnosticState<T> diagnostic_update(const DiagnosticState<T>& state, const StepRecord& step, const T& weight_before,
                                     const T& weight_after) {
  if (!(weight_before > 0) || weight_after < weight_before) {
    throw std::invalid_argument("inconsistent weight snapshots for edge " + std::to_string(step.edge.z));
  }
  DiagnosticState<T> s = state;
  T correction(0);
  if (step.walker == s.walker) {
    if (step.from != s.position) {
      throw std::invalid_argument("step starts at " + std::to_string(step.from) + " but the diagnosed walker is at " +
                                  std::to_string(s.position));
    }
    const Node z = step.from;
    if (step.to > z) {
      s.F_value = z >= 0 ? s.F_value + reciprocal(weight_after) : T(0);
      if (!s.tau_hit) {
        correction = reciprocal(weight_before) - reciprocal(weight_after);
        if (weight_before == T(1)) ++s.b_events;
      }
    } else {
      s.F_value = z - 1 > 0 ? s.F_value - reciprocal(weight_before) : T(0);
    }
    s.position = step.to;
  } else {
    const Node y = step.edge.z;
    if (y >= 0 && y < s.position) {
      const T change = reciprocal(weight_after) - reciprocal(weight_before);
      s.F_value += change;
      if (!s.tau_hit) correction = -change;
    }
  }
  if (!s.tau_hit) {
    const T e = s.F_value - s.M_value;
    s.M_value = s.F_value;
    s.H_value += e + correction;
    if (s.position <= 0) s.tau_hit = true;
  }
  return s;
}

template double potential<double>(const WeightState&, Node);
template Rational potential<Rational>(const WeightState&, Node);
template DiagnosticState<double> init_diagnostic<double>(const WeightState&, const std::vector<Node>&, std::size_t);
template DiagnosticState<Rational> init_diagnostic<Rational>(const WeightState&, const std::vector<Node>&, std::size_t);
template DiagnosticState<double> diagnostic_update<double>(const DiagnosticState<double>&, const StepRecord&,
                                                           const double&, const double&);
template DiagnosticState<Rational> diagnostic_update<Rational>(const DiagnosticState<Rational>&, const StepRecord&,
                                                               const Rational&, const Rational&);

std::vector<IncrementRow> conditional_increment_table(const WalkerSystem& system,
                                                      const DiagnosticState<Rational>& state) {
  if (system.domain() != Domain::IntegerLine) {
    throw std::invalid_argument("increment table is defined for walkers on the integer line");
  }
  const auto& weights = system.weights();
  const auto& positions = system.positions();
  const Rational pick(1, static_cast<long>(positions.size()));
  std::vector<IncrementRow> rows;
  for (std::size_t j = 0; j < positions.size(); ++j) {
    const auto jump = transition_probabilities(weights, positions[j], Domain::IntegerLine);
    for (auto dir : {Direction::Left, Direction::Right}) {
      const Node from = positions[j];
      const Node to = dir == Direction::Right ? from + 1 : from - 1;
      const auto edge = EdgeIndex::between(from, to);
      const StepRecord rec{system.time() + 1, j, from, to, edge};
      const Rational before = weights.exact_weight(edge);
      const Rational after = weights.scheme().exact_weight(edge, weights.count(edge) + 1, weights.initial_weight(edge));
      const auto next = diagnostic_update(state, rec, before, after);
      rows.push_back({j, dir, pick * (dir == Direction::Left ? jump.left : jump.right), next.H_value - state.H_value,
                      next.M_value - state.M_value});
    }
  }
  return rows;
}

ZResult run_z(const ZConfig& config) {
  WalkerSystem system(make_system_config(config));
  ZResult result;
  std::vector<Observer> observers;
  if (config.diagnose_walker) {
    result.diagnostic = init_diagnostic<double>(system.weights(), system.positions(), *config.diagnose_walker);
    observers.push_back([&result](const WalkerSystem& sys, const StepRecord& rec) {
      const auto& w = sys.weights();
      const double after = w.weight(rec.edge);
      const double before = w.scheme().weight(rec.edge, w.count(rec.edge) - 1, w.initial_weight(rec.edge).get_d());
      auto& diag = *result.diagnostic;
      diag = diagnostic_update(diag, rec, before, after);
      const double slack = 1e-9 * (1.0 + diag.H_value);
      if (diag.M_value < -slack || diag.H_value < diag.M_value - slack) result.diagnostic_ordered = false;
    });
  }
  result.summary = run_trajectory(system, config.steps, observers);
  return result;
}

std::vector<std::uint64_t> meeting_times(const WalkerPath& x1, const WalkerPath& x2) {
  if (x1.size() != x2.size()) throw std::invalid_argument("walker paths have different lengths");
  std::vector<std::uint64_t> out;
  for (std::size_t n = 0; n < x1.size(); ++n) {
    if (x1[n] == x2[n]) out.push_back(n);
  }
  return out;
}

std::pair<WalkerPath, WalkerPath> label_exchange(const WalkerPath& x1, const WalkerPath& x2,
                                                 const std::vector<int>& coins) {
  const auto taus = meeting_times(x1, x2);
  if (coins.size() < taus.size()) {
    throw std::invalid_argument(std::to_string(taus.size()) + " meetings need as many coins, got " +
                                std::to_string(coins.size()));
  }
  std::pair<WalkerPath, WalkerPath> out{x1, x2};
  std::size_t m = 0;  // number of meetings strictly before n
  for (std::size_t n = 0; n < x1.size(); ++n) {
    while (m < taus.size() && taus[m] < n) ++m;
    if (m > 0 && coins[m - 1] != 0) std::swap(out.first[n], out.second[n]);
  }
  return out;
}

namespace {

void enumerate_law(const WalkerSystem& system, std::uint64_t remaining, const Rational& mass, WalkerPath& p1,
                   WalkerPath& p2, JointLaw& law) {
  if (remaining == 0) {
    law[{p1, p2}] += mass;
    return;
  }
  std::vector<std::pair<std::size_t, Rational>> choices;
  if (system.scheduler() == Scheduler::Alternating) {
    choices.emplace_back(system.scheduled_walker(), Rational(1));
  } else {
    for (std::size_t j = 0; j < system.walker_count(); ++j) choices.emplace_back(j, Rational(1, 2));
  }
  for (const auto& [j, pick] : choices) {
    const auto jump = transition_probabilities(system.weights(), system.positions()[j], system.domain());
    for (auto dir : {Direction::Left, Direction::Right}) {
      const Rational& p = dir == Direction::Left ? jump.left : jump.right;
      if (sgn(p) == 0) continue;
      WalkerSystem next = system;
      next.apply(j, dir);
      p1.push_back(next.positions()[0]);
      p2.push_back(next.positions()[1]);
      enumerate_law(next, remaining - 1, mass * pick * p, p1, p2, law);
      p1.pop_back();
      p2.pop_back();
    }
  }
}

}  // namespace

JointLaw joint_path_law(const SystemConfig& config, std::uint64_t horizon) {
  if (config.initial_positions.size() != 2) throw std::invalid_argument("joint path law needs exactly 2 walkers");
  WalkerSystem system(config);
  WalkerPath p1{system.positions()[0]};
  WalkerPath p2{system.positions()[1]};
  JointLaw law;
  enumerate_law(system, horizon, Rational(1), p1, p2, law);
  return law;
}

JointLaw relabeled_law(const JointLaw& law) {
  JointLaw out;
  for (const auto& [paths, mass] : law) {
    const auto meetings = meeting_times(paths.first, paths.second).size();
    const Rational share = mass * inverse_power_of_two(static_cast<unsigned>(meetings));
    std::vector<int> coins(meetings);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << meetings); ++bits) {
      for (std::size_t m = 0; m < meetings; ++m) coins[m] = static_cast<int>((bits >> m) & 1);
      out[label_exchange(paths.first, paths.second, coins)] += share;
    }
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::RecurrentEvidence: return "RecurrentEvidence";
    case Verdict::FiniteRangeEvidence: return "FiniteRangeEvidence";
    case Verdict::Undecided: return "Undecided";
  }
  return "Undecided";
}

ReplicaVerdict classify_replica(const TrajectorySummary& s, const RecurrenceThresholds& t) {
  ReplicaVerdict v;
  const std::uint64_t end = s.start_time + s.steps;
  const bool window_fits = s.steps >= t.stall_window && t.stall_window > 0;
  const std::uint64_t window_start = window_fits ? end - t.stall_window : s.start_time;

  bool any_ranging = false;
  bool any_stalled_away = false;
  bool finite = window_fits && s.last_fresh_time <= window_start;
  bool recurrent = true;
  for (const auto& w : s.walkers) {
    const bool grew = w.last_growth_time > window_start;
    finite = finite && !grew;
    recurrent = recurrent && w.returns_second_half >= t.r_min;
    any_ranging = any_ranging || grew;
    if (!grew && w.returns_second_half == 0) any_stalled_away = true;
    if (!grew && !w.reached_nonpositive) ++v.stalled_without_zero;
  }
  v.all_trapped = window_fits && s.single_edge_since <= window_start;
  v.anomaly = window_fits && any_ranging && any_stalled_away;

  if (finite && recurrent) {
    v.verdict = v.all_trapped ? Verdict::FiniteRangeEvidence : Verdict::RecurrentEvidence;
  } else if (finite) {
    v.verdict = Verdict::FiniteRangeEvidence;
  } else if (recurrent) {
    v.verdict = Verdict::RecurrentEvidence;
  }
  return v;
}

RecurrenceReport recurrence_report(const std::vector<TrajectorySummary>& summaries, const RecurrenceThresholds& t) {
  RecurrenceReport r;
  for (const auto& s : summaries) {
    const auto v = classify_replica(s, t);
    switch (v.verdict) {
      case Verdict::RecurrentEvidence: ++r.recurrent; break;
      case Verdict::FiniteRangeEvidence: ++r.finite_range; break;
      case Verdict::Undecided: ++r.undecided; break;
    }
    r.all_trapped += v.all_trapped ? 1 : 0;
    r.anomalies += v.anomaly ? 1 : 0;
    r.replicas.push_back(v);
  }
  return r;
}

}  // namespace errw
