#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "errw/path_recursion.hpp"
#include "errw/rational.hpp"
#include "errw/segment_exact.hpp"
#include "errw/segment_sim.hpp"
#include "errw/sequence_classifier.hpp"
#include "errw/stats.hpp"
#include "errw/trajectory.hpp"
#include "errw/walker_system.hpp"
#include "errw/z_simulator.hpp"

using namespace errw;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail << "[" << why << "] ";
    }
  }
};

unsigned thread_count() { return std::max(1u, std::thread::hardware_concurrency()); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Rational ratio(std::uint64_t num, std::uint64_t den) {
  Rational q(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return q;
}

void ac1(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t bad = 0;
  for (std::uint64_t a = 1; a <= 100; ++a) {
    for (std::uint64_t b = 1; b <= 100; ++b) {
      if (conditional_mean_after_cycle(a, b) != ratio(a, a + b)) ++bad;
    }
  }
  const double t = seconds_since(t0);
  o.require(bad == 0, std::to_string(bad) + " pairs differ");
  o.require(t < 1.0, "runtime over 1 s");
  o.detail << "10000 pairs exact, " << t << " s";
}

void ac2(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t compared = 0;
  for (std::uint64_t a : {1u, 2u, 3u, 5u}) {
    for (std::uint64_t b : {1u, 2u, 3u, 5u}) {
      EQPair rec = base_pair(a, b);
      for (std::uint64_t l = 1; l <= 5; ++l) {
        if (l > 1) rec = recursion_step(rec, a, b, l - 1);
        const Rational closed = ratio(a, a + b) / Rational(static_cast<unsigned long>(1) << l);
        if (closed != closed_form_value(a, b, l)) o.require(false, "closed form helper");
        const EQPair brute = enumeration_pair(static_cast<unsigned>(l), a, b);
        const bool ok = rec.E == closed && rec.q == closed && brute.E == closed && brute.q == closed;
        o.require(ok, "a=" + std::to_string(a) + " b=" + std::to_string(b) + " l=" + std::to_string(l));
        ++compared;
      }
    }
  }
  const double t = seconds_since(t0);
  o.require(t < 120.0, "runtime over 2 min");
  o.detail << compared << " (a,b,l) triples agree, " << t << " s";
}

void ac3(Outcome& o) {
  for (std::uint64_t l = 1; l <= 30; ++l) {
    o.require(meeting_time_pmf(l) == inverse_power_of_two(static_cast<unsigned>(l)), "pmf l=" + std::to_string(l));
  }
  constexpr std::uint64_t kGaps = 100000;
  const auto gaps = simulate_meeting_gaps(kGaps, kSeed);
  std::map<std::uint64_t, std::uint64_t> counts;
  double total = 0;
  for (auto g : gaps) {
    ++counts[g];
    total += static_cast<double>(g);
  }
  double worst = 0;
  for (std::uint64_t l = 1; l <= 8; ++l) {
    const double p = std::ldexp(1.0, -static_cast<int>(l));
    const double se = std::sqrt(kGaps * p * (1 - p));
    const double z = std::abs(static_cast<double>(counts[2 * l]) - kGaps * p) / se;
    worst = std::max(worst, z);
    o.require(z <= 3.0, "gap 2l with l=" + std::to_string(l) + " off by " + std::to_string(z) + " SE");
  }
  std::uint64_t odd = 0;
  for (const auto& [g, c] : counts) {
    if (g % 2) odd += c;
  }
  o.require(odd == 0, "odd gaps");
  const double mean_gap = total / kGaps;
  o.require(std::abs(mean_gap - 4.0) <= 0.05, "mean gap");
  o.detail << "pmf exact to l=30, worst |z|=" << worst << " for l<=8, mean gap " << mean_gap << " steps";
}

void ac4(Outcome& o) {
  std::mt19937_64 rng(kSeed);
  int checked = 0;
  int attempts = 0;
  Rational worst_e(0);
  while (checked < 250 && ++attempts < 20000) {
    const std::size_t k = 1 + rng() % 4;
    ZConfig c;
    c.walkers = k;
    for (std::size_t j = 0; j < k; ++j) c.initial_positions.push_back(static_cast<Node>(rng() % 6));
    switch (rng() % 3) {
      case 0: c.reinforcement = Reinforcement::sequence(SequenceSpec::geometric(Rational(2))); break;
      case 1: c.reinforcement = Reinforcement::sequence(SequenceSpec::polynomial(2, Rational(1, 2))); break;
      default: break;
    }
    for (Node y = 0; y < 6; ++y) {
      if (rng() % 2) c.weight_overrides[EdgeIndex{y}] = make_rational(1 + rng() % 5, 1 + rng() % 3);
    }
    c.seed = rng();
    WalkerSystem sys(make_system_config(c));
    const std::size_t i = rng() % k;
    auto diag = init_diagnostic<Rational>(sys.weights(), sys.positions(), i);
    const auto steps = rng() % 40;
    for (std::uint64_t t = 0; t < steps; ++t) {
      const WeightState before = sys.weights();
      const auto rec = sys.step();
      diag = diagnostic_update(diag, rec, before.exact_weight(rec.edge), sys.weights().exact_weight(rec.edge));
    }
    if (diag.tau_hit || sys.positions()[i] <= 0) continue;
    Rational mass(0), sum_d(0), sum_e(0);
    for (const auto& r : conditional_increment_table(sys, diag)) {
      mass += r.probability;
      sum_d += r.probability * r.d;
      sum_e += r.probability * r.e;
    }
    o.require(mass == 1, "probabilities do not sum to 1");
    o.require(sum_d == 0, "H increment sum is " + to_string(sum_d));
    o.require(sum_e <= 0, "M increment sum is " + to_string(sum_e));
    if (sum_e < worst_e) worst_e = sum_e;
    ++checked;
  }
  o.require(checked >= 200, "only " + std::to_string(checked) + " states");
  o.detail << checked << " states with K<=4, sum p*dH = 0 exactly, min sum p*dM = " << to_double(worst_e);
}

void ac5(Outcome& o) {
  SystemConfig seg;
  seg.domain = Domain::Segment3;
  seg.scheduler = Scheduler::UniformRandom;
  std::size_t outcomes = 0;
  for (const auto& start : {std::vector<Node>{0, 0}, std::vector<Node>{-1, 1}, std::vector<Node>{0, 1}}) {
    seg.initial_positions = start;
    const auto law = joint_path_law(seg, 4);
    Rational total(0);
    for (const auto& [paths, p] : law) total += p;
    o.require(total == 1, "law does not sum to 1");
    o.require(relabeled_law(law) == law, "relabelled law differs");
    outcomes += law.size();
  }
  o.detail << "3 starts, " << outcomes << " joint outcomes, all equal after relabelling";
}

void ac6(Outcome& o) {
  const auto law = exact_single_distribution(2000);
  WeightedAtoms atoms;
  atoms.reserve(law.size());
  for (const auto& a : law.atoms()) atoms.emplace_back(to_double(a.value), to_double(a.mass));
  const double ks = ks_distance(atoms, arcsine_cdf);
  o.require(ks < 0.02, "exact KS " + std::to_string(ks));

  constexpr std::uint64_t kReplicas = 10000;
  const auto sample = run_replicas(kReplicas, thread_count(), [](std::uint64_t r) {
    return simulate_segment_fraction(Scheduler::UniformRandom, 1, 4000, replica_seed(kSeed, r));
  });
  const auto bins = histogram_49(sample);
  const double lo = bins.front().density;
  const double hi = bins.back().density;
  o.require(std::abs(lo - 4.5) <= 0.5 && std::abs(hi - 4.5) <= 0.5, "edge bins");
  o.detail << "exact KS " << ks << ", edge densities " << lo << " and " << hi << " at x=" << bins.front().center;
}

void ac7(Outcome& o) {
  std::uint64_t pairs = 0;
  for (std::uint64_t s = 2; s + 2 <= 400; ++s) {
    if ((s + 2) % 4) continue;
    for (std::uint64_t a = 1; a < s; ++a) {
      if (second_moment_delta(a, s - a).n_sq_delta != second_moment_delta_closed_form(a, s - a)) {
        o.require(false, "a=" + std::to_string(a) + " b=" + std::to_string(s - a));
      }
      ++pairs;
    }
  }
  Rational prev(0);
  double first = 0, last = 0;
  for (std::uint64_t a = 1; 2 * a + 2 <= 400; a += 2) {
    const Rational v = abs(second_moment_delta(a, a).n_sq_delta);
    if (a > 1) o.require(v < prev, "not decreasing at a=b=" + std::to_string(a));
    if (a == 1) first = to_double(v);
    last = to_double(v);
    prev = v;
  }
  o.require(last < first / 50, "diagonal not approaching 0");
  o.detail << pairs << " pairs exact, |n^2 Delta| on a=b falls from " << first << " to " << last;
}

void ac8(Outcome& o) {
  for (std::uint64_t root : {2u, 3u, 4u}) {
    const std::uint64_t n = root * root;
    const auto law = exact_alt_distribution(n);
    for (const Rational& eps : {make_rational(1, 10), make_rational(1, 4)}) {
      const double exact = to_double(law.cdf(eps / Rational(static_cast<unsigned long>(root))));
      const double comb = atom_probability_bound(n, eps, AtomBoundMode::Combinatorial).value;
      const double closed = atom_probability_bound(n, eps, AtomBoundMode::Closed).value;
      o.require(exact <= comb && comb <= closed, "ordering at n=" + std::to_string(n) + " eps=" + to_string(eps));
      o.detail << "n=" << n << " eps=" << to_double(eps) << ": " << exact << "<=" << comb << "<=" << closed << "; ";
    }
  }
  for (const Rational& eps : {make_rational(1, 10), make_rational(1, 4)}) {
    const double limit = 9 * std::sqrt(to_double(eps));
    double prev = INFINITY;
    for (std::uint64_t n = 100; n <= 1000000000000ULL; n *= 100) {
      const double gap = atom_probability_bound(n, eps, AtomBoundMode::Closed).value - limit;
      o.require(gap >= 0 && gap < prev, "closed envelope not decreasing to 9 sqrt(eps)");
      prev = gap;
    }
    o.require(prev < 0.01, "closed envelope far from 9 sqrt(eps)");
  }
  o.detail << "closed minus 9 sqrt(eps) at n=1e12 below 0.01";
}

RecurrenceReport run_population(const SequenceSpec& spec, std::uint64_t seed_base) {
  const auto summaries = run_replicas(200, thread_count(), [&](std::uint64_t r) {
    ZConfig c;
    c.walkers = 2;
    c.reinforcement = Reinforcement::sequence(spec);
    c.steps = 100000;
    c.seed = replica_seed(seed_base, r);
    return run_z(c).summary;
  });
  return recurrence_report(summaries);
}

void ac9(Outcome& o) {
  const auto flat = SequenceSpec::constant(Rational(1));
  const auto flat_class = classify(flat, 256, growth_hint_for(flat));
  o.require(flat_class.verdict == SeriesClass::DivergesToInfinity, "constant 1 not divergent");
  const auto flat_report = run_population(flat, kSeed);
  const double recurrent = flat_report.recurrent / 200.0;
  o.require(recurrent >= 0.95, "recurrent share " + std::to_string(recurrent));

  const auto geo = SequenceSpec::geometric(Rational(2));
  const auto hint = growth_hint_for(geo);
  const auto geo_class = classify(geo, 256, hint);
  o.require(geo_class.verdict == SeriesClass::Converges, "2^k not convergent");
  const auto bound = trapping_bound(2, geo, 256, hint).bound;
  const auto geo_report = run_population(geo, kSeed + 1);
  const double finite = geo_report.finite_range / 200.0;
  const double trapped = geo_report.all_trapped / 200.0;
  const double se = std::sqrt(trapped * (1 - trapped) / 200.0);
  o.require(finite >= 0.95, "finite-range share " + std::to_string(finite));
  o.require(trapped >= bound - 3 * se, "all-trapped share below bound");
  o.detail << "a=1: " << to_string(flat_class.verdict) << ", recurrent " << recurrent << "; a=2^k: "
           << to_string(geo_class.verdict) << ", finite range " << finite << ", all trapped " << trapped
           << " (bound " << bound << ")";
}

void ac10(Outcome& o) {
  constexpr std::uint64_t kReplicas = 10000;
  constexpr std::uint64_t kN = 10000;
  constexpr std::uint64_t kn = 500;
  struct Row {
    std::optional<double> residual;
    double m_final = 0;
    double qv = 0;
    double target = 0;
  };
  const auto rows = run_replicas(kReplicas, thread_count(), [](std::uint64_t r) {
    const auto m = simulate_alt_martingale(kN, replica_seed(kSeed + 2, r));
    const auto qv = quadratic_variation_check(m, kn);
    return Row{clt_residual(m, kn), m.back(), qv.value, qv.target};
  });
  std::vector<double> residuals;
  std::uint64_t eligible = 0, close = 0;
  for (const auto& row : rows) {
    if (row.residual) residuals.push_back(*row.residual);
    if (row.m_final < 0.1 || row.m_final > 0.9) continue;
    ++eligible;
    if (std::abs(row.qv - row.target) <= 0.15 * row.target) ++close;
  }
  const double ks = ks_distance(residuals, normal_cdf);
  const double share = eligible ? static_cast<double>(close) / eligible : 0.0;
  o.require(ks < 0.03, "residual KS " + std::to_string(ks));
  o.require(share >= 0.8, "QV share " + std::to_string(share));
  o.detail << "residual KS " << ks << " over " << residuals.size() << ", QV within 15% in " << close << "/"
           << eligible;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("%s %s %s [%.1f s]\n", name, o.pass ? "PASS" : "FAIL", o.detail.str().c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
