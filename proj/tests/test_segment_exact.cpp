#include <doctest.h>

#include <cmath>
#include <sstream>

#include "errw/segment_exact.hpp"
#include "errw/segment_sim.hpp"
#include "errw/trajectory.hpp"
#include "support/oracles.hpp"

using namespace errw;

namespace {

std::map<Rational, Rational> as_map(const RationalDistribution& d) {
  std::map<Rational, Rational> m;
  for (const auto& a : d.atoms()) m[a.value] = a.mass;
  return m;
}

}  // namespace

TEST_CASE("kernel at (1,1)") {
  const auto k = four_step_kernel(1, 1);
  CHECK(k[0].new_a == 5);
  CHECK(k[0].new_b == 1);
  CHECK(k[1].new_a == 1);
  CHECK(k[1].new_b == 5);
  CHECK(k[2].new_a == 3);
  CHECK(k[2].new_b == 3);
  for (const auto& br : k) CHECK(br.probability == Rational(1, 3));
}

TEST_CASE("kernel at (2,3)") {
  const auto k = four_step_kernel(2, 3);
  CHECK(k[0].new_a == 6);
  CHECK(k[0].new_b == 3);
  CHECK(k[0].probability == Rational(1, 5));
  CHECK(k[1].probability == Rational(2, 5));
  CHECK(k[2].probability == Rational(2, 5));
}

TEST_CASE("kernel branches sum to one and add four to the total") {
  for (std::uint64_t a = 1; a <= 30; ++a) {
    for (std::uint64_t b = 1; b <= 30; ++b) {
      Rational total(0);
      for (const auto& br : four_step_kernel(a, b)) {
        total += br.probability;
        CHECK(br.new_a + br.new_b == a + b + 4);
      }
      CHECK(total == 1);
    }
  }
  CHECK_THROWS_AS(four_step_kernel(0, 1), std::invalid_argument);
}

TEST_CASE("kernel matches a step-by-step expansion of the cycle") {
  for (long a : {1, 2, 3, 7}) {
    for (long b : {1, 4, 5}) {
      const auto law = oracle::alternating_law(1, a, b);
      std::map<Rational, Rational> kernel;
      for (const auto& br : four_step_kernel(a, b)) {
        Rational v(static_cast<long>(br.new_a), static_cast<long>(br.new_a + br.new_b));
        v.canonicalize();
        kernel[v] += br.probability;
      }
      CHECK(kernel == law);
    }
  }
}

TEST_CASE("conditional mean after a cycle") {
  CHECK(conditional_mean_after_cycle(1, 1) == Rational(1, 2));
  CHECK(conditional_mean_after_cycle(2, 3) == Rational(2, 5));
  CHECK(conditional_mean_after_cycle(7, 1) == Rational(7, 8));
  for (std::uint64_t a = 1; a <= 40; ++a) {
    for (std::uint64_t b = 1; b <= 40; ++b) {
      Rational expected(static_cast<long>(a), static_cast<long>(a + b));
      expected.canonicalize();
      CHECK(conditional_mean_after_cycle(a, b) == expected);
    }
  }
}

TEST_CASE("alternating law for small n") {
  const auto d0 = exact_alt_distribution(0);
  REQUIRE(d0.size() == 1);
  CHECK(d0.atoms()[0].value == Rational(1, 2));
  CHECK(d0.atoms()[0].mass == 1);

  const auto d1 = exact_alt_distribution(1);
  REQUIRE(d1.size() == 3);
  CHECK(d1.atoms()[0].value == Rational(1, 6));
  CHECK(d1.atoms()[1].value == Rational(1, 2));
  CHECK(d1.atoms()[2].value == Rational(5, 6));
  for (const auto& a : d1.atoms()) CHECK(a.mass == Rational(1, 3));

  CHECK(exact_alt_distribution(2).mean() == Rational(1, 2));
}

TEST_CASE("alternating law agrees with full path expansion") {
  for (int n = 1; n <= 3; ++n) CHECK(as_map(exact_alt_distribution(n)) == oracle::alternating_law(n));
}

TEST_CASE("alternating law support, mean and bounded increments") {
  const auto laws = exact_alt_distributions_upto(24);
  for (std::size_t n = 0; n < laws.size(); ++n) {
    CHECK(laws[n].mean() == Rational(1, 2));
    Rational total(0);
    for (const auto& a : laws[n].atoms()) {
      total += a.mass;
      const Rational scaled = a.value * static_cast<long>(4 * n + 2);
      CHECK(scaled.get_den() == 1);
      CHECK(scaled.get_num() % 2 == 1);
    }
    CHECK(total == 1);
  }
  // Every kernel branch from a support point of M_{n-1} moves by at most 4/(4(n-1)+2).
  for (std::size_t n = 1; n < laws.size(); ++n) {
    const Rational bound(4, static_cast<long>(4 * (n - 1) + 2));
    for (const auto& a : laws[n - 1].atoms()) {
      const auto s = 4 * (n - 1) + 2;
      const auto av = Rational(a.value * static_cast<long>(s)).get_num().get_ui();
      for (const auto& br : four_step_kernel(av, s - av)) {
        Rational next(static_cast<long>(br.new_a), static_cast<long>(br.new_a + br.new_b));
        next.canonicalize();
        CHECK(abs(next - a.value) <= bound);
      }
    }
  }
}

TEST_CASE("single walker law") {
  const auto d1 = exact_single_distribution(1);
  REQUIRE(d1.size() == 2);
  CHECK(d1.atoms()[0].value == Rational(1, 4));
  CHECK(d1.atoms()[0].mass == Rational(1, 2));
  CHECK(d1.atoms()[1].value == Rational(3, 4));
  for (int n = 0; n <= 8; ++n) {
    const auto d = exact_single_distribution(n);
    CHECK(d.mean() == Rational(1, 2));
    CHECK(as_map(d) == oracle::single_walker_law(n));
  }
}

TEST_CASE("double recursions track the exact laws") {
  for (std::uint64_t n : {1u, 5u, 20u}) {
    const auto exact = exact_alt_distribution(n);
    const auto approx = alt_distribution_double(n);
    REQUIRE(approx.size() == exact.size());
    for (std::size_t j = 0; j < approx.size(); ++j) CHECK(approx[j] == doctest::Approx(exact.atoms()[j].mass.get_d()));
    const auto se = exact_single_distribution(n);
    const auto sa = single_distribution_double(n);
    REQUIRE(sa.size() == se.size());
    for (std::size_t j = 0; j < sa.size(); ++j) CHECK(sa[j] == doctest::Approx(se.atoms()[j].mass.get_d()));
  }
}

TEST_CASE("distribution helpers") {
  const auto d = RationalDistribution::from_atoms(
      {{Rational(1, 2), Rational(1, 4)}, {Rational(1, 4), Rational(1, 4)}, {Rational(1, 2), Rational(1, 2)}});
  REQUIRE(d.size() == 2);
  CHECK(d.atoms()[0].value == Rational(1, 4));
  CHECK(d.atoms()[1].mass == Rational(3, 4));
  CHECK(d.cdf(Rational(1, 3)) == Rational(1, 4));
  CHECK(d.moment(2) == Rational(1, 16) * Rational(1, 4) + Rational(1, 4) * Rational(3, 4));
  CHECK_THROWS_AS(RationalDistribution::from_atoms({{Rational(0), Rational(1, 2)}}), std::invalid_argument);
  CHECK_THROWS_AS(RationalDistribution::from_atoms({{Rational(0), Rational(3, 2)}, {Rational(1), Rational(-1, 2)}}),
                  std::invalid_argument);

  std::ostringstream out;
  exact_alt_distribution(1).write_csv(out);
  CHECK(out.str() ==
        "value_numerator,value_denominator,mass_numerator,mass_denominator\n1,6,1,3\n1,2,1,3\n5,6,1,3\n");
}

TEST_CASE("second moment delta") {
  const auto d = second_moment_delta(1, 1);
  CHECK(d.n == 1);
  // Kernel second moment: (25/36 + 1/36 + 9/36) / 3 = 35/108.
  CHECK(oracle::second_moment_after_cycle(1, 1) == Rational(35, 108));
  CHECK(d.n_sq_delta == Rational(-11, 216));
  CHECK(second_moment_delta_closed_form(1, 1) == Rational(-11, 216));
  CHECK_THROWS_AS(second_moment_delta(1, 2), std::invalid_argument);

  for (std::uint64_t a = 1; a <= 40; ++a) {
    for (std::uint64_t b = 1; b <= 40; ++b) {
      if ((a + b + 2) % 4 != 0) continue;
      const auto r = second_moment_delta(a, b);
      CHECK(r.n_sq_delta == second_moment_delta_closed_form(a, b));
      Rational m(static_cast<long>(a), static_cast<long>(a + b));
      m.canonicalize();
      const Rational n2(static_cast<long>(r.n * r.n));
      const Rational c = 1 / (2 * n2);
      const Rational via_oracle = oracle::second_moment_after_cycle(a, b) - (1 - c) * m * m - c * m;
      CHECK(r.delta == via_oracle);
    }
  }
}

TEST_CASE("n^2 delta shrinks along the diagonal") {
  Rational prev = abs(second_moment_delta(1, 1).n_sq_delta);
  for (std::uint64_t a = 3; a < 400; a += 2) {
    const auto r = second_moment_delta(a, a);
    CHECK(abs(r.n_sq_delta) < prev);
    prev = abs(r.n_sq_delta);
  }
  CHECK(prev.get_d() < 0.01);
}

TEST_CASE("meeting time law") {
  CHECK(meeting_time_pmf(1) == Rational(1, 2));
  CHECK(meeting_time_pmf(3) == Rational(1, 8));
  for (unsigned l = 1; l <= 30; ++l) CHECK(meeting_time_pmf(l) == inverse_power_of_two(l));
  for (int l = 1; l <= 5; ++l) {
    CHECK(oracle::first_meeting_probability(2 * l) == meeting_time_pmf(l));
    CHECK(oracle::first_meeting_probability(2 * l, 3, 1) == meeting_time_pmf(l));
  }
  Rational mean(0);
  for (unsigned l = 1; l <= 60; ++l) mean += meeting_time_pmf(l) * (2 * l);
  CHECK(std::abs(mean.get_d() - 4.0) < 1e-12);
  CHECK_THROWS_AS(meeting_time_pmf(0), std::invalid_argument);
}

TEST_CASE("atom bound threshold and closed form") {
  CHECK(atom_threshold(16, Rational(1, 4)) == 2);
  CHECK(atom_threshold(4, Rational(1, 4)) == 1);
  CHECK(atom_threshold(4, Rational(1, 10)) == 0);
  CHECK(atom_threshold(100, Rational(1, 10)) == 2);

  const auto c = atom_probability_bound(10000, Rational(1, 100), AtomBoundMode::Closed);
  CHECK(c.value == doctest::Approx(1.2));
  CHECK(c.small_threshold);
  const auto far = atom_probability_bound(100000000, Rational(1, 100), AtomBoundMode::Closed);
  CHECK(far.value - 0.9 < 0.04);
  CHECK_FALSE(atom_probability_bound(1, Rational(1), AtomBoundMode::Closed).small_threshold);
}

TEST_CASE("combinatorial atom bound") {
  for (std::uint64_t n : {1u, 4u, 9u, 16u, 100u, 2500u}) {
    for (const Rational& eps : {Rational(1, 10), Rational(1, 4), Rational(1, 2)}) {
      const auto b = atom_probability_bound(n, eps, AtomBoundMode::Combinatorial);
      CHECK(b.value == doctest::Approx(oracle::atom_bound_product_form(n, b.j_max)).epsilon(1e-9));
    }
  }
  for (std::uint64_t n : {4u, 9u, 16u}) {
    const auto law = exact_alt_distribution(n);
    for (const Rational& eps : {Rational(1, 10), Rational(1, 4)}) {
      const Rational eps2 = eps * eps;
      const Rational exact = law.probability_if([&](const Rational& m) { return m * m * static_cast<long>(n) <= eps2; });
      const auto comb = atom_probability_bound(n, eps, AtomBoundMode::Combinatorial);
      const auto closed = atom_probability_bound(n, eps, AtomBoundMode::Closed);
      CHECK(exact.get_d() <= comb.value);
      CHECK(comb.value <= closed.value);
    }
  }
}

TEST_CASE("simulated alternating law matches the exact law") {
  constexpr std::uint64_t kReplicas = 100000;
  for (std::uint64_t n : {1u, 4u, 10u}) {
    const auto law = exact_alt_distribution(n);
    const auto samples = run_replicas(kReplicas, 1, [n](std::uint64_t r) {
      return simulate_alt_martingale(n, replica_seed(20261015 + n, r)).back();
    });
    for (const auto& atom : law.atoms()) {
      const double v = atom.value.get_d();
      const double p = atom.mass.get_d();
      double hits = 0;
      for (double x : samples) hits += std::abs(x - v) < 1e-12 ? 1 : 0;
      const double se = std::sqrt(p * (1 - p) / kReplicas);
      CHECK(std::abs(hits / kReplicas - p) <= 3 * se + 1e-12);
    }
  }
}

TEST_CASE("simulated meeting gaps follow the geometric law for any reinforcement") {
  for (const auto& r : {Reinforcement::linear(), Reinforcement::sequence(SequenceSpec::geometric(Rational(2)))}) {
    const auto gaps = simulate_meeting_gaps(20000, 777, r);
    double total = 0;
    std::map<std::uint64_t, double> freq;
    for (auto g : gaps) {
      CHECK(g % 2 == 0);
      freq[g / 2] += 1;
      total += static_cast<double>(g);
    }
    const double n = static_cast<double>(gaps.size());
    for (unsigned l = 1; l <= 6; ++l) {
      const double p = std::ldexp(1.0, -static_cast<int>(l));
      CHECK(std::abs(freq[l] / n - p) <= 3 * std::sqrt(p * (1 - p) / n));
    }
    CHECK(std::abs(total / n - 4.0) < 0.1);
  }
}
