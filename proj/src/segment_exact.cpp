#include "errw/segment_exact.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace errw {

namespace {

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

Rational ratio(std::uint64_t num, std::uint64_t den) {
  Rational q(big(num), big(den));
  q.canonicalize();
  return q;
}

void require_positive(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) throw std::invalid_argument("edge weights must be positive");
}

}  // namespace

std::array<KernelBranch, 3> four_step_kernel(std::uint64_t a, std::uint64_t b) {
  require_positive(a, b);
  const auto den = (a + b) * (a + b + 1);
  return {KernelBranch{a + 4, b, ratio(a * (a + 1), den)},
          KernelBranch{a, b + 4, ratio(b * (b + 1), den)},
          KernelBranch{a + 2, b + 2, ratio(2 * a * b, den)}};
}

Rational conditional_mean_after_cycle(std::uint64_t a, std::uint64_t b) {
  Rational mean(0);
  for (const auto& br : four_step_kernel(a, b)) mean += br.probability * ratio(br.new_a, br.new_a + br.new_b);
  return mean;
}

RationalDistribution RationalDistribution::from_atoms(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.value < y.value; });
  RationalDistribution d;
  Rational total(0);
  for (auto& atom : atoms) {
    if (sgn(atom.mass) < 0) throw std::invalid_argument("negative mass at " + to_string(atom.value));
    total += atom.mass;
    if (sgn(atom.mass) == 0) continue;
    if (!d.atoms_.empty() && d.atoms_.back().value == atom.value) {
      d.atoms_.back().mass += atom.mass;
    } else {
      d.atoms_.push_back(std::move(atom));
    }
  }
  if (total != 1) throw std::invalid_argument("masses sum to " + to_string(total) + ", not 1");
  return d;
}

Rational RationalDistribution::mean() const { return moment(1); }

Rational RationalDistribution::moment(unsigned k) const {
  Rational m(0);
  for (const auto& atom : atoms_) {
    Rational p(1);
    for (unsigned i = 0; i < k; ++i) p *= atom.value;
    m += p * atom.mass;
  }
  return m;
}

Rational RationalDistribution::cdf(const Rational& x) const {
  return probability_if([&](const Rational& v) { return v <= x; });
}

Rational RationalDistribution::probability_if(const std::function<bool(const Rational&)>& predicate) const {
  Rational p(0);
  for (const auto& atom : atoms_) {
    if (predicate(atom.value)) p += atom.mass;
  }
  return p;
}

void RationalDistribution::write_csv(std::ostream& out) const {
  out << "value_numerator,value_denominator,mass_numerator,mass_denominator\n";
  for (const auto& atom : atoms_) {
    out << atom.value.get_num().get_str() << ',' << atom.value.get_den().get_str() << ','
        << atom.mass.get_num().get_str() << ',' << atom.mass.get_den().get_str() << '\n';
  }
}

namespace {

// Integer masses over a common denominator; index j holds the state a = 1+2j.
struct UrnMasses {
  std::vector<BigInt> num{BigInt(1)};
  BigInt den{1};
};

void alt_cycle(UrnMasses& m, std::uint64_t k) {
  const std::uint64_t s = 4 * k + 2;
  std::vector<BigInt> next(m.num.size() + 2);
  for (std::size_t j = 0; j < m.num.size(); ++j) {
    const std::uint64_t a = 1 + 2 * j;
    const std::uint64_t b = s - a;
    mpz_addmul_ui(next[j + 2].get_mpz_t(), m.num[j].get_mpz_t(), a * (a + 1));
    mpz_addmul_ui(next[j].get_mpz_t(), m.num[j].get_mpz_t(), b * (b + 1));
    mpz_addmul_ui(next[j + 1].get_mpz_t(), m.num[j].get_mpz_t(), 2 * a * b);
  }
  m.num = std::move(next);
  m.den *= big(s * (s + 1));
}

void single_step(UrnMasses& m, std::uint64_t k) {
  const std::uint64_t s = 2 * k + 2;
  std::vector<BigInt> next(m.num.size() + 1);
  for (std::size_t j = 0; j < m.num.size(); ++j) {
    const std::uint64_t a = 1 + 2 * j;
    mpz_addmul_ui(next[j + 1].get_mpz_t(), m.num[j].get_mpz_t(), a);
    mpz_addmul_ui(next[j].get_mpz_t(), m.num[j].get_mpz_t(), s - a);
  }
  m.num = std::move(next);
  m.den *= big(s);
}

RationalDistribution to_distribution(const UrnMasses& m, std::uint64_t total_weight) {
  std::vector<RationalDistribution::Atom> atoms;
  atoms.reserve(m.num.size());
  for (std::size_t j = 0; j < m.num.size(); ++j) {
    Rational mass(m.num[j], m.den);
    mass.canonicalize();
    atoms.push_back({ratio(1 + 2 * j, total_weight), std::move(mass)});
  }
  return RationalDistribution::from_atoms(std::move(atoms));
}

}  // namespace

RationalDistribution exact_alt_distribution(std::uint64_t n) {
  UrnMasses m;
  for (std::uint64_t k = 0; k < n; ++k) alt_cycle(m, k);
  return to_distribution(m, 4 * n + 2);
}

std::vector<RationalDistribution> exact_alt_distributions_upto(std::uint64_t n) {
  std::vector<RationalDistribution> out;
  UrnMasses m;
  out.push_back(to_distribution(m, 2));
  for (std::uint64_t k = 0; k < n; ++k) {
    alt_cycle(m, k);
    out.push_back(to_distribution(m, 4 * (k + 1) + 2));
  }
  return out;
}

RationalDistribution exact_single_distribution(std::uint64_t n) {
  UrnMasses m;
  for (std::uint64_t k = 0; k < n; ++k) single_step(m, k);
  return to_distribution(m, 2 * n + 2);
}

std::vector<double> alt_distribution_double(std::uint64_t n) {
  std::vector<double> p{1.0};
  for (std::uint64_t k = 0; k < n; ++k) {
    const double s = 4.0 * static_cast<double>(k) + 2.0;
    const double den = s * (s + 1.0);
    std::vector<double> next(p.size() + 2, 0.0);
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double a = 1.0 + 2.0 * static_cast<double>(j);
      const double b = s - a;
      next[j + 2] += p[j] * a * (a + 1.0) / den;
      next[j] += p[j] * b * (b + 1.0) / den;
      next[j + 1] += p[j] * 2.0 * a * b / den;
    }
    p = std::move(next);
  }
  return p;
}

std::vector<double> single_distribution_double(std::uint64_t n) {
  std::vector<double> p{1.0};
  for (std::uint64_t k = 0; k < n; ++k) {
    const double s = 2.0 * static_cast<double>(k) + 2.0;
    std::vector<double> next(p.size() + 1, 0.0);
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double a = 1.0 + 2.0 * static_cast<double>(j);
      next[j + 1] += p[j] * a / s;
      next[j] += p[j] * (s - a) / s;
    }
    p = std::move(next);
  }
  return p;
}

SecondMomentDelta second_moment_delta(std::uint64_t a, std::uint64_t b) {
  require_positive(a, b);
  if ((a + b + 2) % 4 != 0) {
    throw std::invalid_argument("a+b+2 = " + std::to_string(a + b + 2) + " is not a multiple of 4");
  }
  SecondMomentDelta out;
  out.n = (a + b + 2) / 4;
  const Rational m = ratio(a, a + b);
  Rational second(0);
  for (const auto& br : four_step_kernel(a, b)) {
    const Rational v = ratio(br.new_a, br.new_a + br.new_b);
    second += br.probability * v * v;
  }
  const Rational n_sq(big(out.n * out.n));
  const Rational c = 1 / (2 * n_sq);
  out.delta = second - (1 - c) * m * m - c * m;
  out.n_sq_delta = n_sq * out.delta;
  return out;
}

Rational second_moment_delta_closed_form(std::uint64_t a, std::uint64_t b) {
  require_positive(a, b);
  const Rational m = ratio(a, a + b);
  const Rational poly(big(3 * a * a + 6 * a * b + 12 * a + 3 * b * b + 12 * b + 8));
  const Rational den(big((a + b + 1) * (a + b + 4) * (a + b + 4)));
  return -m * (1 - m) / 2 * poly / den;
}

Rational meeting_time_pmf(std::uint64_t l) {
  if (l < 1) throw std::invalid_argument("meeting gap index l must be at least 1");
  // Location classes: both walkers in the centre, exactly one there, neither.
  enum { Center, Mixed, None };
  const Rational half(1, 2);
  const Rational P[3][3] = {{0, 1, 0}, {half, 0, half}, {0, 1, 0}};
  std::array<Rational, 3> dist{Rational(1), Rational(0), Rational(0)};
  Rational first_passage(0);
  for (std::uint64_t t = 1; t <= 2 * l; ++t) {
    std::array<Rational, 3> next{Rational(0), Rational(0), Rational(0)};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) next[j] += dist[i] * P[i][j];
    }
    first_passage = next[Center];
    next[Center] = 0;
    dist = next;
  }
  return first_passage;
}

std::uint64_t atom_threshold(std::uint64_t n, const Rational& epsilon) {
  if (sgn(epsilon) <= 0) throw std::invalid_argument("epsilon must be positive");
  const Rational bound = 4 * epsilon * epsilon * Rational(big(n));
  BigInt j = bound.get_num() / bound.get_den();
  j = sqrt(j);  // floor(sqrt(floor(bound))) = floor(sqrt(bound))
  return j.get_ui();
}

namespace {

// log((2m-1)!!)
double log_odd_factorial(std::uint64_t m) {
  const double md = static_cast<double>(m);
  return std::lgamma(2.0 * md + 1.0) - md * std::log(2.0) - std::lgamma(md + 1.0);
}

}  // namespace

AtomBound atom_probability_bound(std::uint64_t n, const Rational& epsilon, AtomBoundMode mode) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  AtomBound out;
  out.j_max = atom_threshold(n, epsilon);
  out.small_threshold = epsilon * epsilon <= Rational(big(n), 4);
  const double eps = epsilon.get_d();
  const double nd = static_cast<double>(n);
  if (mode == AtomBoundMode::Closed) {
    out.value = 3.0 * std::pow(nd, -0.25) + 9.0 * std::sqrt(eps);
    return out;
  }
  double log_den = 0.0;
  for (std::uint64_t i = 1; i <= n; ++i) {
    const double x = 4.0 * static_cast<double>(i);
    log_den += std::log(x - 2.0) + std::log(x - 1.0);
  }
  const double log_choose_top = std::lgamma(2.0 * nd + 1.0);
  double sum = 0.0;
  for (std::uint64_t j = 0; j <= std::min(out.j_max, 2 * n); ++j) {
    const double jd = static_cast<double>(j);
    const double log_term = log_choose_top - std::lgamma(jd + 1.0) - std::lgamma(2.0 * nd - jd + 1.0) +
                            log_odd_factorial(j) + log_odd_factorial(2 * n - j) - log_den;
    sum += std::exp(log_term);
  }
  out.value = sum;
  return out;
}

}  // namespace errw
