#include "errw/sequence_classifier.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace errw {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kSlack = 1e-12;

// Worst-case rounding error of a forward sum of n nonnegative doubles.
double summation_error(double sum, std::size_t n) {
  const double nu = static_cast<double>(n) * std::numeric_limits<double>::epsilon() / 2;
  return sum * nu / (1.0 - nu);
}

}  // namespace

PhiPartialSums phi_partial_sums(const SequenceSpec& spec, std::uint64_t k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  PhiPartialSums out;
  out.increments.reserve(k_max);
  out.alpha.reserve(k_max);
  out.partials.reserve(k_max);
  double alpha = 1.0;
  double partial = 0.0;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    const double a = spec.increment_double(k);
    if (a < 0) throw std::invalid_argument("negative increment at k = " + std::to_string(k));
    alpha += a;
    partial += 1.0 / alpha;
    out.increments.push_back(a);
    out.alpha.push_back(alpha);
    out.partials.push_back(partial);
  }
  return out;
}

std::optional<GrowthTest> growth_hint_for(const SequenceSpec& spec) {
  return std::visit(overloaded{
                        [](const ConstantIncrements& g) -> std::optional<GrowthTest> {
                          return UpperPower{1.0, 1.0 + g.value.get_d()};
                        },
                        [](const PolynomialIncrements& g) -> std::optional<GrowthTest> {
                          const double c = g.coefficient.get_d();
                          if (g.degree == 0 || c == 0.0) return UpperPower{1.0, 1.0 + c};
                          // sum_{l<=k} l^d >= k^(d+1)/(d+1)
                          return LowerPower{g.degree + 1.0, c / (g.degree + 1.0)};
                        },
                        [](const GeometricIncrements& g) -> std::optional<GrowthTest> {
                          const double r = g.ratio.get_d();
                          if (r > 1.0) return RatioBound{r};
                          return UpperPower{1.0, 2.0};
                        },
                        [](const ExplicitIncrements&) -> std::optional<GrowthTest> { return std::nullopt; },
                    },
                    spec.generator());
}

std::string to_string(SeriesClass c) {
  switch (c) {
    case SeriesClass::DivergesToInfinity: return "DivergesToInfinity";
    case SeriesClass::Converges: return "Converges";
    case SeriesClass::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Classification classify(const SequenceSpec& spec, std::uint64_t k_max, const std::optional<GrowthTest>& growth_test) {
  if (k_max < 16) throw std::invalid_argument("classification needs k_max >= 16");
  const auto sums = phi_partial_sums(spec, k_max);
  Classification out;
  out.partial = sums.partials.back();
  if (!growth_test) {
    out.reason = "no growth hint";
    return out;
  }
  const auto& alpha = sums.alpha;
  std::visit(
      overloaded{
          [&](const RatioBound& h) {
            if (!(h.ratio > 1.0)) {
              out.reason = "ratio bound must exceed 1";
              return;
            }
            for (std::size_t i = 0; i + 1 < alpha.size() && std::isfinite(alpha[i + 1]); ++i) {
              if (alpha[i + 1] < h.ratio * alpha[i] * (1.0 - kSlack)) {
                out.reason = "ratio bound fails at k = " + std::to_string(i + 1);
                return;
              }
            }
            out.verdict = SeriesClass::Converges;
            out.tail_bound = 1.0 / (alpha.back() * (h.ratio - 1.0)) + summation_error(out.partial, alpha.size());
            out.reason = "geometric tail";
          },
          [&](const LowerPower& h) {
            if (!(h.exponent > 1.0) || !(h.coefficient > 0.0)) {
              out.reason = "lower power bound needs exponent > 1 and positive coefficient";
              return;
            }
            for (std::size_t i = 0; i < alpha.size(); ++i) {
              const double k = static_cast<double>(i + 1);
              if (alpha[i] < h.coefficient * std::pow(k, h.exponent) * (1.0 - kSlack)) {
                out.reason = "lower power bound fails at k = " + std::to_string(i + 1);
                return;
              }
            }
            const double K = static_cast<double>(k_max);
            out.verdict = SeriesClass::Converges;
            out.tail_bound = 1.0 / (h.coefficient * (h.exponent - 1.0) * std::pow(K, h.exponent - 1.0)) +
                             summation_error(out.partial, alpha.size());
            out.reason = "p-series tail";
          },
          [&](const UpperPower& h) {
            if (!(h.exponent <= 1.0) || !(h.coefficient > 0.0)) {
              out.reason = "upper power bound needs exponent <= 1 and positive coefficient";
              return;
            }
            for (std::size_t i = 0; i < alpha.size(); ++i) {
              const double k = static_cast<double>(i + 1);
              if (alpha[i] > h.coefficient * std::pow(k, h.exponent) * (1.0 + kSlack)) {
                out.reason = "upper power bound fails at k = " + std::to_string(i + 1);
                return;
              }
            }
            out.verdict = SeriesClass::DivergesToInfinity;
            out.reason = "dominates a divergent p-series";
          },
      },
      *growth_test);
  return out;
}

TrappingBound trapping_bound(std::size_t K, const SequenceSpec& spec, std::uint64_t truncation,
                             const std::optional<GrowthTest>& growth_test) {
  if (K < 1) throw std::invalid_argument("at least one walker is required");
  const auto c = classify(spec, std::max<std::uint64_t>(truncation, std::max<std::uint64_t>(K, 16)), growth_test);
  if (c.verdict != SeriesClass::Converges) {
    throw std::invalid_argument("trapping bound needs a convergent sequence; classification is " +
                                to_string(c.verdict) + " (" + c.reason + ")");
  }
  const auto sums = phi_partial_sums(spec, K);
  TrappingBound out;
  out.alpha_K = sums.alpha[K - 1];
  out.S_upper = 1.0 + c.partial + c.tail_bound;
  out.bound = std::exp(-out.alpha_K * out.S_upper);
  return out;
}

void write_phi_csv(std::ostream& out, const PhiPartialSums& sums) {
  out << "k,a_k,alpha_k,partial_phi\n";
  std::ostringstream row;
  row.precision(17);
  for (std::size_t i = 0; i < sums.alpha.size(); ++i) {
    row.str("");
    row << (i + 1) << ',' << sums.increments[i] << ',' << sums.alpha[i] << ',' << sums.partials[i] << '\n';
    out << row.str();
  }
}

}  // namespace errw
