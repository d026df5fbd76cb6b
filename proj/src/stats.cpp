#include "errw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

namespace errw {

void SampleSet::validate() const {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= lower && values[i] <= upper)) {
      throw std::out_of_range("sample value " + std::to_string(values[i]) + " at index " + std::to_string(i) +
                              " outside declared bounds");
    }
  }
}

double ks_distance(const WeightedAtoms& atoms, const Cdf& cdf, const Cdf& left_limit) {
  if (atoms.empty()) throw std::invalid_argument("KS distance of an empty sample");
  WeightedAtoms sorted = atoms;
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (const auto& [x, w] : sorted) {
    if (w < 0) throw std::invalid_argument("negative sample weight");
    total += w;
  }
  if (!(total > 0)) throw std::invalid_argument("KS distance of a sample with zero total weight");
  const Cdf& before_cdf = left_limit ? left_limit : cdf;
  double d = 0.0;
  double below = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double x = sorted[i].first;
    double mass = 0.0;
    while (i < sorted.size() && sorted[i].first == x) mass += sorted[i++].second;
    const double before = below / total;
    below += mass;
    const double after = below / total;
    d = std::max({d, std::abs(after - cdf(x)), std::abs(before_cdf(x) - before)});
  }
  return d;
}

double ks_distance(const std::vector<double>& sample, const Cdf& cdf, const Cdf& left_limit) {
  WeightedAtoms atoms;
  atoms.reserve(sample.size());
  for (double x : sample) atoms.emplace_back(x, 1.0);
  return ks_distance(atoms, cdf, left_limit);
}

double mean(const std::vector<double>& sample) {
  if (sample.empty()) throw std::invalid_argument("mean of an empty sample");
  double s = 0.0;
  for (double x : sample) s += x;
  return s / static_cast<double>(sample.size());
}

double population_variance(const std::vector<double>& sample) {
  const double m = mean(sample);
  double s = 0.0;
  for (double x : sample) s += (x - m) * (x - m);
  return s / static_cast<double>(sample.size());
}

BetaParameters beta_fit_mom(double m, double v) {
  if (!(m > 0.0 && m < 1.0)) throw std::invalid_argument("beta fit needs a mean in (0,1), got " + std::to_string(m));
  if (!(v > 0.0)) throw std::invalid_argument("beta fit needs a positive variance");
  const double common = m * (1.0 - m) / v - 1.0;
  if (!(common > 0.0)) throw std::invalid_argument("variance too large for a beta law");
  return {m * common, (1.0 - m) * common};
}

BetaParameters beta_fit_mom(const std::vector<double>& sample) {
  return beta_fit_mom(mean(sample), population_variance(sample));
}

std::pair<double, double> beta_moments(const BetaParameters& p) {
  const double s = p.alpha + p.beta;
  return {p.alpha / s, p.alpha * p.beta / (s * s * (s + 1.0))};
}

double beta_cdf(const BetaParameters& p, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(p.alpha, p.beta, x);
}

double arcsine_cdf(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return 2.0 / std::numbers::pi * std::asin(std::sqrt(x));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

std::optional<double> clt_residual(const std::vector<double>& m, std::uint64_t n) {
  if (m.size() < 2) throw std::invalid_argument("trajectory too short");
  const std::uint64_t N = m.size() - 1;
  if (n == 0 || n > N) throw std::invalid_argument("checkpoint n must lie in [1, N]");
  const double mN = m[N];
  const double var = 0.5 * mN * (1.0 - mN);
  if (!(var > 0.0)) return std::nullopt;
  return std::sqrt(static_cast<double>(n)) * (m[n] - mN) / std::sqrt(var);
}

CltResiduals clt_residuals(const std::vector<std::vector<double>>& trajectories, std::uint64_t n) {
  CltResiduals out;
  for (const auto& t : trajectories) {
    if (auto r = clt_residual(t, n)) {
      out.residuals.push_back(*r);
    } else {
      ++out.excluded;
    }
  }
  return out;
}

QuadraticVariation quadratic_variation_check(const std::vector<double>& m, std::uint64_t n) {
  if (m.size() < 2) throw std::invalid_argument("trajectory too short");
  const std::uint64_t N = m.size() - 1;
  if (n == 0 || n > N) throw std::invalid_argument("checkpoint n must lie in [1, N]");
  QuadraticVariation q;
  double sum = 0.0;
  for (std::uint64_t j = n; j <= N; ++j) {
    const double d = m[j - 1] - m[j];
    sum += d * d;
  }
  const double nd = static_cast<double>(n);
  q.value = nd * sum;
  q.truncation_bound = nd / (static_cast<double>(N) - 0.5);
  q.target = 0.5 * m[N] * (1.0 - m[N]);
  return q;
}

namespace {

constexpr int kBins = 49;

std::vector<HistogramBin> finish_histogram(const std::vector<double>& mass, double total) {
  std::vector<HistogramBin> bins(kBins);
  for (int k = 0; k < kBins; ++k) {
    bins[k].center = (2.0 * k + 1.0) / (2.0 * kBins);
    bins[k].density = mass[k] / total * kBins;
  }
  return bins;
}

int bin_of(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::out_of_range("histogram value " + std::to_string(x) + " outside [0,1]");
  return std::min(kBins - 1, static_cast<int>(x * kBins));
}

}  // namespace

std::vector<HistogramBin> histogram_49(const std::vector<double>& sample) {
  if (sample.empty()) throw std::invalid_argument("histogram of an empty sample");
  std::vector<double> mass(kBins, 0.0);
  for (double x : sample) mass[bin_of(x)] += 1.0;
  return finish_histogram(mass, static_cast<double>(sample.size()));
}

std::vector<HistogramBin> histogram_49(const WeightedAtoms& atoms) {
  if (atoms.empty()) throw std::invalid_argument("histogram of an empty sample");
  std::vector<double> mass(kBins, 0.0);
  double total = 0.0;
  for (const auto& [x, w] : atoms) {
    mass[bin_of(x)] += w;
    total += w;
  }
  return finish_histogram(mass, total);
}

}  // namespace errw
