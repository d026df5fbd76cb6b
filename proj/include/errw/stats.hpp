#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace errw {

struct SampleSet {
  std::vector<double> values;
  double lower = 0.0;
  double upper = 1.0;
  std::uint64_t n_steps = 0;
  std::uint64_t replicas = 0;
  std::uint64_t seed = 0;
  std::string experiment;

  /// Throws if a value lies outside [lower, upper].
  void validate() const;
};

using Cdf = std::function<double(double)>;

/// (value, mass) pairs; masses need not be normalised.
using WeightedAtoms = std::vector<std::pair<double, double>>;

/// sup_x |F_emp(x) - F(x)|, checked on both sides of every jump of the
/// empirical CDF. `left_limit` gives F(x-) for a CDF with atoms; by default F
/// is taken to be continuous.
double ks_distance(const std::vector<double>& sample, const Cdf& cdf, const Cdf& left_limit = {});
double ks_distance(const WeightedAtoms& atoms, const Cdf& cdf, const Cdf& left_limit = {});

struct BetaParameters {
  double alpha = 0;
  double beta = 0;
};

/// Method of moments with the population variance.
BetaParameters beta_fit_mom(const std::vector<double>& sample);
BetaParameters beta_fit_mom(double mean, double variance);

/// Mean and variance of Beta(alpha, beta).
std::pair<double, double> beta_moments(const BetaParameters& p);

double beta_cdf(const BetaParameters& p, double x);
/// (2/pi) asin(sqrt(x)).
double arcsine_cdf(double x);
double normal_cdf(double x);

/// sqrt(n) (M_n - M_N) / sqrt(M_N (1 - M_N) / 2) with m[k] = M_k, or nullopt
/// when M_N is 0 or 1.
std::optional<double> clt_residual(const std::vector<double>& m, std::uint64_t n);

struct CltResiduals {
  std::vector<double> residuals;
  std::uint64_t excluded = 0;
};

CltResiduals clt_residuals(const std::vector<std::vector<double>>& trajectories, std::uint64_t n);

struct QuadraticVariation {
  double value = 0;             // n sum_{j=n}^{N} (M_{j-1} - M_j)^2
  double truncation_bound = 0;  // n sum_{j>N} (4/(4(j-1)+2))^2 <= n/(N - 1/2)
  double target = 0;            // M_N (1 - M_N) / 2
};

QuadraticVariation quadratic_variation_check(const std::vector<double>& m, std::uint64_t n);

struct HistogramBin {
  double center = 0;
  double density = 0;
};

/// 49 equal bins on [0,1] scaled to a density; x = 1 falls in the last bin.
std::vector<HistogramBin> histogram_49(const std::vector<double>& sample);
std::vector<HistogramBin> histogram_49(const WeightedAtoms& atoms);

double mean(const std::vector<double>& sample);
double population_variance(const std::vector<double>& sample);

}  // namespace errw
