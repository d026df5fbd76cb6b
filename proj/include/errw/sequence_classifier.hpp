#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "errw/sequence_spec.hpp"

namespace errw {

struct PhiPartialSums {
  std::vector<double> increments;  // a_1 .. a_kmax
  std::vector<double> alpha;       // alpha_1 .. alpha_kmax
  std::vector<double> partials;    // sum_{l<=k} 1/alpha_l
};

PhiPartialSums phi_partial_sums(const SequenceSpec& spec, std::uint64_t k_max);

/// alpha_{k+1} / alpha_k >= ratio for all k >= 1, ratio > 1.
struct RatioBound {
  double ratio = 2;
};

/// alpha_k >= coefficient * k^exponent for all k >= 1, exponent > 1.
struct LowerPower {
  double exponent = 2;
  double coefficient = 1;
};

/// alpha_k <= coefficient * k^exponent for all k >= 1, exponent <= 1.
struct UpperPower {
  double exponent = 1;
  double coefficient = 1;
};

using GrowthTest = std::variant<RatioBound, LowerPower, UpperPower>;

/// Growth hint that holds for every k by construction of the generator;
/// nullopt for explicit lists.
std::optional<GrowthTest> growth_hint_for(const SequenceSpec& spec);

enum class SeriesClass { DivergesToInfinity, Converges, Inconclusive };

std::string to_string(SeriesClass c);

struct Classification {
  SeriesClass verdict = SeriesClass::Inconclusive;
  double partial = 0;     // sum_{k<=kmax} 1/alpha_k
  double tail_bound = 0;  // bounds sum_{k>kmax} 1/alpha_k plus the rounding in `partial`
  std::string reason;
};

/// Decides only through the hint, after checking it against every computed
/// alpha_k. Without a hint, or when the hint is contradicted, Inconclusive.
Classification classify(const SequenceSpec& spec, std::uint64_t k_max, const std::optional<GrowthTest>& growth_test);

struct TrappingBound {
  double bound = 0;    // exp(-alpha_K * S)
  double alpha_K = 0;
  double S_upper = 0;  // upper bound on sum_{k>=0} 1/alpha_k, alpha_0 = 1
};

/// Lower bound on the probability that K walkers arriving at an edge stay on
/// it forever. Throws unless the series is shown to converge.
TrappingBound trapping_bound(std::size_t K, const SequenceSpec& spec, std::uint64_t truncation,
                             const std::optional<GrowthTest>& growth_test);

/// Rows k,a_k,alpha_k,partial_phi.
void write_phi_csv(std::ostream& out, const PhiPartialSums& sums);

}  // namespace errw
