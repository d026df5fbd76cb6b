#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "errw/rational.hpp"

namespace errw {

/// One outcome of a full alternating cycle (four steps) started from left and
/// right edge weights (a, b) with both walkers in the centre.
struct KernelBranch {
  std::uint64_t new_a = 0;
  std::uint64_t new_b = 0;
  Rational probability;
};

std::array<KernelBranch, 3> four_step_kernel(std::uint64_t a, std::uint64_t b);

/// E[a'/(a'+b')] over one cycle; equals a/(a+b).
Rational conditional_mean_after_cycle(std::uint64_t a, std::uint64_t b);

/// Finite law with exact rational values and masses. Values are distinct and
/// sorted, masses are positive and sum to one.
class RationalDistribution {
 public:
  struct Atom {
    Rational value;
    Rational mass;
  };

  /// Sorts, merges equal values and drops zero masses. Throws unless the
  /// masses are nonnegative and sum to exactly one.
  static RationalDistribution from_atoms(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  Rational mean() const;
  Rational moment(unsigned k) const;
  /// P(V <= x).
  Rational cdf(const Rational& x) const;
  Rational probability_if(const std::function<bool(const Rational&)>& predicate) const;

  /// Rows value_numerator,value_denominator,mass_numerator,mass_denominator.
  void write_csv(std::ostream& out) const;

 private:
  std::vector<Atom> atoms_;
};

/// Law of M_n = w(4n,-1)/(4n+2) for alternating walkers started from (1,1).
RationalDistribution exact_alt_distribution(std::uint64_t n);

/// Laws of M_0 .. M_n from a single pass of the same recursion.
std::vector<RationalDistribution> exact_alt_distributions_upto(std::uint64_t n);

/// Law of the left-edge fraction of a single walker at time 2n, from (1,1).
RationalDistribution exact_single_distribution(std::uint64_t n);

/// Double precision versions of the two recursions. Entry j is the mass of the
/// value (1+2j)/(4n+2) (alternating) or (1+2j)/(2n+2) (single walker).
std::vector<double> alt_distribution_double(std::uint64_t n);
std::vector<double> single_distribution_double(std::uint64_t n);

struct SecondMomentDelta {
  std::uint64_t n = 0;  // (a+b+2)/4
  Rational delta;
  Rational n_sq_delta;
};

/// Delta = E[M'^2 | (a,b)] - (1 - 1/(2n^2)) M^2 - M/(2n^2) with M = a/(a+b),
/// evaluated through the kernel. Throws unless 4 divides a+b+2.
SecondMomentDelta second_moment_delta(std::uint64_t a, std::uint64_t b);

/// n^2 Delta from the rational closed form
/// -M(1-M)/2 * (3a^2+6ab+12a+3b^2+12b+8) / ((a+b+1)(a+b+4)^2).
Rational second_moment_delta_closed_form(std::uint64_t a, std::uint64_t b);

/// P(next meeting in the centre happens exactly 2l steps later), from the
/// first-passage law of the three-state location chain.
Rational meeting_time_pmf(std::uint64_t l);

enum class AtomBoundMode { Combinatorial, Closed };

struct AtomBound {
  double value = 0;
  std::uint64_t j_max = 0;      // floor(2 eps sqrt(n))
  bool small_threshold = true;  // eps / sqrt(n) <= 1/2
};

/// Upper bound on P(M_n <= eps / sqrt(n)). Combinatorial sums the per-j bound
/// C(2n,j) (2j-1)!! (4n-2j-1)!! / prod_{i<=n} (4i-2)(4i-1) in log space;
/// Closed returns 3 n^(-1/4) + 9 sqrt(eps).
AtomBound atom_probability_bound(std::uint64_t n, const Rational& epsilon, AtomBoundMode mode);

/// Largest j with j^2 <= 4 eps^2 n.
std::uint64_t atom_threshold(std::uint64_t n, const Rational& epsilon);

}  // namespace errw
