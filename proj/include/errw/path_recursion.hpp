#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "errw/rational.hpp"
#include "errw/walker_system.hpp"

namespace errw {

/// Longest excursion (in pairs of steps) that enumerate_paths accepts.
inline constexpr unsigned kMaxEnumerationHalfLength = 6;

struct MoveSymbol {
  std::uint8_t walker = 0;  // 0 or 1
  Direction direction = Direction::Left;

  bool operator==(const MoveSymbol&) const = default;
};

std::string to_string(const MoveSymbol& m);
std::string to_string(const std::vector<MoveSymbol>& moves);

/// A path of length 2l on the 3-node segment under random walker selection
/// that starts and ends with both walkers in the centre and has no meeting in
/// the centre in between.
struct PathRecord {
  std::vector<MoveSymbol> moves;
  Rational probability;
  std::uint64_t d = 0;   // traversals of the left edge
  bool left = false;     // the walker away from the centre at step 2l-1 sits at -1
  Rational f;            // (a+d)/(a+b+2l)

  std::uint64_t half_length() const noexcept { return moves.size() / 2; }
};

struct EQPair {
  Rational E;
  Rational q;

  bool operator==(const EQPair&) const = default;
};

/// Brute force over all 4^(2l) symbol strings, keeping the valid ones, in
/// lexicographic symbol order.
std::vector<PathRecord> enumerate_paths(unsigned l, std::uint64_t a, std::uint64_t b);

/// Validates `moves` and returns its record, or nullopt if it is not a path.
std::optional<PathRecord> evaluate_path(const std::vector<MoveSymbol>& moves, std::uint64_t a, std::uint64_t b);

/// Replaces the final return of rho by one of four three-move endings:
///   1: centre walker out left and back, then the outer walker returns
///   2: centre walker out left, outer walker returns, centre walker returns
///   3: as 1 with the centre walker going right
///   4: as 2 with the centre walker going right
/// Probability and f are updated by multiplicative factors, not recomputed.
PathRecord extend_path(const PathRecord& rho, int k, std::uint64_t a, std::uint64_t b);

/// (E, q) at l = 1: both equal a / (2(a+b)).
EQPair base_pair(std::uint64_t a, std::uint64_t b);

/// (E, q) at l+1 from (E, q) at l.
EQPair recursion_step(const EQPair& pair, std::uint64_t a, std::uint64_t b, std::uint64_t l);

/// Sums over enumerate_paths: E = sum p f, q = sum p left.
EQPair enumeration_pair(unsigned l, std::uint64_t a, std::uint64_t b);

/// 2^-l a/(a+b).
Rational closed_form_value(std::uint64_t a, std::uint64_t b, std::uint64_t l);

struct ClosedFormRow {
  std::uint64_t l = 0;
  EQPair recursion;
  Rational closed_form;
  std::optional<EQPair> enumeration;
};

struct ClosedFormReport {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::vector<ClosedFormRow> rows;
};

class ClosedFormMismatch : public std::runtime_error {
 public:
  ClosedFormMismatch(std::uint64_t a, std::uint64_t b, std::uint64_t l, const std::string& what);
  std::uint64_t a, b, l;
};

/// Runs the recursion to L and compares with the closed form; enumerates for
/// l <= enumerate_upto as well. Throws ClosedFormMismatch on any difference.
ClosedFormReport verify_closed_form(std::uint64_t a, std::uint64_t b, std::uint64_t L, unsigned enumerate_upto = 0);

/// sum_{l<=L} E_{a,b,l}, which tends to a/(a+b) with remainder at most 2^-L.
Rational martingale_partial_sum(std::uint64_t a, std::uint64_t b, std::uint64_t L);

/// Rows l,E_num,E_den,q_num,q_den.
void write_eq_csv(std::ostream& out, const ClosedFormReport& report);

}  // namespace errw
