#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "errw/rational.hpp"
#include "errw/sequence_spec.hpp"

namespace errw {

using Node = std::int64_t;

/// The edge {z, z+1} of the integer line, identified by its left endpoint.
struct EdgeIndex {
  std::int64_t z = 0;

  constexpr Node left() const noexcept { return z; }
  constexpr Node right() const noexcept { return z + 1; }

  /// Edge joining two neighbouring nodes.
  static constexpr EdgeIndex between(Node a, Node b) noexcept { return EdgeIndex{a < b ? a : b}; }

  auto operator<=>(const EdgeIndex&) const = default;
};

/// Weights are clamped here in the Monte Carlo engine. A clamped edge next to
/// an edge of ordinary size is traversed with probability 1 to double precision.
inline constexpr double kWeightCap = 1e300;

enum class ReinforcementKind { Linear, Sequence, PerEdge };

/// Reinforcement functions W_z. An edge with initial weight w0 that has been
/// crossed k times has weight w0 + a_1 + ... + a_k (Linear: a_k = 1). PerEdge
/// schemes carry explicit tables W_z(0..m-1) for finitely many edges; beyond
/// the table end, and on unlisted edges, the base scheme's increments apply.
///
/// Not safe for concurrent use: the double-precision prefix sums are cached
/// lazily. Copy one instance per replica.
class Reinforcement {
 public:
  static Reinforcement linear();
  static Reinforcement sequence(SequenceSpec spec);
  static Reinforcement per_edge(std::map<EdgeIndex, std::vector<Rational>> tables,
                                Reinforcement base = linear());

  ReinforcementKind kind() const noexcept { return kind_; }
  const std::optional<SequenceSpec>& sequence_spec() const noexcept { return spec_; }
  const std::map<EdgeIndex, std::vector<Rational>>& tables() const noexcept { return tables_; }

  /// a_1 + ... + a_count (the base scheme's increments for PerEdge).
  Rational exact_gain(std::uint64_t count) const;
  double gain(std::uint64_t count) const;

  /// Table value W_z(0) if the edge has a table, otherwise `initial`.
  std::optional<Rational> table_initial(EdgeIndex z) const;

  Rational exact_weight(EdgeIndex z, std::uint64_t count, const Rational& initial) const;
  double weight(EdgeIndex z, std::uint64_t count, double initial) const;

 private:
  Reinforcement() = default;

  double increment_double(std::uint64_t k) const;

  ReinforcementKind kind_ = ReinforcementKind::Linear;
  std::optional<SequenceSpec> spec_;  // Sequence, or the base of PerEdge
  std::map<EdgeIndex, std::vector<Rational>> tables_;
  std::map<EdgeIndex, std::vector<double>> tables_double_;

  mutable std::vector<double> gain_cache_{0.0};
  mutable std::vector<Rational> exact_gain_cache_{Rational(0)};
};

}  // namespace errw

template <>
struct std::hash<errw::EdgeIndex> {
  std::size_t operator()(const errw::EdgeIndex& e) const noexcept { return std::hash<std::int64_t>{}(e.z); }
};
