#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "errw/rational.hpp"
#include "errw/reinforcement.hpp"

namespace errw {

/// Crossing counts c(n, z) and the weights w(n, z) = W_z(c(n, z)) they induce.
///
/// Counts live in a window of edges that grows on demand in either
/// direction; edges outside the window have never been crossed and report
/// their initial weight. Double weights are recomputed from the integer count
/// after every crossing, never accumulated.
class WeightState {
 public:
  explicit WeightState(Reinforcement scheme, Rational default_initial = Rational(1),
                       std::map<EdgeIndex, Rational> initial_overrides = {});

  std::uint64_t count(EdgeIndex e) const noexcept {
    const auto i = e.z - lo_;
    return (i >= 0 && i < static_cast<std::int64_t>(counts_.size())) ? counts_[static_cast<std::size_t>(i)] : 0;
  }

  double weight(EdgeIndex e) const {
    const auto i = e.z - lo_;
    if (i >= 0 && i < static_cast<std::int64_t>(weights_.size())) return weights_[static_cast<std::size_t>(i)];
    return initial_double(e);
  }

  Rational exact_weight(EdgeIndex e) const;
  Rational initial_weight(EdgeIndex e) const;

  void record_crossing(EdgeIndex e);

  std::uint64_t total_crossings() const noexcept { return total_; }

  /// (edge, count) for every edge crossed at least once, ordered by edge.
  std::vector<std::pair<EdgeIndex, std::uint64_t>> touched() const;

  const Reinforcement& scheme() const noexcept { return scheme_; }
  const Rational& default_initial() const noexcept { return default_initial_; }
  const std::map<EdgeIndex, Rational>& overrides() const noexcept { return overrides_; }

 private:
  double initial_double(EdgeIndex e) const;
  void ensure_window(EdgeIndex e);

  Reinforcement scheme_;
  Rational default_initial_;
  std::map<EdgeIndex, Rational> overrides_;
  double default_initial_double_;
  bool uniform_initial_;

  std::int64_t lo_ = 0;
  std::vector<std::uint64_t> counts_;
  std::vector<double> weights_;
  std::uint64_t total_ = 0;
};

}  // namespace errw
