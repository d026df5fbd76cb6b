#include "errw/weight_state.hpp"

#include <algorithm>
#include <stdexcept>

namespace errw {

WeightState::WeightState(Reinforcement scheme, Rational default_initial, std::map<EdgeIndex, Rational> initial_overrides)
    : scheme_(std::move(scheme)),
      default_initial_(std::move(default_initial)),
      overrides_(std::move(initial_overrides)),
      default_initial_double_(default_initial_.get_d()),
      uniform_initial_(overrides_.empty() && scheme_.tables().empty()) {
  if (sgn(default_initial_) <= 0) {
    throw std::invalid_argument("default edge weight must be positive");
  }
  for (const auto& [edge, w] : overrides_) {
    if (sgn(w) <= 0) {
      throw std::invalid_argument("initial weight of edge " + std::to_string(edge.z) + " must be positive");
    }
  }
}

Rational WeightState::initial_weight(EdgeIndex e) const {
  if (auto t = scheme_.table_initial(e)) return *t;
  if (auto it = overrides_.find(e); it != overrides_.end()) return it->second;
  return default_initial_;
}

double WeightState::initial_double(EdgeIndex e) const {
  if (uniform_initial_) return default_initial_double_;
  return scheme_.weight(e, 0, initial_weight(e).get_d());
}

Rational WeightState::exact_weight(EdgeIndex e) const {
  return scheme_.exact_weight(e, count(e), initial_weight(e));
}

void WeightState::ensure_window(EdgeIndex e) {
  if (counts_.empty()) {
    lo_ = e.z;
    counts_.assign(1, 0);
    weights_.assign(1, initial_double(e));
    return;
  }
  const auto hi = lo_ + static_cast<std::int64_t>(counts_.size());
  if (e.z < lo_) {
    // Grow by at least the current size so repeated extension stays amortised.
    const auto grow = std::max<std::int64_t>(lo_ - e.z, static_cast<std::int64_t>(counts_.size()));
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(grow), 0);
    std::vector<double> weights;
    weights.reserve(static_cast<std::size_t>(grow));
    for (std::int64_t z = lo_ - grow; z < lo_; ++z) weights.push_back(initial_double(EdgeIndex{z}));
    counts.insert(counts.end(), counts_.begin(), counts_.end());
    weights.insert(weights.end(), weights_.begin(), weights_.end());
    counts_ = std::move(counts);
    weights_ = std::move(weights);
    lo_ -= grow;
  } else if (e.z >= hi) {
    const auto grow = std::max<std::int64_t>(e.z - hi + 1, static_cast<std::int64_t>(counts_.size()));
    for (std::int64_t z = hi; z < hi + grow; ++z) {
      counts_.push_back(0);
      weights_.push_back(initial_double(EdgeIndex{z}));
    }
  }
}

void WeightState::record_crossing(EdgeIndex e) {
  ensure_window(e);
  const auto i = static_cast<std::size_t>(e.z - lo_);
  const auto c = ++counts_[i];
  ++total_;
  const double initial = uniform_initial_ ? default_initial_double_ : initial_weight(e).get_d();
  weights_[i] = scheme_.weight(e, c, initial);
}

std::vector<std::pair<EdgeIndex, std::uint64_t>> WeightState::touched() const {
  std::vector<std::pair<EdgeIndex, std::uint64_t>> out;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] > 0) out.emplace_back(EdgeIndex{lo_ + static_cast<std::int64_t>(i)}, counts_[i]);
  }
  return out;
}

}  // namespace errw
