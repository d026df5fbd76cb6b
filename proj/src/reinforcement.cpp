#include "errw/reinforcement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace errw {

Reinforcement Reinforcement::linear() { return Reinforcement{}; }

Reinforcement Reinforcement::sequence(SequenceSpec spec) {
  Reinforcement r;
  r.kind_ = ReinforcementKind::Sequence;
  r.spec_ = std::move(spec);
  return r;
}

Reinforcement Reinforcement::per_edge(std::map<EdgeIndex, std::vector<Rational>> tables, Reinforcement base) {
  if (base.kind_ == ReinforcementKind::PerEdge) {
    throw std::invalid_argument("per-edge reinforcement needs a linear or sequence-type base");
  }
  for (const auto& [edge, table] : tables) {
    if (table.empty()) {
      throw std::invalid_argument("empty weight table for edge " + std::to_string(edge.z));
    }
    if (sgn(table.front()) <= 0) {
      throw std::invalid_argument("weight table for edge " + std::to_string(edge.z) + " must start positive");
    }
    for (std::size_t k = 1; k < table.size(); ++k) {
      if (table[k] < table[k - 1]) {
        throw std::invalid_argument("weight table for edge " + std::to_string(edge.z) + " decreases at count " +
                                    std::to_string(k));
      }
    }
  }
  Reinforcement r = std::move(base);
  r.kind_ = ReinforcementKind::PerEdge;
  for (const auto& [edge, table] : tables) {
    auto& d = r.tables_double_[edge];
    for (const auto& w : table) d.push_back(w.get_d());
  }
  r.tables_ = std::move(tables);
  return r;
}

double Reinforcement::increment_double(std::uint64_t k) const {
  if (!spec_) return 1.0;
  return spec_->increment_double(k);
}

double Reinforcement::gain(std::uint64_t count) const {
  if (!spec_) return static_cast<double>(count);
  while (gain_cache_.size() <= count) {
    const auto k = gain_cache_.size();
    gain_cache_.push_back(std::min(gain_cache_.back() + increment_double(k), kWeightCap));
  }
  return gain_cache_[count];
}

Rational Reinforcement::exact_gain(std::uint64_t count) const {
  if (!spec_) return Rational(BigInt(static_cast<unsigned long>(count)));
  while (exact_gain_cache_.size() <= count) {
    const auto k = exact_gain_cache_.size();
    Rational next = exact_gain_cache_.back() + spec_->increment(k);
    exact_gain_cache_.push_back(std::move(next));
  }
  return exact_gain_cache_[count];
}

std::optional<Rational> Reinforcement::table_initial(EdgeIndex z) const {
  auto it = tables_.find(z);
  if (it == tables_.end()) return std::nullopt;
  return it->second.front();
}

Rational Reinforcement::exact_weight(EdgeIndex z, std::uint64_t count, const Rational& initial) const {
  if (kind_ == ReinforcementKind::PerEdge) {
    if (auto it = tables_.find(z); it != tables_.end()) {
      const auto& table = it->second;
      if (count < table.size()) return table[count];
      const auto last = table.size() - 1;
      return table.back() + exact_gain(count) - exact_gain(last);
    }
  }
  return initial + exact_gain(count);
}

double Reinforcement::weight(EdgeIndex z, std::uint64_t count, double initial) const {
  if (kind_ == ReinforcementKind::PerEdge) {
    if (auto it = tables_double_.find(z); it != tables_double_.end()) {
      const auto& table = it->second;
      if (count < table.size()) return table[count];
      const auto last = table.size() - 1;
      return std::min(table.back() + (gain(count) - gain(last)), kWeightCap);
    }
  }
  return std::min(initial + gain(count), kWeightCap);
}

}  // namespace errw
