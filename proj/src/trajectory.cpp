#include "errw/trajectory.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace errw {

std::uint64_t TrajectorySummary::total_fresh() const noexcept {
  std::uint64_t total = 0;
  for (const auto& w : walkers) total += w.fresh_visits;
  return total;
}

namespace {

bool all_at_zero(const std::vector<Node>& positions) {
  return std::all_of(positions.begin(), positions.end(), [](Node x) { return x == 0; });
}

}  // namespace

TrajectorySummary run_trajectory(WalkerSystem& system, std::uint64_t n_steps, const std::vector<Observer>& observers) {
  TrajectorySummary s;
  s.start_time = system.time();
  s.steps = n_steps;
  s.last_fresh_time = s.start_time;
  s.single_edge_since = s.start_time;
  for (auto x : system.positions()) {
    WalkerRange r;
    r.start = r.min = r.max = x;
    r.last_growth_time = s.start_time;
    r.reached_nonpositive = x <= 0;
    s.walkers.push_back(r);
  }
  if (n_steps > 0 && all_at_zero(system.positions())) s.meeting_times.push_back(s.start_time);

  const auto half = s.start_time + n_steps / 2;
  bool have_edge = false;
  EdgeIndex last_edge{};

  for (std::uint64_t j = 0; j < n_steps; ++j) {
    const StepRecord rec = system.step();
    auto& w = s.walkers[rec.walker];
    const Node to = rec.to;

    if (to < w.min || to > w.max) {
      bool fresh = true;
      for (const auto& other : s.walkers) {
        if (to >= other.min && to <= other.max) {
          fresh = false;
          break;
        }
      }
      if (fresh) {
        ++w.fresh_visits;
        s.last_fresh_time = rec.time;
      }
      w.min = std::min(w.min, to);
      w.max = std::max(w.max, to);
      w.last_growth_time = rec.time;
    }
    if (to == 0) {
      ++w.returns_to_zero;
      if (rec.time > half) ++w.returns_second_half;
      if (all_at_zero(system.positions())) s.meeting_times.push_back(rec.time);
    }
    if (to <= 0) w.reached_nonpositive = true;

    if (!have_edge || rec.edge != last_edge) {
      s.single_edge_since = rec.time;
      last_edge = rec.edge;
      have_edge = true;
    }

    for (std::size_t k = 0; k < observers.size(); ++k) {
      try {
        observers[k](system, rec);
      } catch (const std::exception& e) {
        throw std::runtime_error("observer " + std::to_string(k) + " failed at time " + std::to_string(rec.time) +
                                 " (walker " + std::to_string(rec.walker) + " " + std::to_string(rec.from) + "->" +
                                 std::to_string(rec.to) + "): " + e.what());
      }
    }
  }

  s.final_positions = system.positions();
  s.final_counts = system.weights().touched();
  return s;
}

}  // namespace errw
