#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include "errw/walker_system.hpp"

namespace errw {

struct WalkerRange {
  Node start = 0;
  Node min = 0;
  Node max = 0;
  std::uint64_t returns_to_zero = 0;
  std::uint64_t returns_second_half = 0;
  std::uint64_t fresh_visits = 0;
  std::uint64_t last_growth_time = 0;  // last step at which min or max moved
  bool reached_nonpositive = false;    // X <= 0 at some time, start included

  Node span() const noexcept { return max - min; }
};

/// Per-replica result of run_trajectory. Times are absolute system times.
struct TrajectorySummary {
  std::uint64_t start_time = 0;
  std::uint64_t steps = 0;
  std::vector<Node> final_positions;
  std::vector<WalkerRange> walkers;
  std::vector<std::uint64_t> meeting_times;  // all walkers at node 0
  std::vector<std::pair<EdgeIndex, std::uint64_t>> final_counts;
  std::uint64_t last_fresh_time = 0;
  // Start of the current run of crossings that all used one edge.
  std::uint64_t single_edge_since = 0;
  std::uint64_t total_fresh() const noexcept;
};

/// Called after every step. An exception aborts the run.
using Observer = std::function<void(const WalkerSystem&, const StepRecord&)>;

TrajectorySummary run_trajectory(WalkerSystem& system, std::uint64_t n_steps, const std::vector<Observer>& observers = {});

/// Runs fn(r) for r in [0, replicas) on up to `threads` workers; results come
/// back in replica order. The first exception is rethrown after all workers stop.
template <class Fn>
auto run_replicas(std::uint64_t replicas, unsigned threads, Fn fn) -> std::vector<decltype(fn(std::uint64_t{}))> {
  using Result = decltype(fn(std::uint64_t{}));
  std::vector<Result> out(replicas);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const auto r = next.fetch_add(1);
      if (r >= replicas) return;
      try {
        out[r] = fn(r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(replicas);
        return;
      }
    }
  };
  const auto n = std::max<unsigned>(1, std::min<std::uint64_t>(threads, replicas));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace errw
