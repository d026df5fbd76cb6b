#include "errw/segment_sim.hpp"

namespace errw {

SystemConfig segment_config(Scheduler scheduler, std::size_t walkers, std::uint64_t seed, Reinforcement reinforcement) {
  SystemConfig c;
  c.domain = Domain::Segment3;
  c.scheduler = scheduler;
  c.initial_positions.assign(walkers, 0);
  c.reinforcement = std::move(reinforcement);
  c.seed = seed;
  return c;
}

double simulate_segment_fraction(Scheduler scheduler, std::size_t walkers, std::uint64_t steps, std::uint64_t seed) {
  WalkerSystem system(segment_config(scheduler, walkers, seed));
  for (std::uint64_t t = 0; t < steps; ++t) system.step();
  return left_edge_fraction_double(system.weights());
}

std::vector<double> simulate_alt_martingale(std::uint64_t cycles, std::uint64_t seed) {
  WalkerSystem system(segment_config(Scheduler::Alternating, 2, seed));
  std::vector<double> m;
  m.reserve(cycles + 1);
  m.push_back(left_edge_fraction_double(system.weights()));
  for (std::uint64_t k = 0; k < cycles; ++k) {
    for (int s = 0; s < 4; ++s) system.step();
    m.push_back(left_edge_fraction_double(system.weights()));
  }
  return m;
}

std::vector<std::uint64_t> simulate_meeting_gaps(std::uint64_t gaps, std::uint64_t seed, Reinforcement reinforcement) {
  WalkerSystem system(segment_config(Scheduler::UniformRandom, 2, seed, std::move(reinforcement)));
  std::vector<std::uint64_t> out;
  out.reserve(gaps);
  std::uint64_t last = 0;
  while (out.size() < gaps) {
    system.step();
    const auto& p = system.positions();
    if (p[0] == 0 && p[1] == 0) {
      out.push_back(system.time() - last);
      last = system.time();
    }
  }
  return out;
}

}  // namespace errw
