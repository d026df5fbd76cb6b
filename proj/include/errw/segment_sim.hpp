#pragma once

#include <cstdint>
#include <vector>

#include "errw/walker_system.hpp"

namespace errw {

/// Config for walkers that all start in the centre of the 3-node segment.
SystemConfig segment_config(Scheduler scheduler, std::size_t walkers, std::uint64_t seed,
                            Reinforcement reinforcement = Reinforcement::linear());

/// Left-edge weight fraction after `steps` steps.
double simulate_segment_fraction(Scheduler scheduler, std::size_t walkers, std::uint64_t steps, std::uint64_t seed);

/// M_0 .. M_cycles for alternating walkers, M_k read after 4k steps.
std::vector<double> simulate_alt_martingale(std::uint64_t cycles, std::uint64_t seed);

/// Lengths of the first `gaps` intervals between successive times at which two
/// uniformly selected walkers are both in the centre.
std::vector<std::uint64_t> simulate_meeting_gaps(std::uint64_t gaps, std::uint64_t seed,
                                                 Reinforcement reinforcement = Reinforcement::linear());

}  // namespace errw
