#pragma once

#include <cstdint>
#include <vector>

#include "gridsmpc/simulation.hpp"

namespace gridsmpc {

struct BenchResult {
  int tv_count = 0;
  int runs = 0;
  int iterations = 0;     // planning cycles measured
  double mean_s = 0.0;    // mean per-cycle planning time
  double std_s = 0.0;
  int collisions = 0;
  int failures = 0;
};

// Random scenario for one benchmark run: EV in a random lane with a random
// reference lane, first TV 40 m ahead, each further TV 50 m beyond the
// previous, random TV lanes, maneuver probability drawn uniformly from
// [0.8, 1] and assigned to one maneuver at random. Deterministic in seed.
Scenario make_bench_scenario(int tv_count, std::uint64_t seed, double duration);

// Runs `runs` seeded simulations per TV count and pools per-cycle total
// planning times.
BenchResult run_bench(int tv_count, int runs, std::uint64_t base_seed, double duration);

}  // namespace gridsmpc
