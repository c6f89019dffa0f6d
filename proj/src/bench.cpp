#include "gridsmpc/bench.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace gridsmpc {

Scenario make_bench_scenario(int tv_count, std::uint64_t seed, double duration) {
  if (tv_count < 1) throw std::invalid_argument("bench scenario needs at least one TV");
  std::mt19937_64 rng(seed);
  Scenario s;
  s.name = "bench_" + std::to_string(tv_count) + "tv";
  s.cfg = itsc2020_preset();
  s.duration = duration;
  s.seed = seed;
  s.noise_on = false;

  std::uniform_int_distribution<int> lane_pick(0, s.cfg.lanes - 1);
  std::uniform_real_distribution<double> prob_pick(0.8, 1.0);
  std::uniform_int_distribution<int> coin(0, 1);

  int ev_lane = lane_pick(rng);
  s.initial_target_lane = lane_pick(rng);
  s.ev_init = EvState{10.0, s.cfg.lane_center(ev_lane), 0.0, 26.0};

  const double tv_speed = 27.0;
  double x = s.ev_init.x + 40.0;
  for (int k = 0; k < tv_count; ++k) {
    int own_lane = lane_pick(rng);
    int other_lane;
    if (s.cfg.lanes == 1) {
      other_lane = own_lane;
    } else {
      do {
        other_lane = lane_pick(rng);
      } while (other_lane == own_lane);
    }
    double p = prob_pick(rng);
    bool p_goes_to_lk = coin(rng) == 0;

    TvAgent agent;
    agent.state = TvState{x, tv_speed, s.cfg.lane_center(own_lane), 0.0};
    agent.model = make_tv_model(s.cfg.dt);
    agent.hypotheses.push_back({ManeuverKind::kLaneKeep, p_goes_to_lk ? p : 1.0 - p,
                                s.cfg.lane_center(own_lane), tv_speed});
    agent.hypotheses.push_back({ManeuverKind::kLaneChange, p_goes_to_lk ? 1.0 - p : p,
                                s.cfg.lane_center(other_lane), tv_speed});
    s.tvs.push_back(std::move(agent));
    x += 50.0;
  }
  return s;
}

BenchResult run_bench(int tv_count, int runs, std::uint64_t base_seed, double duration) {
  BenchResult res;
  res.tv_count = tv_count;
  res.runs = runs;

  double sum = 0.0, sum_sq = 0.0;
  for (int r = 0; r < runs; ++r) {
    std::uint64_t seed = base_seed + 10000ull * static_cast<std::uint64_t>(tv_count) +
                         static_cast<std::uint64_t>(r);
    Scenario s = make_bench_scenario(tv_count, seed, duration);
    SimLog log = run_closed_loop(s);
    if (log.collision) ++res.collisions;
    if (log.failed) ++res.failures;
    for (const SimRecord& rec : log.records) {
      sum += rec.timings.total_s;
      sum_sq += rec.timings.total_s * rec.timings.total_s;
      ++res.iterations;
    }
  }
  if (res.iterations > 0) {
    double n = static_cast<double>(res.iterations);
    res.mean_s = sum / n;
    double var = sum_sq / n - res.mean_s * res.mean_s;
    res.std_s = std::sqrt(std::max(0.0, var));
  }
  return res;
}

}  // namespace gridsmpc
