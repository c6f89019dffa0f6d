#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridsmpc/smpc.hpp"

namespace gridsmpc {

struct Scenario {
  std::string name;
  PlannerConfig cfg;
  EvParams ev_params;
  EvState ev_init;
  std::vector<TvAgent> tvs;
  double duration = 40.0;
  std::uint64_t seed = 1;
  bool noise_on = false;
  int initial_target_lane = -1;  // -1 = the lane the EV starts in
};

struct LanePolicyDecision {
  double target_lane_center = 0.0;
  int rule = 0;        // 0 keep, 1 blocked-lane avoidance, 2 overtake return
  int trigger_tv = -1;
};

// Rule 1: a TV in the EV's current lane, 0 < dx <= 20 m ahead, sends the EV
// to the nearest free lane. Rule 2: once the EV leads a TV by more than 15 m
// (CoG distance), it targets that TV's lane; the closest such TV wins.
// Rule 1 takes precedence; otherwise the current target is kept.
LanePolicyDecision lane_policy_decide(const PlannerConfig& cfg, const EvState& ev,
                                      const std::vector<TvState>& tvs,
                                      double current_target);

double lane_policy(const PlannerConfig& cfg, const EvState& ev,
                   const std::vector<TvState>& tvs, double current_target);

// Separating-axis test between the EV rectangle (rotated by psi) and the
// axis-aligned TV rectangle. Touching boundaries do not count as collision.
bool check_collision(const EvState& ev, double ev_length, double ev_width,
                     const TvState& tv, double tv_length, double tv_width);

struct SimRecord {
  double t = 0.0;
  EvState ev;
  EvInput input;
  std::vector<TvState> tvs;
  double target_lane = 0.0;
  double slack_total = 0.0;
  double cost = 0.0;
  PlanTimings timings;
  std::vector<HullVertices> hulls;  // per prediction step h=1..N
};

struct LaneChangeEvent {
  double trigger_t = 0.0;
  double completion_t = -1.0;  // -1 while incomplete
  double from_center = 0.0;
  double to_center = 0.0;
  int rule = 0;
  int trigger_tv = -1;
  double dx_at_completion = 0.0;  // CoG |ev.x - tv.x| to the trigger TV
  bool completed = false;
};

struct SimLog {
  std::vector<SimRecord> records;
  std::vector<LaneChangeEvent> lane_changes;
  bool collision = false;
  int collision_tv = -1;
  double collision_t = -1.0;
  bool failed = false;       // fatal planning error
  std::string failure;
};

// Closed loop at cfg.dt: lane policy, plan, apply the first input, advance
// each TV one truth step (following its highest-probability hypothesis),
// log. Terminates at duration, on collision, or on a fatal planning error.
SimLog run_closed_loop(const Scenario& s);

// True when all four EV footprint corners lie inside the lane of the given
// center (used for lane-change completion).
bool footprint_in_lane(const PlannerConfig& cfg, const EvState& ev, const EvParams& params,
                       double lane_center);

}  // namespace gridsmpc
