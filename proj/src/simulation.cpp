#include "gridsmpc/simulation.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace gridsmpc {

namespace {

int lane_of(const PlannerConfig& cfg, double y) {
  int lane = static_cast<int>(std::floor((y - cfg.road_y0) / cfg.lane_width));
  return std::clamp(lane, 0, cfg.lanes - 1);
}

}  // namespace

LanePolicyDecision lane_policy_decide(const PlannerConfig& cfg, const EvState& ev,
                                      const std::vector<TvState>& tvs,
                                      double current_target) {
  LanePolicyDecision out{current_target, 0, -1};
  const int ev_lane = lane_of(cfg, ev.y);

  // Rule 1: blocked current lane within 20 m ahead.
  int blocker = -1;
  double blocker_dx = std::numeric_limits<double>::max();
  for (size_t k = 0; k < tvs.size(); ++k) {
    double dx = tvs[k].x - ev.x;
    if (lane_of(cfg, tvs[k].y) == ev_lane && dx > 0 && dx <= 20.0 && dx < blocker_dx) {
      blocker = static_cast<int>(k);
      blocker_dx = dx;
    }
  }
  if (blocker >= 0) {
    // Nearest lane with no vehicle 20 m ahead in it.
    int best_lane = -1;
    for (int lane = 0; lane < cfg.lanes; ++lane) {
      if (lane == ev_lane) continue;
      bool free = true;
      for (const TvState& tv : tvs) {
        double dx = tv.x - ev.x;
        if (lane_of(cfg, tv.y) == lane && dx > 0 && dx <= 20.0) {
          free = false;
          break;
        }
      }
      if (free && (best_lane < 0 ||
                   std::abs(lane - ev_lane) < std::abs(best_lane - ev_lane))) {
        best_lane = lane;
      }
    }
    if (best_lane >= 0) {
      out.target_lane_center = cfg.lane_center(best_lane);
      out.rule = 1;
      out.trigger_tv = blocker;
      return out;
    }
  }

  // Rule 2: return to the lane of the most recently passed TV.
  int passed = -1;
  double passed_dx = std::numeric_limits<double>::max();
  for (size_t k = 0; k < tvs.size(); ++k) {
    double dx = ev.x - tvs[k].x;
    if (dx > 15.0 && dx < passed_dx) {
      passed = static_cast<int>(k);
      passed_dx = dx;
    }
  }
  if (passed >= 0) {
    out.target_lane_center = cfg.lane_center(lane_of(cfg, tvs[passed].y));
    out.rule = 2;
    out.trigger_tv = passed;
    return out;
  }
  return out;
}

double lane_policy(const PlannerConfig& cfg, const EvState& ev,
                   const std::vector<TvState>& tvs, double current_target) {
  return lane_policy_decide(cfg, ev, tvs, current_target).target_lane_center;
}

bool check_collision(const EvState& ev, double ev_length, double ev_width,
                     const TvState& tv, double tv_length, double tv_width) {
  const double c = std::cos(ev.psi), s = std::sin(ev.psi);
  const Eigen::Vector2d ev_long(c, s), ev_lat(-s, c);
  const Eigen::Vector2d axes[4] = {ev_long, ev_lat, {1, 0}, {0, 1}};
  const Eigen::Vector2d d(tv.x - ev.x, tv.y - ev.y);
  for (const Eigen::Vector2d& ax : axes) {
    double ra = ev_length / 2 * std::abs(ax.dot(ev_long)) +
                ev_width / 2 * std::abs(ax.dot(ev_lat));
    double rb = tv_length / 2 * std::abs(ax.x()) + tv_width / 2 * std::abs(ax.y());
    if (std::abs(ax.dot(d)) >= ra + rb) return false;
  }
  return true;
}

bool footprint_in_lane(const PlannerConfig& cfg, const EvState& ev, const EvParams& params,
                       double lane_center) {
  const double lo = lane_center - cfg.lane_width / 2;
  const double hi = lane_center + cfg.lane_width / 2;
  const double c = std::cos(ev.psi), s = std::sin(ev.psi);
  for (double sx : {-1.0, 1.0}) {
    for (double sy : {-1.0, 1.0}) {
      double y = ev.y + sx * params.length / 2 * s + sy * params.width / 2 * c;
      if (y < lo || y > hi) return false;
    }
  }
  return true;
}

SimLog run_closed_loop(const Scenario& s) {
  SimLog log;
  std::mt19937_64 rng(s.seed);
  EvState ev = s.ev_init;
  std::vector<TvAgent> tvs = s.tvs;
  double target = s.initial_target_lane >= 0 && s.initial_target_lane < s.cfg.lanes
                      ? s.cfg.lane_center(s.initial_target_lane)
                      : s.cfg.lane_center(lane_of(s.cfg, ev.y));
  std::vector<EvInput> warm;
  const int n_steps = static_cast<int>(std::floor(s.duration / s.cfg.dt + 1e-9));

  for (int k = 0; k <= n_steps; ++k) {
    const double t = k * s.cfg.dt;
    std::vector<TvState> tv_states;
    tv_states.reserve(tvs.size());
    for (const TvAgent& tv : tvs) tv_states.push_back(tv.state);

    LanePolicyDecision decision = lane_policy_decide(s.cfg, ev, tv_states, target);
    if (decision.target_lane_center != target) {
      target = decision.target_lane_center;
      LaneChangeEvent ev_change;
      ev_change.trigger_t = t;
      ev_change.from_center = s.cfg.lane_center(lane_of(s.cfg, ev.y));
      ev_change.to_center = target;
      ev_change.rule = decision.rule;
      ev_change.trigger_tv = decision.trigger_tv;
      log.lane_changes.push_back(ev_change);
    }

    PlanResult plan;
    try {
      plan = plan_step(s.cfg, s.ev_params, ev, tvs, target,
                       warm.empty() ? nullptr : &warm);
    } catch (const std::exception& e) {
      log.failed = true;
      log.failure = e.what();
      break;
    }

    SimRecord rec;
    rec.t = t;
    rec.ev = ev;
    rec.input = plan.inputs.front();
    rec.tvs = tv_states;
    rec.target_lane = target;
    rec.slack_total = plan.slack_total;
    rec.cost = plan.cost;
    rec.timings = plan.timings;
    rec.hulls = plan.hull_vertices;
    log.records.push_back(std::move(rec));

    if (k == n_steps) break;

    ev = discrete_step(s.ev_params, ev, plan.inputs.front(), s.cfg.dt);
    for (TvAgent& tv : tvs) {
      const ManeuverHypothesis* best = &tv.hypotheses.front();
      for (const auto& hyp : tv.hypotheses) {
        if (hyp.probability > best->probability) best = &hyp;
      }
      tv.state = tv_truth_step(tv.model, tv.state, *best, s.noise_on, rng);
    }
    warm = shift_warm_start(plan.inputs);

    if (!log.lane_changes.empty()) {
      LaneChangeEvent& open = log.lane_changes.back();
      if (!open.completed && footprint_in_lane(s.cfg, ev, s.ev_params, open.to_center)) {
        open.completed = true;
        open.completion_t = t + s.cfg.dt;
        if (open.trigger_tv >= 0) {
          open.dx_at_completion = std::abs(ev.x - tvs[open.trigger_tv].state.x);
        }
      }
    }
    for (size_t idx = 0; idx < tvs.size(); ++idx) {
      if (check_collision(ev, s.ev_params.length, s.ev_params.width, tvs[idx].state,
                          s.cfg.vehicle_length, s.cfg.vehicle_width)) {
        log.collision = true;
        log.collision_tv = static_cast<int>(idx);
        log.collision_t = t + s.cfg.dt;
        break;
      }
    }
    if (log.collision) break;
  }
  return log;
}

}  // namespace gridsmpc
