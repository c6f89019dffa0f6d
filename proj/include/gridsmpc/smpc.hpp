#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gridsmpc/ev_model.hpp"
#include "gridsmpc/freespace.hpp"
#include "gridsmpc/tv_prediction.hpp"

namespace gridsmpc {

struct PlannerConfig {
  int horizon = 20;
  double dt = 0.2;
  Eigen::Matrix4d q = Eigen::Vector4d(0.0, 2.0, 0.5, 0.1).asDiagonal();
  Eigen::Matrix2d r = Eigen::Vector2d(0.1, 1.0).asDiagonal();
  Eigen::Matrix4d s = Eigen::Vector4d(0.0, 2.0, 0.5, 0.1).asDiagonal();
  double p_th = 0.15;
  double v_ref = 30.0;
  double y_min = 1.0;
  double y_max = 6.0;
  double delta_min = -3.0 * 0.017453292519943295;
  double delta_max = 3.0 * 0.017453292519943295;
  double a_min = -5.0;
  double a_max = 5.0;
  double slack_weight = 1e5;
  double solver_tol = 1e-7;
  int max_iters = 400;
  double hinge_eps = 1e-4;  // quadratic smoothing zone of the slack penalty [m]

  // Road and grid geometry carried by the preset.
  int lanes = 2;
  double lane_width = 3.5;
  double road_y0 = 0.0;
  double cell_cx = 0.5;
  double cell_cy = 0.25;
  double grid_behind = 14.0;
  double detection_range = 60.0;
  double vehicle_length = 6.0;
  double vehicle_width = 2.0;

  double lane_center(int lane) const { return road_y0 + (lane + 0.5) * lane_width; }
  double road_width() const { return lanes * lane_width; }
};

// Every stock constant in one place: dt 0.2 s, N 20, Q diag(0,2,0.5,0.1),
// R diag(0.1,1), p_th 0.15, 3.5 m lanes, 0.5 x 0.25 m cells, 6 x 2 m
// vehicles, y in [1,6], |delta_f| <= 3 deg, |a| <= 5, v_ref 30.
PlannerConfig itsc2020_preset();

// One target vehicle as the planner sees it.
struct TvAgent {
  TvState state;
  TvModel model;
  std::vector<ManeuverHypothesis> hypotheses;
};

enum class PlanStatus { kConverged, kMaxIters, kFallbackHullUsed };

struct PlanTimings {
  double grid_s = 0.0;
  double hull_s = 0.0;
  double solve_s = 0.0;
  double total_s = 0.0;
};

struct PlanResult {
  std::vector<EvInput> inputs;          // N
  std::vector<EvState> predicted_states;  // N+1, forward-Euler rollout of inputs
  std::vector<Polytope> hulls;          // per step h=1..N (index h-1)
  std::vector<HullVertices> hull_vertices;
  std::vector<int> fallback_steps;      // h values where the h-1 hull was reused
  PlanStatus status = PlanStatus::kConverged;
  bool solver_converged = false;
  int iterations = 0;
  double cost = 0.0;         // tracking + input + slack_weight * slack_total
  double slack_total = 0.0;  // summed hull/bound violation [m]
  PlanTimings timings;
};

// Reference trajectory: x pinned at the current x (zero weight anyway),
// y = target lane center, psi = 0, v = v_ref, for h = 0..N.
std::vector<EvState> build_ev_reference(const PlannerConfig& cfg, const EvState& current,
                                        double target_lane_center);

// Nonlinear OCP over the input sequence (single shooting, forward Euler).
// hulls[h-1] constrains state h softly; the y range and v >= 0 are softened
// the same way; inputs live in hard boxes. Warm start optional.
PlanResult solve_ocp(const PlannerConfig& cfg, const EvParams& params, const EvState& init,
                     const std::vector<EvState>& refs, const std::vector<Polytope>& hulls,
                     const std::vector<EvInput>* warm_start);

// The smoothed objective solve_ocp minimizes, evaluated at a flat input
// vector z = (delta_0, a_0, ..., delta_{N-1}, a_{N-1}), with the analytic
// gradient written to *grad when non-null. Exposed so the gradient can be
// checked against finite differences.
double ocp_objective(const PlannerConfig& cfg, const EvParams& params, const EvState& init,
                     const std::vector<EvState>& refs, const std::vector<Polytope>& hulls,
                     const Eigen::VectorXd& z, Eigen::VectorXd* grad);

// Full planning cycle: grid build, per-hypothesis POGs, fusion, threshold,
// per-step hulls (falling back to the h-1 hull when a step has none; a
// missing h=1 hull throws std::runtime_error, infeasible start), then the
// OCP. Only the lateral hull edges constrain the OCP; the fore/aft cap edges
// of the quadrilateral are detection-boundary artifacts and are dropped.
PlanResult plan_step(const PlannerConfig& cfg, const EvParams& params, const EvState& ev,
                     const std::vector<TvAgent>& tvs, double target_lane_center,
                     const std::vector<EvInput>* warm_start);

// Warm start for the next cycle: drop the first input, repeat the last.
std::vector<EvInput> shift_warm_start(const std::vector<EvInput>& inputs);

// Fused occupancy of every TV hypothesis at prediction step h (0..horizon)
// on the planning grid anchored at the EV. TVs whose current footprint lies
// outside the grid are beyond the sensed region and are skipped. h = 0 uses
// the current TV states, whose zero covariance the POG floor keeps valid.
// Shared by plan_step and the grid-dump tool.
Pog fused_pog_at(const PlannerConfig& cfg, const EvState& ev,
                 const std::vector<TvAgent>& tvs, int h);

}  // namespace gridsmpc
