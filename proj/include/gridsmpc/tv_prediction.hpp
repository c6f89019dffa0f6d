#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

namespace gridsmpc {

// Discrete linear point-mass target-vehicle model with state [x, vx, y, vy],
// reference-tracking feedback u = K (xi - xi_ref) and additive disturbance G w.
struct TvModel {
  Eigen::Matrix4d A;
  Eigen::Matrix<double, 4, 2> B;
  Eigen::Matrix<double, 2, 4> K;  // nonzeros only at (0,1), (1,2), (1,3)
  Eigen::Matrix4d G;
  Eigen::Matrix4d sigma_w;
  double dt = 0.2;
};

struct TvState {
  double x = 0.0;
  double vx = 0.0;
  double y = 0.0;
  double vy = 0.0;

  Eigen::Vector4d vec() const { return {x, vx, y, vy}; }
  static TvState from_vec(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }
};

enum class ManeuverKind { kLaneKeep, kLaneChange };

struct ManeuverHypothesis {
  ManeuverKind kind = ManeuverKind::kLaneKeep;
  double probability = 1.0;
  double target_lane_center = 0.0;  // [m]
  double cruise_speed = 0.0;        // [m/s]
};

// Model with the stock gains/noise: k12=-1, k21=-0.8, k22=-2.2,
// G = diag(0.05, 0.067, 0.013, 0.03), sigma_w = I.
TvModel make_tv_model(double dt);

TvModel make_tv_model(double dt, double k12, double k21, double k22,
                      const Eigen::Vector4d& g_diag, const Eigen::Matrix4d& sigma_w);

// u = K (state - ref).
Eigen::Vector2d tv_feedback(const TvModel& m, const TvState& state, const TvState& ref);

// Mean (noise-free) closed-loop rollout, n_steps+1 states including the
// initial one. The per-step reference is [x_h, cruise_speed, target_lane, 0].
std::vector<TvState> predict_tv_mean(const TvModel& m, const TvState& init,
                                     const ManeuverHypothesis& hyp, int n_steps);

// State covariance under closed-loop dynamics, Sigma_0 = 0,
// Sigma_{h+1} = (A+BK) Sigma_h (A+BK)^T + G sigma_w G^T, symmetrized each step.
// Returns n_steps+1 matrices.
std::vector<Eigen::Matrix4d> propagate_covariance(const TvModel& m, int n_steps);

// One simulated (ground-truth) step: closed loop toward the hypothesis
// reference, plus G w noise with w ~ N(0, sigma_w) when noise_on.
TvState tv_truth_step(const TvModel& m, const TvState& s, const ManeuverHypothesis& hyp,
                      bool noise_on, std::mt19937_64& rng);

}  // namespace gridsmpc
