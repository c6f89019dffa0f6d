#include "gridsmpc/tv_prediction.hpp"

#include <stdexcept>

namespace gridsmpc {

TvModel make_tv_model(double dt) {
  return make_tv_model(dt, -1.0, -0.8, -2.2, {0.05, 0.067, 0.013, 0.03},
                       Eigen::Matrix4d::Identity());
}

TvModel make_tv_model(double dt, double k12, double k21, double k22,
                      const Eigen::Vector4d& g_diag, const Eigen::Matrix4d& sigma_w) {
  if (!(dt > 0)) {
    throw std::invalid_argument("make_tv_model: dt must be positive");
  }
  TvModel m;
  m.dt = dt;
  m.A << 1, dt, 0, 0,
         0, 1, 0, 0,
         0, 0, 1, dt,
         0, 0, 0, 1;
  m.B << 0.5 * dt * dt, 0,
         dt, 0,
         0, 0.5 * dt * dt,
         0, dt;
  m.K.setZero();
  m.K(0, 1) = k12;
  m.K(1, 2) = k21;
  m.K(1, 3) = k22;
  m.G = g_diag.asDiagonal();
  m.sigma_w = sigma_w;
  return m;
}

Eigen::Vector2d tv_feedback(const TvModel& m, const TvState& state, const TvState& ref) {
  return m.K * (state.vec() - ref.vec());
}

namespace {

TvState hypothesis_ref(const TvState& s, const ManeuverHypothesis& hyp) {
  return {s.x, hyp.cruise_speed, hyp.target_lane_center, 0.0};
}

}  // namespace

std::vector<TvState> predict_tv_mean(const TvModel& m, const TvState& init,
                                     const ManeuverHypothesis& hyp, int n_steps) {
  std::vector<TvState> out;
  out.reserve(n_steps + 1);
  out.push_back(init);
  TvState s = init;
  for (int h = 0; h < n_steps; ++h) {
    Eigen::Vector2d u = tv_feedback(m, s, hypothesis_ref(s, hyp));
    s = TvState::from_vec(m.A * s.vec() + m.B * u);
    out.push_back(s);
  }
  return out;
}

std::vector<Eigen::Matrix4d> propagate_covariance(const TvModel& m, int n_steps) {
  std::vector<Eigen::Matrix4d> out;
  out.reserve(n_steps + 1);
  Eigen::Matrix4d m_cl = m.A + m.B * m.K;
  Eigen::Matrix4d noise = m.G * m.sigma_w * m.G.transpose();
  Eigen::Matrix4d sigma = Eigen::Matrix4d::Zero();
  out.push_back(sigma);
  for (int h = 0; h < n_steps; ++h) {
    sigma = m_cl * sigma * m_cl.transpose() + noise;
    sigma = ((sigma + sigma.transpose()) / 2).eval();
    out.push_back(sigma);
  }
  return out;
}

TvState tv_truth_step(const TvModel& m, const TvState& s, const ManeuverHypothesis& hyp,
                      bool noise_on, std::mt19937_64& rng) {
  Eigen::Vector2d u = tv_feedback(m, s, hypothesis_ref(s, hyp));
  Eigen::Vector4d next = m.A * s.vec() + m.B * u;
  if (noise_on) {
    Eigen::Matrix4d chol = m.sigma_w.llt().matrixL();
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Vector4d z;
    for (int k = 0; k < 4; ++k) z[k] = gauss(rng);
    next += m.G * (chol * z);
  }
  return TvState::from_vec(next);
}

}  // namespace gridsmpc
