#include "gridsmpc/smpc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace gridsmpc {

PlannerConfig itsc2020_preset() { return PlannerConfig{}; }

std::vector<EvState> build_ev_reference(const PlannerConfig& cfg, const EvState& current,
                                        double target_lane_center) {
  std::vector<EvState> refs(cfg.horizon + 1);
  for (auto& r : refs) {
    r = {current.x, target_lane_center, 0.0, cfg.v_ref};
  }
  return refs;
}

std::vector<EvInput> shift_warm_start(const std::vector<EvInput>& inputs) {
  if (inputs.empty()) return {};
  std::vector<EvInput> shifted(inputs.begin() + 1, inputs.end());
  shifted.push_back(inputs.back());
  return shifted;
}

namespace {

using Eigen::Matrix2d;
using Eigen::Matrix4d;
using Eigen::Vector2d;
using Eigen::Vector4d;
using Eigen::VectorXd;

struct SoftRow {
  Vector4d a;
  double b;
};

Vector4d state_vec(const EvState& s) { return {s.x, s.y, s.psi, s.v}; }

double hinge(double t) { return t > 0 ? t : 0.0; }

double smooth_hinge(double t, double eps) {
  if (t <= 0) return 0.0;
  if (t < eps) return t * t / (2 * eps);
  return t - eps / 2;
}

double smooth_hinge_grad(double t, double eps) {
  if (t <= 0) return 0.0;
  if (t < eps) return t / eps;
  return 1.0;
}

// Single-shooting objective over the stacked input vector, with analytic
// adjoint gradients through the forward-Euler bicycle rollout.
struct OcpProblem {
  const PlannerConfig& cfg;
  const EvParams& params;
  Vector4d init;
  std::vector<Vector4d> refs;              // horizon+1
  std::vector<std::vector<SoftRow>> rows;  // per step h=1..horizon
  double kappa;

  OcpProblem(const PlannerConfig& c, const EvParams& p, const EvState& init_state,
             const std::vector<EvState>& ref_states,
             const std::vector<std::vector<SoftRow>>& soft_rows)
      : cfg(c), params(p), init(state_vec(init_state)), rows(soft_rows) {
    refs.reserve(ref_states.size());
    for (const auto& r : ref_states) refs.push_back(state_vec(r));
    kappa = params.lr / (params.lr + params.lf);
  }

  Vector4d step(const Vector4d& s, const Vector2d& u) const {
    double alpha = std::atan(kappa * std::tan(u[0]));
    double hd = s[2] + alpha;
    return {s[0] + cfg.dt * s[3] * std::cos(hd), s[1] + cfg.dt * s[3] * std::sin(hd),
            s[2] + cfg.dt * s[3] / params.lr * std::sin(alpha), s[3] + cfg.dt * u[1]};
  }

  void jacobians(const Vector4d& s, const Vector2d& u, Matrix4d& a_jac,
                 Eigen::Matrix<double, 4, 2>& b_jac) const {
    double td = std::tan(u[0]);
    double alpha = std::atan(kappa * td);
    double dalpha = kappa * (1 + td * td) / (1 + kappa * kappa * td * td);
    double hd = s[2] + alpha;
    double ch = std::cos(hd), sh = std::sin(hd);
    a_jac.setIdentity();
    a_jac(0, 2) = -cfg.dt * s[3] * sh;
    a_jac(0, 3) = cfg.dt * ch;
    a_jac(1, 2) = cfg.dt * s[3] * ch;
    a_jac(1, 3) = cfg.dt * sh;
    a_jac(2, 3) = cfg.dt * std::sin(alpha) / params.lr;
    b_jac.setZero();
    b_jac(0, 0) = -cfg.dt * s[3] * sh * dalpha;
    b_jac(1, 0) = cfg.dt * s[3] * ch * dalpha;
    b_jac(2, 0) = cfg.dt * s[3] / params.lr * std::cos(alpha) * dalpha;
    b_jac(3, 1) = cfg.dt;
  }

  std::vector<Vector4d> rollout(const VectorXd& z) const {
    const int n = cfg.horizon;
    std::vector<Vector4d> xi(n + 1);
    xi[0] = init;
    for (int h = 0; h < n; ++h) {
      xi[h + 1] = step(xi[h], z.segment<2>(2 * h));
    }
    return xi;
  }

  // Smoothed objective; gradient optional.
  double eval(const VectorXd& z, VectorXd* grad) const {
    const int n = cfg.horizon;
    std::vector<Vector4d> xi = rollout(z);
    double obj = 0.0;
    for (int h = 0; h < n; ++h) {
      Vector4d d = xi[h] - refs[h];
      Vector2d u = z.segment<2>(2 * h);
      obj += d.dot(cfg.q * d) + u.dot(cfg.r * u);
    }
    Vector4d dn = xi[n] - refs[n];
    obj += dn.dot(cfg.s * dn);
    for (int h = 1; h <= n; ++h) {
      for (const SoftRow& row : rows[h - 1]) {
        obj += cfg.slack_weight * smooth_hinge(row.a.dot(xi[h]) - row.b, cfg.hinge_eps);
      }
    }
    if (grad) {
      grad->resize(2 * n);
      Vector4d lambda = 2 * (cfg.s * dn);
      for (const SoftRow& row : rows[n - 1]) {
        lambda += cfg.slack_weight *
                  smooth_hinge_grad(row.a.dot(xi[n]) - row.b, cfg.hinge_eps) * row.a;
      }
      Matrix4d a_jac;
      Eigen::Matrix<double, 4, 2> b_jac;
      for (int h = n - 1; h >= 0; --h) {
        Vector2d u = z.segment<2>(2 * h);
        jacobians(xi[h], u, a_jac, b_jac);
        grad->segment<2>(2 * h) = 2 * (cfg.r * u) + b_jac.transpose() * lambda;
        if (h >= 1) {
          Vector4d d = xi[h] - refs[h];
          Vector4d lnext = 2 * (cfg.q * d) + a_jac.transpose() * lambda;
          for (const SoftRow& row : rows[h - 1]) {
            lnext += cfg.slack_weight *
                     smooth_hinge_grad(row.a.dot(xi[h]) - row.b, cfg.hinge_eps) * row.a;
          }
          lambda = lnext;
        }
      }
    }
    return obj;
  }

  // Exact L1 bookkeeping for reporting.
  void report(const VectorXd& z, double& cost, double& slack) const {
    const int n = cfg.horizon;
    std::vector<Vector4d> xi = rollout(z);
    cost = 0.0;
    slack = 0.0;
    for (int h = 0; h < n; ++h) {
      Vector4d d = xi[h] - refs[h];
      Vector2d u = z.segment<2>(2 * h);
      cost += d.dot(cfg.q * d) + u.dot(cfg.r * u);
    }
    Vector4d dn = xi[n] - refs[n];
    cost += dn.dot(cfg.s * dn);
    for (int h = 1; h <= n; ++h) {
      for (const SoftRow& row : rows[h - 1]) {
        slack += hinge(row.a.dot(xi[h]) - row.b);
      }
    }
    cost += cfg.slack_weight * slack;
  }
};

struct BoxClamp {
  VectorXd lo, hi;
  VectorXd operator()(const VectorXd& z) const {
    return z.cwiseMax(lo).cwiseMin(hi);
  }
};

// Polytope rows plus the road band and v >= 0, one row list per step h=1..N.
std::vector<std::vector<SoftRow>> build_soft_rows(const PlannerConfig& cfg,
                                                  const std::vector<Polytope>& hulls) {
  const int n = cfg.horizon;
  std::vector<std::vector<SoftRow>> rows(n);
  for (int h = 1; h <= n; ++h) {
    auto& r = rows[h - 1];
    const Polytope& p = hulls[h - 1];
    for (int k = 0; k < p.a.rows(); ++k) {
      r.push_back({p.a.row(k).transpose(), p.b[k]});
    }
    r.push_back({{0, 1, 0, 0}, cfg.y_max});
    r.push_back({{0, -1, 0, 0}, -cfg.y_min});
    r.push_back({{0, 0, 0, -1}, 0.0});  // v >= 0
  }
  return rows;
}

}  // namespace

double ocp_objective(const PlannerConfig& cfg, const EvParams& params, const EvState& init,
                     const std::vector<EvState>& refs, const std::vector<Polytope>& hulls,
                     const VectorXd& z, VectorXd* grad) {
  const int n = cfg.horizon;
  if (static_cast<int>(refs.size()) != n + 1) {
    throw std::invalid_argument("ocp_objective: refs must have horizon+1 entries");
  }
  if (static_cast<int>(hulls.size()) != n) {
    throw std::invalid_argument("ocp_objective: hulls must have horizon entries");
  }
  if (z.size() != 2 * n) {
    throw std::invalid_argument("ocp_objective: z must have 2*horizon entries");
  }
  OcpProblem prob(cfg, params, init, refs, build_soft_rows(cfg, hulls));
  return prob.eval(z, grad);
}

PlanResult solve_ocp(const PlannerConfig& cfg, const EvParams& params, const EvState& init,
                     const std::vector<EvState>& refs, const std::vector<Polytope>& hulls,
                     const std::vector<EvInput>* warm_start) {
  const int n = cfg.horizon;
  if (static_cast<int>(refs.size()) != n + 1) {
    throw std::invalid_argument("solve_ocp: refs must have horizon+1 entries");
  }
  if (static_cast<int>(hulls.size()) != n) {
    throw std::invalid_argument("solve_ocp: hulls must have horizon entries");
  }

  OcpProblem prob(cfg, params, init, refs, build_soft_rows(cfg, hulls));

  BoxClamp box;
  box.lo.resize(2 * n);
  box.hi.resize(2 * n);
  for (int h = 0; h < n; ++h) {
    box.lo[2 * h] = cfg.delta_min;
    box.hi[2 * h] = cfg.delta_max;
    box.lo[2 * h + 1] = cfg.a_min;
    box.hi[2 * h + 1] = cfg.a_max;
  }

  VectorXd z = VectorXd::Zero(2 * n);
  if (warm_start && static_cast<int>(warm_start->size()) == n) {
    for (int h = 0; h < n; ++h) {
      z[2 * h] = (*warm_start)[h].delta_f;
      z[2 * h + 1] = (*warm_start)[h].a;
    }
  }
  z = box(z);

  // Projected L-BFGS with Armijo backtracking along the projection arc.
  constexpr int kMemory = 10;
  std::vector<VectorXd> mem_s, mem_y;
  std::vector<double> mem_rho;
  VectorXd grad(2 * n);
  double f = prob.eval(z, &grad);
  bool converged = false;
  int iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    double res = (z - box(z - grad)).lpNorm<Eigen::Infinity>();
    if (res <= cfg.solver_tol) {
      converged = true;
      break;
    }
    // Two-loop recursion.
    VectorXd d = -grad;
    const int m = static_cast<int>(mem_s.size());
    std::vector<double> alpha_mem(m);
    for (int k = m - 1; k >= 0; --k) {
      alpha_mem[k] = mem_rho[k] * mem_s[k].dot(d);
      d -= alpha_mem[k] * mem_y[k];
    }
    if (m > 0) {
      double gamma = mem_s.back().dot(mem_y.back()) / mem_y.back().squaredNorm();
      d *= gamma;
    }
    for (int k = 0; k < m; ++k) {
      double beta = mem_rho[k] * mem_y[k].dot(d);
      d += (alpha_mem[k] - beta) * mem_s[k];
    }
    if (d.dot(grad) > -1e-12 * d.norm() * grad.norm()) {
      d = -grad;
      mem_s.clear();
      mem_y.clear();
      mem_rho.clear();
    }

    bool accepted = false;
    VectorXd z_new;
    double f_new = f;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      double step_len = 1.0;
      for (int ls = 0; ls < 55; ++ls) {
        z_new = box(z + step_len * d);
        VectorXd delta = z_new - z;
        double dnorm = delta.lpNorm<Eigen::Infinity>();
        if (dnorm < 1e-16) break;
        f_new = prob.eval(z_new, nullptr);
        if (f_new <= f + 1e-4 * grad.dot(delta)) {
          accepted = true;
          break;
        }
        step_len *= 0.5;
      }
      if (!accepted && attempt == 0 && mem_s.size() > 0) {
        d = -grad;  // quasi-Newton direction failed, restart from steepest descent
        mem_s.clear();
        mem_y.clear();
        mem_rho.clear();
      }
    }
    if (!accepted) break;  // stationary within line-search resolution

    VectorXd grad_new(2 * n);
    prob.eval(z_new, &grad_new);
    VectorXd sk = z_new - z;
    VectorXd yk = grad_new - grad;
    double sy = sk.dot(yk);
    if (sy > 1e-12 * sk.norm() * yk.norm()) {
      mem_s.push_back(sk);
      mem_y.push_back(yk);
      mem_rho.push_back(1.0 / sy);
      if (static_cast<int>(mem_s.size()) > kMemory) {
        mem_s.erase(mem_s.begin());
        mem_y.erase(mem_y.begin());
        mem_rho.erase(mem_rho.begin());
      }
    }
    z = z_new;
    f = f_new;
    grad = grad_new;
  }

  PlanResult result;
  result.iterations = iter;
  result.solver_converged = converged;
  result.status = converged ? PlanStatus::kConverged : PlanStatus::kMaxIters;
  result.inputs.resize(n);
  for (int h = 0; h < n; ++h) {
    result.inputs[h] = {z[2 * h], z[2 * h + 1]};
  }
  std::vector<Eigen::Vector4d> xi = prob.rollout(z);
  result.predicted_states.resize(n + 1);
  for (int h = 0; h <= n; ++h) {
    result.predicted_states[h] = {xi[h][0], xi[h][1], xi[h][2], xi[h][3]};
  }
  result.hulls = hulls;
  prob.report(z, result.cost, result.slack_total);
  return result;
}

Pog fused_pog_at(const PlannerConfig& cfg, const EvState& ev,
                 const std::vector<TvAgent>& tvs, int h) {
  if (h < 0 || h > cfg.horizon) {
    throw std::out_of_range("fused_pog_at: step outside horizon");
  }
  GridSpec grid = make_planning_grid(ev.x, cfg.road_y0, cfg.road_width(), cfg.cell_cx,
                                     cfg.cell_cy, cfg.grid_behind, cfg.detection_range);
  std::vector<Pog> parts;
  std::vector<double> weights;
  for (const TvAgent& tv : tvs) {
    double wsum = 0.0;
    for (const auto& hyp : tv.hypotheses) wsum += hyp.probability;
    if (std::abs(wsum - 1.0) > 1e-6) {
      throw std::invalid_argument("fused_pog_at: maneuver weights must sum to 1");
    }
    // A TV whose footprint lies entirely outside the grid is outside the
    // sensed region; it is not part of this cycle's environment model.
    if (tv.state.x < grid.origin_x - cfg.vehicle_length / 2 ||
        tv.state.x > grid.max_x() + cfg.vehicle_length / 2) {
      continue;
    }
    std::vector<Eigen::Matrix4d> covs = propagate_covariance(tv.model, h);
    Eigen::Matrix2d pos_cov;
    const Eigen::Matrix4d& sig = covs[h];
    pos_cov << sig(0, 0), sig(0, 2), sig(2, 0), sig(2, 2);
    for (const auto& hyp : tv.hypotheses) {
      std::vector<TvState> mean = predict_tv_mean(tv.model, tv.state, hyp, h);
      Eigen::Vector2d mu(mean[h].x, mean[h].y);
      parts.push_back(build_tv_pog(grid, mu, pos_cov, cfg.vehicle_length, cfg.vehicle_width));
      weights.push_back(hyp.probability);
    }
  }
  if (parts.empty()) {
    return {grid, Eigen::ArrayXXd::Zero(grid.nx, grid.ny)};
  }
  std::vector<std::pair<double, const Pog*>> weighted;
  weighted.reserve(parts.size());
  for (size_t k = 0; k < parts.size(); ++k) {
    weighted.emplace_back(weights[k], &parts[k]);
  }
  return combine_pogs(weighted);
}

PlanResult plan_step(const PlannerConfig& cfg, const EvParams& params, const EvState& ev,
                     const std::vector<TvAgent>& tvs, double target_lane_center,
                     const std::vector<EvInput>* warm_start) {
  using Clock = std::chrono::steady_clock;
  const int n = cfg.horizon;
  auto t0 = Clock::now();

  // Grid phase: per-step fused occupancy, thresholded.
  std::vector<Bog> bogs;
  bogs.reserve(n);
  for (int h = 1; h <= n; ++h) {
    bogs.push_back(to_bog(fused_pog_at(cfg, ev, tvs, h), cfg.p_th));
  }
  auto t1 = Clock::now();

  // Hull phase: admissible quadrilaterals, reusing the previous step's hull
  // when a step has none.
  std::vector<HullVertices> hull_vertices(n);
  std::vector<Polytope> full_polys(n);
  std::vector<Polytope> solver_polys(n);
  std::vector<int> fallback;
  for (int h = 1; h <= n; ++h) {
    std::optional<HullVertices> hull = admissible_safe_space(bogs[h - 1], ev, params.length,
                                                             params.width, target_lane_center);
    if (!hull) {
      if (h == 1) {
        throw std::runtime_error("plan_step: infeasible start, no admissible hull at h=1");
      }
      hull_vertices[h - 1] = hull_vertices[h - 2];
      full_polys[h - 1] = full_polys[h - 2];
      solver_polys[h - 1] = solver_polys[h - 2];
      fallback.push_back(h);
      continue;
    }
    hull_vertices[h - 1] = *hull;
    full_polys[h - 1] = vertices_to_halfspaces(*hull);
    // Only the lateral edges carry obstacle information; the fore/aft cap
    // edges are detection-boundary artifacts and stay out of the OCP.
    const Polytope& p = full_polys[h - 1];
    std::vector<int> keep;
    for (int k = 0; k < p.a.rows(); ++k) {
      if (std::abs(p.a(k, 1)) >= 0.5) keep.push_back(k);
    }
    Polytope filt;
    filt.a.resize(static_cast<int>(keep.size()), 4);
    filt.b.resize(static_cast<int>(keep.size()));
    for (size_t k = 0; k < keep.size(); ++k) {
      filt.a.row(static_cast<int>(k)) = p.a.row(keep[k]);
      filt.b[static_cast<int>(k)] = p.b[keep[k]];
    }
    solver_polys[h - 1] = filt;
  }
  auto t2 = Clock::now();

  std::vector<EvState> refs = build_ev_reference(cfg, ev, target_lane_center);
  PlanResult result = solve_ocp(cfg, params, ev, refs, solver_polys, warm_start);
  auto t3 = Clock::now();

  result.hulls = full_polys;
  result.hull_vertices = hull_vertices;
  result.fallback_steps = fallback;
  if (!fallback.empty() && result.status == PlanStatus::kConverged) {
    result.status = PlanStatus::kFallbackHullUsed;
  }
  auto secs = [](auto a, auto b) {
    return std::chrono::duration<double>(b - a).count();
  };
  result.timings = {secs(t0, t1), secs(t1, t2), secs(t2, t3), secs(t0, t3)};
  return result;
}

}  // namespace gridsmpc
