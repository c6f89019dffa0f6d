// End-to-end acceptance gate: ten numbered checks, one PASS/FAIL line each.
// Usage: acceptance_tests --scenario-dir <dir> --cli <path-to-gridsmpc_cli>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gridsmpc/bench.hpp"
#include "gridsmpc/freespace.hpp"
#include "gridsmpc/pog.hpp"
#include "gridsmpc/scenario_io.hpp"
#include "gridsmpc/simulation.hpp"

namespace fs = std::filesystem;
using namespace gridsmpc;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cmd(const std::string& cmd) { return std::system(cmd.c_str()); }

struct Outcome {
  bool ok = false;
  std::string detail;
};

// ---------------------------------------------------------------- 1
Outcome overtake_reproduction(const fs::path& scenario_dir) {
  auto t0 = std::chrono::steady_clock::now();
  Scenario s = load_scenario((scenario_dir / "overtake_2tv.toml").string());
  SimLog log = run_closed_loop(s);
  double secs = seconds_since(t0);

  std::vector<LaneChangeEvent> done;
  for (const LaneChangeEvent& e : log.lane_changes) {
    if (e.completed) done.push_back(e);
  }
  std::ostringstream d;
  bool ok = !log.collision && !log.failed && done.size() >= 3 && secs <= 300.0;
  const double want[3] = {16.0, 17.0, 21.0};
  if (done.size() >= 3) {
    d << "dx ";
    for (int k = 0; k < 3; ++k) {
      if (std::abs(done[k].dx_at_completion - want[k]) > 3.0) ok = false;
      d << (k ? "/" : "") << done[k].dx_at_completion;
    }
    d << " m vs 16/17/21 +-3, ";
  } else {
    d << "only " << done.size() << " completed lane changes, ";
  }
  if (log.collision) d << "COLLISION, ";
  if (log.failed) d << "planner failure (" << log.failure << "), ";
  d << secs << " s";
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 2
Outcome bench_scaling() {
  auto t0 = std::chrono::steady_clock::now();
  BenchResult r1 = run_bench(1, 10, 7, 10.0);
  BenchResult r2 = run_bench(2, 10, 7, 10.0);
  BenchResult r3 = run_bench(3, 10, 7, 10.0);
  double secs = seconds_since(t0);
  bool ok = r1.iterations > 0 && r3.iterations > 0 && r1.failures == 0 &&
            r2.failures == 0 && r3.failures == 0 &&
            r3.mean_s <= 1.5 * r1.mean_s && secs <= 1800.0;
  std::ostringstream d;
  d << "mean plan time " << r1.mean_s << "/" << r2.mean_s << "/" << r3.mean_s
    << " s for 1/2/3 TVs (ratio " << r3.mean_s / r1.mean_s << " <= 1.5), " << secs
    << " s";
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 3
Outcome covariance_oracle() {
  TvModel m = make_tv_model(0.2);
  // Independent plain-array recursion: acl = A + B K, S+ = acl S acl^T + G Sw G^T.
  double acl[4][4], gsg[4][4], sig[4][4] = {{0}};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double v = m.A(i, j);
      for (int k = 0; k < 2; ++k) v += m.B(i, k) * m.K(k, j);
      acl[i][j] = v;
      double g = 0.0;
      for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) g += m.G(i, k) * m.sigma_w(k, l) * m.G(j, l);
      }
      gsg[i][j] = g;
    }
  }
  auto sigmas = propagate_covariance(m, 20);
  if (sigmas.size() != 21) return {false, "expected 21 matrices"};
  double worst_rel = 0.0, worst_eig = 1e300;
  for (int h = 1; h <= 20; ++h) {
    double tmp[4][4];
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        double v = 0.0;
        for (int k = 0; k < 4; ++k) {
          for (int l = 0; l < 4; ++l) v += acl[i][k] * sig[k][l] * acl[j][l];
        }
        tmp[i][j] = v + gsg[i][j];
      }
    }
    double scale = 1.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        sig[i][j] = tmp[i][j];
        scale = std::max(scale, std::abs(sig[i][j]));
      }
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        worst_rel = std::max(worst_rel, std::abs(sigmas[h](i, j) - sig[i][j]) / scale);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(sigmas[h]);
    worst_eig = std::min(worst_eig, es.eigenvalues().minCoeff());
  }
  bool ok = worst_rel <= 1e-12 && worst_eig >= -1e-12;
  std::ostringstream d;
  d << "max relative deviation " << worst_rel << " (<= 1e-12), min eigenvalue "
    << worst_eig;
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 4
Outcome density_mass() {
  GridSpec g;
  g.origin_x = 0.0;
  g.origin_y = 0.0;
  g.cx = 0.5;
  g.cy = 0.25;
  g.nx = 200;  // 100 m
  g.ny = 120;  // 30 m
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> umx(20.0, 80.0), umy(9.0, 21.0);
  std::uniform_real_distribution<double> usx(0.3, 2.5), usy(0.2, 1.2);
  std::uniform_real_distribution<double> urho(-0.7, 0.7);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    double sx = usx(rng), sy = usy(rng), rho = urho(rng);
    Eigen::Vector2d mean(umx(rng), umy(rng));
    // The draw ranges keep the truncation box inside the grid.
    if (mean.x() - 6.5 * sx < 0 || mean.x() + 6.5 * sx > 100 ||
        mean.y() - 6.5 * sy < 0 || mean.y() + 6.5 * sy > 30) {
      return {false, "internal draw range error"};
    }
    Eigen::Matrix2d sigma;
    sigma << sx * sx, rho * sx * sy, rho * sx * sy, sy * sy;
    double mass = sample_density_field(g, mean, sigma).sum() * g.cx * g.cy;
    worst = std::max(worst, std::abs(mass - 1.0));
  }
  std::ostringstream d;
  d << "100 random covariances, max |mass - 1| = " << worst << " (<= 0.05)";
  return {worst <= 0.05, d.str()};
}

// ---------------------------------------------------------------- 5
Outcome dilation_oracle() {
  GridSpec g;
  g.origin_x = 0.0;
  g.origin_y = 0.0;
  g.cx = 0.5;
  g.cy = 0.25;
  g.nx = 40;
  g.ny = 28;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> umx(3.0, 17.0), umy(1.5, 5.5);
  std::uniform_real_distribution<double> usx(0.3, 2.0), usy(0.2, 1.0);
  std::uniform_real_distribution<double> urho(-0.6, 0.6);
  for (int n = 0; n < 50; ++n) {
    double sx = usx(rng), sy = usy(rng), rho = urho(rng);
    Eigen::Vector2d mean(umx(rng), umy(rng));
    Eigen::Matrix2d sigma;
    sigma << sx * sx, rho * sx * sy, rho * sx * sy, sy * sy;
    Eigen::ArrayXXd field = sample_density_field(g, mean, sigma);
    Pog pog = build_tv_pog(g, mean, sigma, 6.0, 2.0);
    // Brute-force windowed max, +-6 x +-4 cells for the 6 x 2 m footprint.
    Eigen::ArrayXXd want = Eigen::ArrayXXd::Zero(g.nx, g.ny);
    for (int i = 0; i < g.nx; ++i) {
      for (int j = 0; j < g.ny; ++j) {
        double v = 0.0;
        for (int di = -6; di <= 6; ++di) {
          for (int dj = -4; dj <= 4; ++dj) {
            int ii = i + di, jj = j + dj;
            if (ii < 0 || ii >= g.nx || jj < 0 || jj >= g.ny) continue;
            v = std::max(v, field(ii, jj));
          }
        }
        want(i, j) = v;
      }
    }
    if (!(pog.p == want).all()) {
      std::ostringstream d;
      d << "mismatch on random grid " << n;
      return {false, d.str()};
    }
  }
  return {true, "50 random 40x28 grids match the windowed max exactly"};
}

// ---------------------------------------------------------------- 6
Outcome threshold_monotonicity() {
  GridSpec g;
  g.origin_x = 0.0;
  g.origin_y = 0.0;
  g.cx = 0.5;
  g.cy = 0.25;
  g.nx = 30;
  g.ny = 20;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> uv(0.0, 0.4);
  std::uniform_int_distribution<int> ui(0, 29), uj(0, 19);
  std::uniform_real_distribution<double> ut(0.02, 0.38);
  for (int n = 0; n < 100; ++n) {
    Eigen::ArrayXXd f = Eigen::ArrayXXd::Zero(30, 20);
    for (int k = 0; k < 80; ++k) f(ui(rng), uj(rng)) = uv(rng);
    Pog pog{g, f};
    double t1 = ut(rng), t2 = ut(rng);
    if (t1 > t2) std::swap(t1, t2);
    Bog lo = to_bog(pog, t1), hi = to_bog(pog, t2);
    // Every cell occupied at the higher threshold stays occupied at the lower.
    if (!((hi.b == 0) || (lo.b == 1)).all()) {
      std::ostringstream d;
      d << "nesting violated on grid " << n;
      return {false, d.str()};
    }
  }
  return {true, "occupied sets nest across 100 random POGs and threshold pairs"};
}

// ---------------------------------------------------------------- 7
bool segment_hits_cell(CellIndex a, CellIndex b, CellIndex cell) {
  // Exact closed segment/square intersection on the doubled integer lattice
  // (cell (i, j) spans [2i, 2i+2] x [2j, 2j+2]; centers are odd points).
  std::int64_t x0 = 2 * a.i + 1, y0 = 2 * a.j + 1;
  std::int64_t x1 = 2 * b.i + 1, y1 = 2 * b.j + 1;
  std::int64_t lx = 2 * cell.i, hx = lx + 2;
  std::int64_t ly = 2 * cell.j, hy = ly + 2;
  if (std::max(x0, x1) < lx || std::min(x0, x1) > hx) return false;
  if (std::max(y0, y1) < ly || std::min(y0, y1) > hy) return false;
  std::int64_t dx = x1 - x0, dy = y1 - y0;
  if (dx == 0 && dy == 0) return true;
  std::int64_t s = -dy * x0 + dx * y0;
  std::int64_t lo = INT64_MAX, hi = INT64_MIN;
  for (std::int64_t cx : {lx, hx}) {
    for (std::int64_t cy : {ly, hy}) {
      std::int64_t p = -dy * cx + dx * cy;
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
  }
  return lo <= s && s <= hi;
}

Outcome supercover_oracle() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> u(0, 63);
  for (int n = 0; n < 1000; ++n) {
    CellIndex a{u(rng), u(rng)}, b{u(rng), u(rng)};
    auto got = supercover_line(a, b);
    std::set<std::pair<int, int>> got_set, want;
    for (const CellIndex& c : got) got_set.insert({c.i, c.j});
    int i0 = std::min(a.i, b.i), i1 = std::max(a.i, b.i);
    int j0 = std::min(a.j, b.j), j1 = std::max(a.j, b.j);
    for (int i = i0; i <= i1; ++i) {
      for (int j = j0; j <= j1; ++j) {
        if (segment_hits_cell(a, b, {i, j})) want.insert({i, j});
      }
    }
    if (got_set != want || got.front() != a || got.back() != b) {
      std::ostringstream d;
      d << "mismatch for (" << a.i << "," << a.j << ")->(" << b.i << "," << b.j << ")";
      return {false, d.str()};
    }
  }
  return {true, "1000 random pairs on 64x64 match the exact enumeration as sets"};
}

// ---------------------------------------------------------------- 8
Outcome hull_soundness() {
  // Vehicle-scale occupancy blocks; single stray cells can slip between the
  // discrete sight lines (documented algorithm caveat), dilated footprints
  // cannot, so the interior-occupied fraction stays near zero.
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> uv(0.0, 1.0);
  std::uniform_int_distribution<int> nblob(1, 4);
  std::uniform_int_distribution<int> bw(8, 16), bh(6, 12);
  int found = 0, trials = 0;
  long interior_occ = 0, occ_total = 0;
  double worst_violation = 0.0;
  while (found < 1000 && trials < 4000) {
    ++trials;
    Bog bog;
    bog.spec.origin_x = 0.0;
    bog.spec.origin_y = 0.0;
    bog.spec.cx = 0.5;
    bog.spec.cy = 0.25;
    bog.spec.nx = 40;
    bog.spec.ny = 28;
    bog.b = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(40, 28);
    int nb = nblob(rng);
    for (int k = 0; k < nb; ++k) {
      int w = bw(rng), h = bh(rng);
      std::uniform_int_distribution<int> pi(12, 39 - w), pj(0, 27 - h);
      int i0 = pi(rng), j0 = pj(rng);
      for (int i = i0; i < i0 + w; ++i) {
        for (int j = j0; j < j0 + h; ++j) bog.b(i, j) = 1;
      }
    }
    EvState ev{5.0, 1.0 + 5.0 * uv(rng), 0.0, 26.0};
    double ref = 1.75 + 3.5 * (uv(rng) < 0.5 ? 0 : 1);
    auto hull = admissible_safe_space(bog, ev, 6.0, 2.0, ref);
    if (!hull) continue;
    ++found;
    Polytope p = vertices_to_halfspaces(*hull);
    for (const Eigen::Vector2d& v : hull->v) {
      worst_violation = std::max(worst_violation,
                                 (p.a.leftCols<2>() * v - p.b).maxCoeff());
    }
    for (int i = 0; i < 40; ++i) {
      for (int j = 0; j < 28; ++j) {
        if (!bog.occupied(i, j)) continue;
        ++occ_total;
        Eigen::Vector2d c((i + 0.5) * 0.5, (j + 0.5) * 0.25);
        if ((p.a.leftCols<2>() * c - p.b).maxCoeff() < -1e-9) ++interior_occ;
      }
    }
  }
  double frac = occ_total ? static_cast<double>(interior_occ) / occ_total : 0.0;
  bool ok = found >= 1000 && worst_violation <= 1e-9 && frac < 0.01;
  std::ostringstream d;
  d << found << " hulls in " << trials << " trials, worst vertex violation "
    << worst_violation << ", interior-occupied fraction " << frac << " (< 0.01)";
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 9
Polytope box_hull(double x0, double x1, double y0, double y1) {
  HullVertices v;
  v.v = {Eigen::Vector2d(x0, y0), Eigen::Vector2d(x1, y0), Eigen::Vector2d(x1, y1),
         Eigen::Vector2d(x0, y1)};
  return vertices_to_halfspaces(v);
}

double hull_violation(const PlannerConfig& cfg, const std::vector<EvState>& states,
                      const std::vector<Polytope>& hulls) {
  double worst = 0.0;
  for (int h = 1; h <= cfg.horizon; ++h) {
    const EvState& s = states[h];
    const Polytope& p = hulls[h - 1];
    Eigen::Vector2d xy(s.x, s.y);
    worst = std::max(worst, (p.a.leftCols<2>() * xy - p.b).maxCoeff());
  }
  return worst;
}

bool inputs_in_boxes(const PlannerConfig& cfg, const std::vector<EvInput>& inputs) {
  for (const EvInput& u : inputs) {
    if (!(u.delta_f >= cfg.delta_min && u.delta_f <= cfg.delta_max &&
          u.a >= cfg.a_min && u.a <= cfg.a_max)) {
      return false;
    }
  }
  return true;
}

Outcome solver_sanity() {
  PlannerConfig cfg = itsc2020_preset();
  EvParams params;
  std::ostringstream d;
  bool ok = true;

  // Empty road from the reference state: nothing to do.
  EvState at_ref{0.0, 5.25, 0.0, cfg.v_ref};
  auto refs = build_ev_reference(cfg, at_ref, 5.25);
  std::vector<Polytope> open;
  for (int h = 0; h < cfg.horizon; ++h) {
    open.push_back(box_hull(-50.0, 250.0, cfg.road_y0, cfg.road_y0 + cfg.road_width()));
  }
  PlanResult rest = solve_ocp(cfg, params, at_ref, refs, open, nullptr);
  double input_norm = 0.0;
  for (const EvInput& u : rest.inputs) {
    input_norm = std::max({input_norm, std::abs(u.delta_f), std::abs(u.a)});
  }
  ok &= input_norm <= 1e-3 && rest.cost <= 1e-6;
  d << "empty road |u|inf " << input_norm << " cost " << rest.cost;

  // Finite-difference gradient audit in a lane corridor.
  EvState init{0.0, 1.75, 0.0, 28.0};
  auto refs2 = build_ev_reference(cfg, init, 1.75);
  std::vector<Polytope> corridor;
  for (int h = 0; h < cfg.horizon; ++h) {
    corridor.push_back(box_hull(-50.0, 250.0, cfg.road_y0, h < 10 ? 3.2 : 6.8));
  }
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ud(cfg.delta_min, cfg.delta_max);
  std::uniform_real_distribution<double> ua(cfg.a_min, cfg.a_max);
  double worst_fd = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd z(2 * cfg.horizon);
    for (int h = 0; h < cfg.horizon; ++h) {
      z[2 * h] = ud(rng);
      z[2 * h + 1] = ua(rng);
    }
    Eigen::VectorXd grad(2 * cfg.horizon);
    ocp_objective(cfg, params, init, refs2, corridor, z, &grad);
    double scale = std::max(1.0, grad.cwiseAbs().maxCoeff());
    const double step = 1e-7;
    for (int k = 0; k < 2 * cfg.horizon; ++k) {
      Eigen::VectorXd zp = z, zm = z;
      zp[k] += step;
      zm[k] -= step;
      double fd = (ocp_objective(cfg, params, init, refs2, corridor, zp, nullptr) -
                   ocp_objective(cfg, params, init, refs2, corridor, zm, nullptr)) /
                  (2 * step);
      worst_fd = std::max(worst_fd, std::abs(fd - grad[k]) / scale);
    }
  }
  ok &= worst_fd <= 1e-4;
  d << ", gradient-vs-FD " << worst_fd << " (<= 1e-4)";

  // Constrained solves: boxes hold exactly, hull slack stays reported and small.
  EvState off_lane{0.0, 1.75, 0.0, 28.0};
  auto refs3 = build_ev_reference(cfg, off_lane, 5.25);
  PlanResult swerve = solve_ocp(cfg, params, off_lane, refs3, open, nullptr);
  std::vector<Polytope> strip;
  for (int h = 0; h < cfg.horizon; ++h) strip.push_back(box_hull(-50.0, 250.0, 1.5, 2.0));
  PlanResult pinched = solve_ocp(cfg, params, init, refs2, strip, nullptr);
  ok &= inputs_in_boxes(cfg, rest.inputs) && inputs_in_boxes(cfg, swerve.inputs) &&
        inputs_in_boxes(cfg, pinched.inputs);
  ok &= swerve.inputs[0].delta_f == cfg.delta_max;  // saturates toward the far lane
  double viol = hull_violation(cfg, pinched.predicted_states, strip);
  ok &= viol <= pinched.slack_total + 1e-9 && pinched.slack_total <= 1e-3;
  d << ", strip slack " << pinched.slack_total << " (viol " << viol << ")";
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 10
Outcome determinism(const std::string& cli) {
  fs::path base = fs::temp_directory_path() / "gridsmpc_acceptance_det";
  fs::remove_all(base);
  fs::create_directories(base);
  fs::path scen = base / "noisy.toml";
  {
    std::ofstream out(scen);
    out << "schema = \"gridsmpc-scenario-v1\"\n"
           "name = \"det_check\"\n\n"
           "[road]\nlanes = 2\nlane_width = 3.5\ny0 = 0.0\n\n"
           "[planner]\npreset = \"itsc2020\"\n\n"
           "[sim]\nduration = 6.0\nseed = 99\nnoise = true\n\n"
           "[ev]\nx = 10.0\ny = 1.75\npsi = 0.0\nv = 26.0\n\n"
           "[[tv]]\nx = 45.0\nvx = 24.0\ny = 1.75\nvy = 0.0\n"
           "lk_probability = 0.85\nlc_target_lane = 1\ncruise_speed = 24.0\n";
  }
  auto q = [](const fs::path& p) { return "\"" + p.string() + "\""; };
  for (const char* sub : {"a", "b"}) {
    fs::create_directories(base / sub / "run");
    fs::create_directories(base / sub / "dump");
    std::string cmd = "\"" + cli + "\" run --scenario " + q(scen) + " --out " +
                      q(base / sub / "run") + " --seed 99 > /dev/null 2>&1";
    if (run_cmd(cmd) != 0) return {false, std::string("run command failed in ") + sub};
    std::string dump = "\"" + cli + "\" grid-dump --scenario " + q(scen) +
                       " --t 1.0 --h 5 --out " + q(base / sub / "dump") +
                       " > /dev/null 2>&1";
    if (run_cmd(dump) != 0) return {false, std::string("grid-dump failed in ") + sub};
  }
  // Simulation-content outputs must match byte for byte; plan_times.csv holds
  // wall-clock measurements and is exempt by design.
  for (const char* name : {"run/trajectory.csv", "run/hulls.csv", "dump/pog.txt",
                           "dump/bog.txt"}) {
    if (read_file(base / "a" / name) != read_file(base / "b" / name)) {
      return {false, std::string(name) + " differs between same-seed runs"};
    }
  }
  return {true, "same-seed run and grid-dump outputs are byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
  std::string scenario_dir, cli;
  for (int i = 1; i + 1 < argc; ++i) {
    std::string a = argv[i];
    if (a == "--scenario-dir") scenario_dir = argv[++i];
    else if (a == "--cli") cli = argv[++i];
  }
  if (scenario_dir.empty() || cli.empty()) {
    std::fprintf(stderr, "usage: acceptance_tests --scenario-dir <dir> --cli <path>\n");
    return 2;
  }

  std::vector<std::pair<std::string, Outcome>> results;
  auto record = [&](int id, const std::string& name, Outcome o) {
    std::printf("[%s] %2d %s: %s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
    results.push_back({name, o});
  };
  auto guarded = [&](int id, const std::string& name, auto&& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    record(id, name, o);
  };

  guarded(1, "overtake reproduction", [&] { return overtake_reproduction(scenario_dir); });
  guarded(2, "planning-time scaling", [] { return bench_scaling(); });
  guarded(3, "covariance propagation oracle", [] { return covariance_oracle(); });
  guarded(4, "sampled density mass", [] { return density_mass(); });
  guarded(5, "footprint dilation oracle", [] { return dilation_oracle(); });
  guarded(6, "threshold monotonicity", [] { return threshold_monotonicity(); });
  guarded(7, "supercover oracle", [] { return supercover_oracle(); });
  guarded(8, "hull soundness audit", [] { return hull_soundness(); });
  guarded(9, "solver sanity", [] { return solver_sanity(); });
  guarded(10, "seeded determinism", [&] { return determinism(cli); });

  int failed = 0;
  for (const auto& [name, o] : results) failed += o.ok ? 0 : 1;
  std::printf("%d/10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
