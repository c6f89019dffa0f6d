#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gridsmpc/bench.hpp"
#include "gridsmpc/render.hpp"
#include "gridsmpc/scenario_io.hpp"
#include "gridsmpc/sim_csv.hpp"
#include "gridsmpc/simulation.hpp"

namespace fs = std::filesystem;
using namespace gridsmpc;

namespace {

bool log_enabled() {
  const char* v = std::getenv("GRIDSMPC_LOG");
  return v && *v && std::string(v) != "0";
}

void log_line(const std::string& msg) {
  if (log_enabled()) std::cerr << "[gridsmpc] " << msg << '\n';
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

// Creates the directory if needed; a non-empty directory requires force.
void prepare_out_dir(const fs::path& dir, bool force) {
  if (fs::exists(dir)) {
    if (!fs::is_directory(dir)) {
      throw std::runtime_error("output path is not a directory: " + dir.string());
    }
    if (!fs::is_empty(dir) && !force) {
      throw std::runtime_error("output directory not empty (use --force): " + dir.string());
    }
  } else {
    fs::create_directories(dir);
  }
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir, long long seed,
            bool has_seed, bool render, bool force) {
  Scenario s = load_scenario(scenario_path);
  if (has_seed) s.seed = static_cast<std::uint64_t>(seed);
  prepare_out_dir(out_dir, force);
  log_line("loaded scenario '" + s.name + "' with " + std::to_string(s.tvs.size()) + " TVs");

  SimLog log = run_closed_loop(s);
  log_line("simulated " + std::to_string(log.records.size()) + " steps");

  {
    std::ostringstream traj;
    write_trajectory_csv(traj, log, static_cast<int>(s.tvs.size()));
    write_file(fs::path(out_dir) / "trajectory.csv", traj.str());
  }
  {
    std::ostringstream hulls;
    write_hulls_csv(hulls, log);
    write_file(fs::path(out_dir) / "hulls.csv", hulls.str());
  }
  {
    std::ostringstream times;
    write_plan_times_csv(times, log);
    write_file(fs::path(out_dir) / "plan_times.csv", times.str());
  }
  write_file(fs::path(out_dir) / "metrics.json", metrics_json(log));

  if (render) {
    fs::path rdir = fs::path(out_dir) / "render";
    fs::create_directories(rdir);
    for (size_t k = 0; k < log.records.size(); ++k) {
      char name[32];
      std::snprintf(name, sizeof(name), "snapshot_%04zu.svg", k);
      write_file(rdir / name, render_snapshot_svg(s, log.records[k]));
    }
    log_line("rendered " + std::to_string(log.records.size()) + " snapshots");
  }

  if (log.failed) {
    std::cerr << "run failed: " << log.failure << '\n';
    return 2;
  }
  if (log.collision) {
    std::cerr << "collision with TV " << log.collision_tv << " at t=" << log.collision_t << '\n';
    return 2;
  }
  std::cout << "run complete: " << log.records.size() << " steps, no collision\n";
  return 0;
}

int cmd_bench(const std::vector<int>& tv_counts, int runs, const std::string& out_dir,
              long long seed, double duration, bool force) {
  if (tv_counts.empty()) throw std::runtime_error("--tvs list must not be empty");
  for (int c : tv_counts) {
    if (c < 1) throw std::runtime_error("TV count must be at least 1, got " + std::to_string(c));
  }
  if (runs < 1) throw std::runtime_error("--runs must be at least 1");
  prepare_out_dir(out_dir, force);

  std::vector<BenchResult> results;
  for (int c : tv_counts) {
    log_line("benchmarking " + std::to_string(c) + " TVs, " + std::to_string(runs) + " runs");
    results.push_back(run_bench(c, runs, static_cast<std::uint64_t>(seed), duration));
  }

  std::ostringstream csv;
  csv << "tv_count,runs,iterations,mean_plan_time_s,std_plan_time_s,collisions,failures\n";
  for (const BenchResult& r : results) {
    csv << r.tv_count << ',' << r.runs << ',' << r.iterations << ',' << format_double(r.mean_s)
        << ',' << format_double(r.std_s) << ',' << r.collisions << ',' << r.failures << '\n';
  }
  write_file(fs::path(out_dir) / "bench.csv", csv.str());

  std::printf("%8s %10s %12s %12s\n", "tv_count", "iterations", "mean [ms]", "std [ms]");
  for (const BenchResult& r : results) {
    std::printf("%8d %10d %12.3f %12.3f\n", r.tv_count, r.iterations, 1e3 * r.mean_s,
                1e3 * r.std_s);
  }

  const BenchResult* lo = &results[0];
  const BenchResult* hi = &results[0];
  for (const BenchResult& r : results) {
    if (r.tv_count < lo->tv_count) lo = &r;
    if (r.tv_count > hi->tv_count) hi = &r;
  }
  if (lo != hi && lo->mean_s > 0) {
    double ratio = hi->mean_s / lo->mean_s;
    std::printf("mean(%d TVs) / mean(%d TVs) = %.3f\n", hi->tv_count, lo->tv_count, ratio);
    if (ratio > 1.5) {
      std::cerr << "scaling regression: ratio exceeds 1.5\n";
      return 3;
    }
  }
  return 0;
}

int cmd_grid_dump(const std::string& scenario_path, double t, int h, const std::string& out_dir,
                  bool force) {
  Scenario s = load_scenario(scenario_path);
  if (h < 0 || h > s.cfg.horizon) {
    throw std::runtime_error("--h must lie in [0, " + std::to_string(s.cfg.horizon) + "]");
  }
  if (t < 0 || t > s.duration) {
    throw std::runtime_error("--t must lie in [0, " + std::to_string(s.duration) + "]");
  }
  prepare_out_dir(out_dir, force);

  // Advance the closed loop to the requested time, then rebuild the fused
  // grid for that snapshot.
  Scenario clipped = s;
  clipped.duration = t;
  SimLog log = run_closed_loop(clipped);
  if (log.records.empty()) throw std::runtime_error("simulation produced no records");
  if (log.failed) {
    std::cerr << "run failed before t=" << t << ": " << log.failure << '\n';
    return 2;
  }
  if (log.collision && log.collision_t < t) {
    std::cerr << "collision before t=" << t << '\n';
    return 2;
  }
  const SimRecord& rec = log.records.back();

  std::vector<TvAgent> agents = s.tvs;
  for (size_t k = 0; k < agents.size() && k < rec.tvs.size(); ++k) {
    agents[k].state = rec.tvs[k];
  }
  Pog pog = fused_pog_at(s.cfg, rec.ev, agents, h);
  Bog bog = to_bog(pog, s.cfg.p_th);

  {
    std::ostringstream txt;
    write_pog_text(txt, pog);
    write_file(fs::path(out_dir) / "pog.txt", txt.str());
  }
  {
    std::ostringstream txt;
    write_bog_text(txt, bog);
    write_file(fs::path(out_dir) / "bog.txt", txt.str());
  }
  write_file(fs::path(out_dir) / "pog.svg", render_pog_svg(pog, &bog));
  std::cout << "grid dumped at t=" << rec.t << " h=" << h << " (" << pog.spec.nx << "x"
            << pog.spec.ny << " cells)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid-based stochastic MPC trajectory planner and highway simulator"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir;
  long long seed = 0;
  bool render = false, force = false;

  CLI::App* run = app.add_subcommand("run", "Run a closed-loop scenario and write CSV/JSON logs");
  run->add_option("--scenario", scenario_path, "Scenario TOML file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  CLI::Option* seed_opt = run->add_option("--seed", seed, "Override the scenario seed");
  run->add_flag("--render", render, "Emit per-step SVG snapshots");
  run->add_flag("--force", force, "Write into a non-empty output directory");

  std::vector<int> tv_counts{1, 2, 3};
  int runs = 10;
  double duration = 10.0;
  long long bench_seed = 1;
  CLI::App* bench = app.add_subcommand("bench", "Planning-time scaling benchmark over TV counts");
  bench->add_option("--tvs", tv_counts, "TV counts to benchmark")->delimiter(',');
  bench->add_option("--runs", runs, "Simulations per TV count");
  bench->add_option("--out", out_dir, "Output directory")->required();
  bench->add_option("--seed", bench_seed, "Base seed");
  bench->add_option("--duration", duration, "Simulated seconds per run");
  bench->add_flag("--force", force, "Write into a non-empty output directory");

  double dump_t = 0.0;
  int dump_h = 0;
  CLI::App* dump = app.add_subcommand("grid-dump", "Dump the fused occupancy grid at (t, h)");
  dump->set_help_flag("--help", "Print this help message and exit");
  dump->add_option("--scenario", scenario_path, "Scenario TOML file")->required();
  dump->add_option("--t", dump_t, "Simulated time of the snapshot [s]")->required();
  dump->add_option("--h", dump_h, "Prediction step")->required();
  dump->add_option("--out", out_dir, "Output directory")->required();
  dump->add_flag("--force", force, "Write into a non-empty output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(scenario_path, out_dir, seed, seed_opt->count() > 0, render, force);
    }
    if (bench->parsed()) {
      return cmd_bench(tv_counts, runs, out_dir, bench_seed, duration, force);
    }
    if (dump->parsed()) {
      return cmd_grid_dump(scenario_path, dump_t, dump_h, out_dir, force);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
