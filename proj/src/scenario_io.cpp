#include "gridsmpc/scenario_io.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gridsmpc/toml_lite.hpp"

namespace gridsmpc {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("scenario error: " + what);
}

void apply_planner_overrides(PlannerConfig& cfg, const toml_lite::Table& t) {
  cfg.dt = t.get_double_or("dt", cfg.dt);
  cfg.horizon = static_cast<int>(t.get_int_or("horizon", cfg.horizon));
  cfg.p_th = t.get_double_or("p_th", cfg.p_th);
  cfg.v_ref = t.get_double_or("v_ref", cfg.v_ref);
  cfg.detection_range = t.get_double_or("detection_range", cfg.detection_range);
  cfg.grid_behind = t.get_double_or("grid_behind", cfg.grid_behind);
  cfg.cell_cx = t.get_double_or("cell_cx", cfg.cell_cx);
  cfg.cell_cy = t.get_double_or("cell_cy", cfg.cell_cy);
  cfg.slack_weight = t.get_double_or("slack_weight", cfg.slack_weight);
  cfg.max_iters = static_cast<int>(t.get_int_or("max_iters", cfg.max_iters));
  cfg.solver_tol = t.get_double_or("solver_tol", cfg.solver_tol);
  if (cfg.dt <= 0) fail("[planner] dt must be positive");
  if (cfg.horizon < 1) fail("[planner] horizon must be at least 1");
  if (cfg.p_th <= 0 || cfg.p_th >= 1) fail("[planner] p_th must lie in (0, 1)");
  if (cfg.detection_range <= 0) fail("[planner] detection_range must be positive");
}

}  // namespace

Scenario load_scenario(const std::string& path) {
  toml_lite::Document doc = toml_lite::parse_file(path);

  std::string schema = doc.root.get_string_or("schema", "");
  if (schema != kScenarioSchema) {
    fail("unsupported schema '" + schema + "', expected '" + std::string(kScenarioSchema) + "'");
  }

  Scenario s;
  s.name = doc.root.get_string_or("name", "scenario");

  s.cfg = itsc2020_preset();
  if (doc.tables.count("road")) {
    const auto& road = doc.tables.at("road");
    s.cfg.lanes = static_cast<int>(road.get_int_or("lanes", s.cfg.lanes));
    s.cfg.lane_width = road.get_double_or("lane_width", s.cfg.lane_width);
    s.cfg.road_y0 = road.get_double_or("y0", s.cfg.road_y0);
    if (s.cfg.lanes < 1) fail("[road] lanes must be at least 1");
    if (s.cfg.lane_width <= 0) fail("[road] lane_width must be positive");
  }
  if (doc.tables.count("planner")) {
    const auto& planner = doc.tables.at("planner");
    std::string preset = planner.get_string_or("preset", "itsc2020");
    if (preset != "itsc2020") fail("[planner] unknown preset '" + preset + "'");
    apply_planner_overrides(s.cfg, planner);
  }
  s.cfg.y_min = s.cfg.road_y0 + 0.5 * s.cfg.vehicle_width;
  s.cfg.y_max = s.cfg.road_y0 + s.cfg.road_width() - 0.5 * s.cfg.vehicle_width;

  if (doc.tables.count("sim")) {
    const auto& sim = doc.tables.at("sim");
    s.duration = sim.get_double_or("duration", s.duration);
    s.seed = static_cast<std::uint64_t>(sim.get_int_or("seed", static_cast<std::int64_t>(s.seed)));
    s.noise_on = sim.get_bool_or("noise", s.noise_on);
    if (sim.has("initial_target_lane")) {
      s.initial_target_lane = static_cast<int>(sim.get_int("initial_target_lane"));
      if (s.initial_target_lane < 0 || s.initial_target_lane >= s.cfg.lanes) {
        fail("[sim] initial_target_lane out of range");
      }
    }
    if (s.duration <= 0) fail("[sim] duration must be positive");
  }

  if (!doc.tables.count("ev")) fail("missing [ev] table");
  const auto& ev = doc.tables.at("ev");
  s.ev_init.x = ev.get_double("x");
  s.ev_init.y = ev.get_double("y");
  s.ev_init.psi = ev.get_double_or("psi", 0.0);
  s.ev_init.v = ev.get_double("v");
  if (s.ev_init.v < 0) fail("[ev] v must be nonnegative");
  if (s.ev_init.y < s.cfg.road_y0 || s.ev_init.y > s.cfg.road_y0 + s.cfg.road_width()) {
    fail("[ev] y is outside the road");
  }

  auto it = doc.table_arrays.find("tv");
  if (it != doc.table_arrays.end()) {
    for (size_t n = 0; n < it->second.size(); ++n) {
      const auto& t = it->second[n];
      std::string tag = "[[tv]] #" + std::to_string(n + 1);
      TvAgent agent;
      agent.state.x = t.get_double("x");
      agent.state.vx = t.get_double("vx");
      agent.state.y = t.get_double("y");
      agent.state.vy = t.get_double_or("vy", 0.0);
      agent.model = make_tv_model(s.cfg.dt);

      double p_lk = t.get_double_or("lk_probability", 1.0);
      if (p_lk < 0 || p_lk > 1) fail(tag + ": lk_probability must lie in [0, 1]");
      double cruise = t.get_double_or("cruise_speed", agent.state.vx);

      double y_rel = agent.state.y - s.cfg.road_y0;
      int own_lane = static_cast<int>(std::floor(y_rel / s.cfg.lane_width));
      own_lane = std::max(0, std::min(s.cfg.lanes - 1, own_lane));

      if (p_lk > 0) {
        agent.hypotheses.push_back({ManeuverKind::kLaneKeep, p_lk,
                                    s.cfg.lane_center(own_lane), cruise});
      }
      double p_lc = 1.0 - p_lk;
      if (p_lc > 0) {
        if (!t.has("lc_target_lane")) fail(tag + ": lc_target_lane required when lk_probability < 1");
        int lane = static_cast<int>(t.get_int("lc_target_lane"));
        if (lane < 0 || lane >= s.cfg.lanes) fail(tag + ": lc_target_lane out of range");
        agent.hypotheses.push_back({ManeuverKind::kLaneChange, p_lc,
                                    s.cfg.lane_center(lane), cruise});
      }
      if (agent.hypotheses.empty()) fail(tag + ": no maneuver hypothesis has positive probability");
      s.tvs.push_back(std::move(agent));
    }
  }
  return s;
}

}  // namespace gridsmpc
