#include "gridsmpc/sim_csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gridsmpc {

std::string format_double(double v) {
  if (v == 0.0) return "0";  // normalizes -0
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double: to_chars failed");
  return std::string(buf, p);
}

void write_trajectory_csv(std::ostream& out, const SimLog& log, int n_tvs) {
  out << "t,x,y,psi,v,delta_f,a,target_lane";
  for (int k = 0; k < n_tvs; ++k) {
    out << ",tv" << k << "_x,tv" << k << "_vx,tv" << k << "_y,tv" << k << "_vy";
  }
  out << ",slack_total\n";
  for (const SimRecord& r : log.records) {
    out << format_double(r.t) << ',' << format_double(r.ev.x) << ',' << format_double(r.ev.y)
        << ',' << format_double(r.ev.psi) << ',' << format_double(r.ev.v) << ','
        << format_double(r.input.delta_f) << ',' << format_double(r.input.a) << ','
        << format_double(r.target_lane);
    for (int k = 0; k < n_tvs; ++k) {
      const TvState& tv = r.tvs.at(k);
      out << ',' << format_double(tv.x) << ',' << format_double(tv.vx) << ','
          << format_double(tv.y) << ',' << format_double(tv.vy);
    }
    out << ',' << format_double(r.slack_total) << '\n';
  }
}

void write_hulls_csv(std::ostream& out, const SimLog& log) {
  out << "t,h";
  for (int k = 1; k <= 4; ++k) out << ",v" << k << "x,v" << k << "y";
  out << '\n';
  for (const SimRecord& r : log.records) {
    for (size_t n = 0; n < r.hulls.size(); ++n) {
      out << format_double(r.t) << ',' << (n + 1);
      for (const Eigen::Vector2d& v : r.hulls[n].v) {
        out << ',' << format_double(v.x()) << ',' << format_double(v.y());
      }
      out << '\n';
    }
  }
}

void write_plan_times_csv(std::ostream& out, const SimLog& log) {
  out << "t,plan_time_total_s,plan_time_grid_s,plan_time_hull_s,plan_time_solve_s\n";
  for (const SimRecord& r : log.records) {
    out << format_double(r.t) << ',' << format_double(r.timings.total_s) << ','
        << format_double(r.timings.grid_s) << ',' << format_double(r.timings.hull_s) << ','
        << format_double(r.timings.solve_s) << '\n';
  }
}

std::string metrics_json(const SimLog& log) {
  nlohmann::ordered_json j;
  j["steps"] = log.records.size();
  j["collision"] = log.collision;
  j["collision_tv"] = log.collision_tv;
  j["collision_t"] = log.collision_t;
  j["failed"] = log.failed;
  j["failure"] = log.failure;

  std::vector<double> distances;
  nlohmann::ordered_json events = nlohmann::ordered_json::array();
  for (const LaneChangeEvent& e : log.lane_changes) {
    nlohmann::ordered_json je;
    je["trigger_t"] = e.trigger_t;
    je["completion_t"] = e.completion_t;
    je["from_center"] = e.from_center;
    je["to_center"] = e.to_center;
    je["rule"] = e.rule;
    je["trigger_tv"] = e.trigger_tv;
    je["completed"] = e.completed;
    je["dx_at_completion"] = e.dx_at_completion;
    events.push_back(je);
    if (e.completed) distances.push_back(e.dx_at_completion);
  }
  j["lane_changes"] = events;
  j["lc_completion_distances"] = distances;

  double sum = 0.0;
  for (const SimRecord& r : log.records) sum += r.timings.total_s;
  size_t n = log.records.size();
  double mean = n ? sum / static_cast<double>(n) : 0.0;
  double var = 0.0;
  for (const SimRecord& r : log.records) {
    double d = r.timings.total_s - mean;
    var += d * d;
  }
  var = n ? var / static_cast<double>(n) : 0.0;
  j["mean_plan_time_s"] = mean;
  j["std_plan_time_s"] = std::sqrt(var);
  return j.dump(2) + "\n";
}

void write_pog_text(std::ostream& out, const Pog& pog) {
  for (int j = static_cast<int>(pog.spec.ny) - 1; j >= 0; --j) {
    for (int i = 0; i < static_cast<int>(pog.spec.nx); ++i) {
      if (i) out << ' ';
      out << format_double(pog.p(i, j));
    }
    out << '\n';
  }
}

void write_bog_text(std::ostream& out, const Bog& bog) {
  for (int j = static_cast<int>(bog.spec.ny) - 1; j >= 0; --j) {
    for (int i = 0; i < static_cast<int>(bog.spec.nx); ++i) {
      if (i) out << ' ';
      out << static_cast<int>(bog.b(i, j));
    }
    out << '\n';
  }
}

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace gridsmpc
