#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gridsmpc/pog.hpp"
#include "gridsmpc/simulation.hpp"

namespace gridsmpc {

// All writers print doubles with std::to_chars (shortest round-trip form),
// so identical values serialize to identical bytes and parse back exactly.

// Columns: t,x,y,psi,v,delta_f,a,target_lane,
// tv{k}_x,tv{k}_vx,tv{k}_y,tv{k}_vy per TV, slack_total.
void write_trajectory_csv(std::ostream& out, const SimLog& log, int n_tvs);

// Columns: t,h,v1x,v1y,v2x,v2y,v3x,v3y,v4x,v4y.
void write_hulls_csv(std::ostream& out, const SimLog& log);

// Wall-clock planning phase times; the one CSV that is not byte-reproducible
// across runs. Columns: t,plan_time_total_s,plan_time_grid_s,
// plan_time_hull_s,plan_time_solve_s.
void write_plan_times_csv(std::ostream& out, const SimLog& log);

// Run metrics: collision flag, lane-change completion distances, plan-time
// mean/std, lane-change event list.
std::string metrics_json(const SimLog& log);

// Plain-text matrix, one row per j (top row = largest j), values space
// separated.
void write_pog_text(std::ostream& out, const Pog& pog);
void write_bog_text(std::ostream& out, const Bog& bog);

// Lossless double formatting used by every writer.
std::string format_double(double v);

// Parses a CSV written by the writers above back into cells (header + rows).
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

}  // namespace gridsmpc
