#pragma once

#include <string>

#include "gridsmpc/pog.hpp"
#include "gridsmpc/simulation.hpp"

namespace gridsmpc {

// Top-down SVG of one simulation record: road, lane markings, EV and TV
// rectangles, first-step hull polygon.
std::string render_snapshot_svg(const Scenario& s, const SimRecord& rec);

// Grayscale heat map of a POG (optionally overlaying BOG cell outlines).
std::string render_pog_svg(const Pog& pog, const Bog* bog);

}  // namespace gridsmpc
