#include "gridsmpc/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gridsmpc {

namespace {

int axis_cell(double value, double origin, double c, double extent, const char* axis) {
  if (!(value >= origin)) {
    throw std::out_of_range(std::string("world_to_cell: ") + axis + " below grid origin");
  }
  if (!(value < origin + extent)) {
    throw std::out_of_range(std::string("world_to_cell: ") + axis + " beyond grid extent");
  }
  int idx = static_cast<int>(std::floor((value - origin) / c));
  return idx;
}

}  // namespace

CellIndex world_to_cell(const GridSpec& g, double x, double y) {
  int i = axis_cell(x, g.origin_x, g.cx, g.nx * g.cx, "x");
  int j = axis_cell(y, g.origin_y, g.cy, g.ny * g.cy, "y");
  // Guard against floor() landing one past the end through rounding.
  if (i >= g.nx) i = g.nx - 1;
  if (j >= g.ny) j = g.ny - 1;
  return {i, j};
}

std::pair<double, double> cell_to_world(const GridSpec& g, CellIndex c) {
  if (!g.in_bounds(c.i, c.j)) {
    throw std::out_of_range("cell_to_world: cell index outside grid");
  }
  return {g.origin_x + (c.i + 0.5) * g.cx, g.origin_y + (c.j + 0.5) * g.cy};
}

namespace {

// Closed-interval overlap of [lo, hi] with the axis cells. A rectangle edge
// sitting exactly on a cell boundary touches the cell on the far side too.
void axis_range(double lo, double hi, double origin, double c, int n, int& first, int& last) {
  double t_lo = (lo - origin) / c;
  double t_hi = (hi - origin) / c;
  first = static_cast<int>(std::floor(t_lo));
  if (static_cast<double>(first) == t_lo) first -= 1;
  last = static_cast<int>(std::floor(t_hi));
  if (first < 0) first = 0;
  if (last > n - 1) last = n - 1;
}

}  // namespace

std::vector<CellIndex> footprint_cells(const GridSpec& g, double rx, double ry,
                                       double length, double width) {
  std::vector<CellIndex> cells;
  int i0, i1, j0, j1;
  axis_range(rx - length / 2, rx + length / 2, g.origin_x, g.cx, g.nx, i0, i1);
  axis_range(ry - width / 2, ry + width / 2, g.origin_y, g.cy, g.ny, j0, j1);
  for (int i = i0; i <= i1; ++i) {
    for (int j = j0; j <= j1; ++j) {
      cells.push_back({i, j});
    }
  }
  return cells;
}

GridSpec make_planning_grid(double ev_x, double road_y0, double road_width,
                            double cx, double cy, double behind,
                            double detection_range) {
  GridSpec g;
  g.cx = cx;
  g.cy = cy;
  g.origin_x = std::floor((ev_x - behind) / cx) * cx;
  g.origin_y = road_y0;
  double far_x = ev_x + detection_range;
  g.nx = static_cast<int>(std::ceil((far_x - g.origin_x) / cx - 1e-9));
  g.ny = static_cast<int>(std::lround(road_width / cy));
  return g;
}

}  // namespace gridsmpc
