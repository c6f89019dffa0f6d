#pragma once

#include <utility>
#include <vector>

namespace gridsmpc {

// Uniform 2D grid over road coordinates. Cell (i, j) covers the closed
// square [origin_x + i*cx, origin_x + (i+1)*cx] x [origin_y + j*cy, origin_y + (j+1)*cy].
struct GridSpec {
  double origin_x = 0.0;
  double origin_y = 0.0;
  double cx = 0.5;   // longitudinal cell length [m]
  double cy = 0.25;  // lateral cell length [m]
  int nx = 0;
  int ny = 0;

  double max_x() const { return origin_x + nx * cx; }
  double max_y() const { return origin_y + ny * cy; }
  bool in_bounds(int i, int j) const { return i >= 0 && i < nx && j >= 0 && j < ny; }
};

struct CellIndex {
  int i = 0;
  int j = 0;
  bool operator==(const CellIndex& o) const { return i == o.i && j == o.j; }
  bool operator<(const CellIndex& o) const { return i != o.i ? i < o.i : j < o.j; }
};

// Cell containing the world point. Throws std::out_of_range naming the
// offending axis when the point lies outside [origin, origin + n*c).
CellIndex world_to_cell(const GridSpec& g, double x, double y);

// Center of a cell. Throws std::out_of_range for indices outside the grid.
std::pair<double, double> cell_to_world(const GridSpec& g, CellIndex c);

// All cells whose closed square intersects the closed axis-aligned rectangle
// centered at (rx, ry) with the given length (x) and width (y). Cells outside
// the grid are dropped silently. Result is sorted by (i, j), no duplicates.
std::vector<CellIndex> footprint_cells(const GridSpec& g, double rx, double ry,
                                       double length, double width);

// Planning grid for one cycle: spans the road width laterally and
// [ev_x - behind, ev_x + detection_range] longitudinally, with the origin
// snapped down to a multiple of cx.
GridSpec make_planning_grid(double ev_x, double road_y0, double road_width,
                            double cx, double cy, double behind,
                            double detection_range);

}  // namespace gridsmpc
