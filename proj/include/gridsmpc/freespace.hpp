#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

#include "gridsmpc/ev_model.hpp"
#include "gridsmpc/grid.hpp"
#include "gridsmpc/pog.hpp"

namespace gridsmpc {

// Supercover line: every cell whose closed square the segment between the two
// cell centers intersects, in traversal order. Both endpoints included. When
// the segment passes exactly through a cell corner, all four cells sharing
// that corner are included. Exact integer arithmetic throughout.
std::vector<CellIndex> supercover_line(CellIndex a, CellIndex b);

// True when every supercover cell between a and b is unoccupied.
bool free_path(const Bog& bog, CellIndex a, CellIndex b);

// Convex free-space quadrilateral, counterclockwise:
// v[0] = expanded right rear corner (m2), v[1] = lower range-edge cell (e2),
// v[2] = upper range-edge cell (e1), v[3] = expanded left rear corner (m1).
struct HullVertices {
  std::array<Eigen::Vector2d, 4> v;
};

// Halfspace form over state [x, y, psi, v]: a * xi <= b, psi/v columns zero,
// rows normalized over (x, y). One row per non-degenerate polygon edge.
struct Polytope {
  Eigen::Matrix<double, Eigen::Dynamic, 4> a;
  Eigen::VectorXd b;
};

// Largest admissible quadrilateral ahead of the EV on the binary grid:
// range-column cells with free sight lines to both rear corners pick the
// far edge; the rear corners widen outward while sight lines to that edge
// survive. When the range column splits into several free runs, the run
// holding the free cell laterally nearest ref_y (the lane the planner is
// steering toward) is taken, so every prediction step carves its corridor
// around the same goal. Returns nullopt when no free range cell connects
// (hull not found) or when the EV center/rear-corner cells are out of grid
// or occupied.
std::optional<HullVertices> admissible_safe_space(const Bog& bog, const EvState& ev,
                                                  double ev_length, double ev_width,
                                                  double ref_y);

// Outward halfspaces of a counterclockwise convex polygon: normal of each
// edge is the edge direction rotated -90 deg, normalized. Duplicate rows from
// collinear edges collapse; throws std::domain_error when fewer than three
// distinct rows remain (degenerate hull).
Polytope vertices_to_halfspaces(const HullVertices& hull);

}  // namespace gridsmpc
