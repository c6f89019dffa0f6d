#include "gridsmpc/freespace.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>

namespace gridsmpc {

std::vector<CellIndex> supercover_line(CellIndex a, CellIndex b) {
  std::vector<CellIndex> cells;
  if (a.i == b.i && a.j == b.j) {
    cells.push_back(a);
    return cells;
  }
  if (a.i == b.i) {
    int step = b.j > a.j ? 1 : -1;
    for (int j = a.j;; j += step) {
      cells.push_back({a.i, j});
      if (j == b.j) break;
    }
    return cells;
  }
  if (a.j == b.j) {
    int step = b.i > a.i ? 1 : -1;
    for (int i = a.i;; i += step) {
      cells.push_back({i, a.j});
      if (i == b.i) break;
    }
    return cells;
  }
  // Doubled integer lattice: cell (i, j) spans [2i, 2i+2] x [2j, 2j+2] and
  // its center is the odd point (2i+1, 2j+1), so every boundary crossing is
  // an exact rational and corner hits are exact equalities.
  const std::int64_t px = 2 * a.i + 1;
  const std::int64_t py = 2 * a.j + 1;
  const std::int64_t dx = 2 * (static_cast<std::int64_t>(b.i) - a.i);
  const std::int64_t dy = 2 * (static_cast<std::int64_t>(b.j) - a.j);
  const int sx = dx > 0 ? 1 : -1;
  const int sy = dy > 0 ? 1 : -1;
  const std::int64_t adx = std::llabs(dx);
  const std::int64_t ady = std::llabs(dy);
  int ci = a.i, cj = a.j;
  cells.push_back({ci, cj});
  while (ci != b.i || cj != b.j) {
    // Crossing parameters of the next vertical/horizontal boundary, as
    // positive fractions num/denominator with shared orientation.
    std::int64_t bx = 2 * (static_cast<std::int64_t>(ci) + (sx > 0 ? 1 : 0));
    std::int64_t by = 2 * (static_cast<std::int64_t>(cj) + (sy > 0 ? 1 : 0));
    std::int64_t num_x = std::llabs(bx - px);
    std::int64_t num_y = std::llabs(by - py);
    std::int64_t cmp = num_x * ady - num_y * adx;  // t_x <=> t_y
    if (cmp < 0) {
      ci += sx;
    } else if (cmp > 0) {
      cj += sy;
    } else {
      // The segment passes exactly through the lattice corner shared by four
      // cells; all four belong to the supercover.
      cells.push_back({ci + sx, cj});
      cells.push_back({ci, cj + sy});
      ci += sx;
      cj += sy;
    }
    cells.push_back({ci, cj});
  }
  return cells;
}

bool free_path(const Bog& bog, CellIndex a, CellIndex b) {
  for (const CellIndex& c : supercover_line(a, b)) {
    if (!bog.spec.in_bounds(c.i, c.j) || bog.occupied(c.i, c.j)) {
      return false;
    }
  }
  return true;
}

namespace {

std::optional<CellIndex> cell_of(const GridSpec& g, double x, double y) {
  if (!(x >= g.origin_x && x < g.max_x() && y >= g.origin_y && y < g.max_y())) {
    return std::nullopt;
  }
  return world_to_cell(g, x, y);
}

}  // namespace

std::optional<HullVertices> admissible_safe_space(const Bog& bog, const EvState& ev,
                                                  double ev_length, double ev_width,
                                                  double ref_y) {
  const GridSpec& g = bog.spec;
  const double c = std::cos(ev.psi), s = std::sin(ev.psi);
  const double rx = ev.x - ev_length / 2 * c;
  const double ry = ev.y - ev_length / 2 * s;
  auto center = cell_of(g, ev.x, ev.y);
  auto left = cell_of(g, rx - ev_width / 2 * s, ry + ev_width / 2 * c);
  auto right = cell_of(g, rx + ev_width / 2 * s, ry - ev_width / 2 * c);
  if (!center || !left || !right) return std::nullopt;
  if (bog.occupied(center->i, center->j) || bog.occupied(left->i, left->j) ||
      bog.occupied(right->i, right->j)) {
    return std::nullopt;
  }

  // Range-column cells with free sight lines to both rear corners.
  const int far_i = g.nx - 1;
  std::vector<int> free_j;
  for (int j = 0; j < g.ny; ++j) {
    CellIndex cand{far_i, j};
    if (bog.occupied(far_i, j)) continue;
    if (free_path(bog, cand, *left) && free_path(bog, cand, *right)) {
      free_j.push_back(j);
    }
  }
  if (free_j.empty()) return std::nullopt;

  // Contiguous run containing the free cell laterally nearest the reference;
  // ties resolve toward larger j.
  int ref_j = static_cast<int>(std::floor((ref_y - g.origin_y) / g.cy));
  ref_j = std::max(0, std::min(g.ny - 1, ref_j));
  int best = free_j.front();
  for (int j : free_j) {
    int d = std::abs(j - ref_j);
    int bd = std::abs(best - ref_j);
    if (d < bd || (d == bd && j > best)) best = j;
  }
  int e_lo = best, e_hi = best;
  {
    size_t pos = 0;
    while (free_j[pos] != best) ++pos;
    for (size_t k = pos; k > 0 && free_j[k - 1] == free_j[k] - 1; --k) e_lo = free_j[k - 1];
    for (size_t k = pos; k + 1 < free_j.size() && free_j[k + 1] == free_j[k] + 1; ++k)
      e_hi = free_j[k + 1];
  }
  const CellIndex e1{far_i, e_hi};  // upper range edge
  const CellIndex e2{far_i, e_lo};  // lower range edge

  // Widen the rear corners outward while sight lines to both edges survive.
  CellIndex m1 = *left;
  while (m1.j + 1 < g.ny && !bog.occupied(m1.i, m1.j + 1) &&
         free_path(bog, {m1.i, m1.j + 1}, e1) && free_path(bog, {m1.i, m1.j + 1}, e2)) {
    m1.j += 1;
  }
  CellIndex m2 = *right;
  while (m2.j - 1 >= 0 && !bog.occupied(m2.i, m2.j - 1) &&
         free_path(bog, {m2.i, m2.j - 1}, e1) && free_path(bog, {m2.i, m2.j - 1}, e2)) {
    m2.j -= 1;
  }

  auto world = [&g](CellIndex cidx) {
    auto [wx, wy] = cell_to_world(g, cidx);
    return Eigen::Vector2d(wx, wy);
  };
  HullVertices hull;
  hull.v = {world(m2), world(e2), world(e1), world(m1)};
  return hull;
}

Polytope vertices_to_halfspaces(const HullVertices& hull) {
  std::vector<Eigen::Vector2d> normals;
  std::vector<double> offsets;
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector2d& v0 = hull.v[k];
    const Eigen::Vector2d& v1 = hull.v[(k + 1) % 4];
    Eigen::Vector2d e = v1 - v0;
    double len = e.norm();
    if (len < 1e-12) continue;  // coincident vertices
    Eigen::Vector2d n(e.y() / len, -e.x() / len);
    double off = n.dot(v0);
    bool dup = false;
    for (size_t r = 0; r < normals.size(); ++r) {
      if ((normals[r] - n).norm() < 1e-9 && std::abs(offsets[r] - off) < 1e-9) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      normals.push_back(n);
      offsets.push_back(off);
    }
  }
  if (normals.size() < 3) {
    throw std::domain_error("vertices_to_halfspaces: degenerate hull");
  }
  Polytope p;
  p.a.resize(static_cast<int>(normals.size()), 4);
  p.b.resize(static_cast<int>(normals.size()));
  for (size_t r = 0; r < normals.size(); ++r) {
    p.a.row(static_cast<int>(r)) << normals[r].x(), normals[r].y(), 0.0, 0.0;
    p.b[static_cast<int>(r)] = offsets[r];
  }
  return p;
}

}  // namespace gridsmpc
