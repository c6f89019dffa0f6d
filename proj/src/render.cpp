#include "gridsmpc/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gridsmpc {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(2);
  s << std::fixed << v;
  return s.str();
}

// Maps road coordinates to pixels: x grows right, y grows up.
struct View {
  double x0, y1, scale;
  double px(double x) const { return (x - x0) * scale; }
  double py(double y) const { return (y1 - y) * scale; }
};

void rotated_rect(std::ostringstream& out, const View& vw, double cx, double cy,
                  double length, double width, double psi, const char* fill) {
  double c = std::cos(psi), s = std::sin(psi);
  double hx = length / 2, hy = width / 2;
  const double corners[4][2] = {{hx, hy}, {hx, -hy}, {-hx, -hy}, {-hx, hy}};
  out << "<polygon points=\"";
  for (int k = 0; k < 4; ++k) {
    double wx = cx + c * corners[k][0] - s * corners[k][1];
    double wy = cy + s * corners[k][0] + c * corners[k][1];
    if (k) out << ' ';
    out << fmt(vw.px(wx)) << ',' << fmt(vw.py(wy));
  }
  out << "\" fill=\"" << fill << "\" stroke=\"#222\" stroke-width=\"1\"/>\n";
}

}  // namespace

std::string render_snapshot_svg(const Scenario& s, const SimRecord& rec) {
  const PlannerConfig& cfg = s.cfg;
  double view_x0 = rec.ev.x - cfg.grid_behind - 10.0;
  double view_x1 = rec.ev.x + cfg.detection_range + 10.0;
  double road_y0 = cfg.road_y0;
  double road_y1 = cfg.road_y0 + cfg.road_width();
  double view_y0 = road_y0 - 2.0;
  double view_y1 = road_y1 + 2.0;
  View vw{view_x0, view_y1, 8.0};
  int w = static_cast<int>(std::ceil((view_x1 - view_x0) * vw.scale));
  int h = static_cast<int>(std::ceil((view_y1 - view_y0) * vw.scale));

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#e8f0e8\"/>\n";
  out << "<rect x=\"0\" y=\"" << fmt(vw.py(road_y1)) << "\" width=\"" << w << "\" height=\""
      << fmt((road_y1 - road_y0) * vw.scale) << "\" fill=\"#666\"/>\n";
  for (int lane = 0; lane <= cfg.lanes; ++lane) {
    double y = road_y0 + lane * cfg.lane_width;
    bool edge = lane == 0 || lane == cfg.lanes;
    out << "<line x1=\"0\" y1=\"" << fmt(vw.py(y)) << "\" x2=\"" << w << "\" y2=\""
        << fmt(vw.py(y)) << "\" stroke=\"#fff\" stroke-width=\"2\""
        << (edge ? "" : " stroke-dasharray=\"14 10\"") << "/>\n";
  }
  if (!rec.hulls.empty()) {
    out << "<polygon points=\"";
    for (size_t k = 0; k < rec.hulls[0].v.size(); ++k) {
      if (k) out << ' ';
      out << fmt(vw.px(rec.hulls[0].v[k].x())) << ',' << fmt(vw.py(rec.hulls[0].v[k].y()));
    }
    out << "\" fill=\"#4caf5055\" stroke=\"#2e7d32\" stroke-width=\"1.5\"/>\n";
  }
  for (const TvState& tv : rec.tvs) {
    rotated_rect(out, vw, tv.x, tv.y, cfg.vehicle_length, cfg.vehicle_width, 0.0, "#d9534f");
  }
  rotated_rect(out, vw, rec.ev.x, rec.ev.y, s.ev_params.length, s.ev_params.width, rec.ev.psi,
               "#337ab7");
  out << "<text x=\"10\" y=\"20\" font-family=\"monospace\" font-size=\"14\" fill=\"#111\">t="
      << fmt(rec.t) << "s v=" << fmt(rec.ev.v) << "m/s target_y=" << fmt(rec.target_lane)
      << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string render_pog_svg(const Pog& pog, const Bog* bog) {
  const GridSpec& g = pog.spec;
  double sx = 12.0 * g.cx;  // 12 px per meter keeps the cell aspect ratio
  double sy = 12.0 * g.cy;
  int w = static_cast<int>(std::ceil(g.nx * sx));
  int h = static_cast<int>(std::ceil(g.ny * sy));
  double peak = pog.p.maxCoeff();

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      double p = pog.p(i, j);
      if (p <= 0.0) continue;
      int shade = 255 - static_cast<int>(std::lround(235.0 * std::min(1.0, p / peak)));
      out << "<rect x=\"" << fmt(i * sx) << "\" y=\"" << fmt((g.ny - 1 - j) * sy)
          << "\" width=\"" << fmt(sx) << "\" height=\"" << fmt(sy) << "\" fill=\"rgb(" << shade
          << ',' << shade << ',' << shade << ")\"/>\n";
    }
  }
  if (bog) {
    for (int i = 0; i < g.nx; ++i) {
      for (int j = 0; j < g.ny; ++j) {
        if (!bog->occupied(i, j)) continue;
        out << "<rect x=\"" << fmt(i * sx) << "\" y=\"" << fmt((g.ny - 1 - j) * sy)
            << "\" width=\"" << fmt(sx) << "\" height=\"" << fmt(sy)
            << "\" fill=\"none\" stroke=\"#d32f2f\" stroke-width=\"0.6\"/>\n";
      }
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace gridsmpc
