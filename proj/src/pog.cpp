#include "gridsmpc/pog.hpp"

#include <cmath>
#include <stdexcept>

namespace gridsmpc {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr double kSupportSigmas = 6.5;

struct Gaussian2d {
  double det;
  double i00, i01, i11;  // inverse entries
};

Gaussian2d validate(const Eigen::Matrix2d& sigma) {
  if (std::abs(sigma(0, 1) - sigma(1, 0)) > 1e-9 * std::max(1.0, std::abs(sigma(0, 1)))) {
    throw std::domain_error("gaussian_density: covariance not symmetric");
  }
  double det = sigma(0, 0) * sigma(1, 1) - sigma(0, 1) * sigma(1, 0);
  if (!(det > 1e-12) || !(sigma(0, 0) > 0) || !(sigma(1, 1) > 0)) {
    throw std::domain_error("gaussian_density: degenerate covariance");
  }
  return {det, sigma(1, 1) / det, -sigma(0, 1) / det, sigma(0, 0) / det};
}

double density_at(const Gaussian2d& g, double dx, double dy) {
  double quad = dx * dx * g.i00 + 2 * dx * dy * g.i01 + dy * dy * g.i11;
  return std::exp(-0.5 * quad) / (kTwoPi * std::sqrt(g.det));
}

}  // namespace

double gaussian_density(const Eigen::Vector2d& mean, const Eigen::Matrix2d& sigma,
                        const Eigen::Vector2d& point) {
  Gaussian2d g = validate(sigma);
  return density_at(g, point.x() - mean.x(), point.y() - mean.y());
}

Eigen::ArrayXXd sample_density_field(const GridSpec& spec, const Eigen::Vector2d& mean,
                                     const Eigen::Matrix2d& sigma) {
  Gaussian2d g = validate(sigma);
  Eigen::ArrayXXd field = Eigen::ArrayXXd::Zero(spec.nx, spec.ny);
  double hx = kSupportSigmas * std::sqrt(sigma(0, 0));
  double hy = kSupportSigmas * std::sqrt(sigma(1, 1));
  int i0 = static_cast<int>(std::ceil((mean.x() - hx - spec.origin_x) / spec.cx - 0.5));
  int i1 = static_cast<int>(std::floor((mean.x() + hx - spec.origin_x) / spec.cx - 0.5));
  int j0 = static_cast<int>(std::ceil((mean.y() - hy - spec.origin_y) / spec.cy - 0.5));
  int j1 = static_cast<int>(std::floor((mean.y() + hy - spec.origin_y) / spec.cy - 0.5));
  i0 = std::max(i0, 0);
  j0 = std::max(j0, 0);
  i1 = std::min(i1, spec.nx - 1);
  j1 = std::min(j1, spec.ny - 1);
  for (int i = i0; i <= i1; ++i) {
    double cx_w = spec.origin_x + (i + 0.5) * spec.cx - mean.x();
    for (int j = j0; j <= j1; ++j) {
      double cy_w = spec.origin_y + (j + 0.5) * spec.cy - mean.y();
      field(i, j) = density_at(g, cx_w, cy_w);
    }
  }
  return field;
}

Eigen::ArrayXXd dilate_max(const Eigen::ArrayXXd& field, int di_max, int dj_max) {
  const int nx = static_cast<int>(field.rows());
  const int ny = static_cast<int>(field.cols());
  Eigen::ArrayXXd out = Eigen::ArrayXXd::Zero(nx, ny);
  // Output can only be nonzero within the window reach of nonzero input;
  // everything outside keeps the exact zero of an all-zero window.
  int i0 = nx, i1 = -1, j0 = ny, j1 = -1;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      if (field(i, j) != 0.0) {
        i0 = std::min(i0, i);
        i1 = std::max(i1, i);
        j0 = std::min(j0, j);
        j1 = std::max(j1, j);
      }
    }
  }
  if (i1 < 0) return out;
  i0 = std::max(i0 - di_max, 0);
  i1 = std::min(i1 + di_max, nx - 1);
  j0 = std::max(j0 - dj_max, 0);
  j1 = std::min(j1 + dj_max, ny - 1);
  // Rectangular max windows are separable: rows first, then columns.
  Eigen::ArrayXXd tmp = Eigen::ArrayXXd::Zero(nx, ny);
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      int lo = std::max(i - di_max, 0);
      int hi = std::min(i + di_max, nx - 1);
      double m = field(lo, j);
      for (int k = lo + 1; k <= hi; ++k) m = std::max(m, field(k, j));
      tmp(i, j) = m;
    }
  }
  for (int i = i0; i <= i1; ++i) {
    for (int j = j0; j <= j1; ++j) {
      int lo = std::max(j - dj_max, 0);
      int hi = std::min(j + dj_max, ny - 1);
      double m = tmp(i, lo);
      for (int k = lo + 1; k <= hi; ++k) m = std::max(m, tmp(i, k));
      out(i, j) = m;
    }
  }
  return out;
}

Pog build_tv_pog(const GridSpec& spec, const Eigen::Vector2d& mean,
                 const Eigen::Matrix2d& sigma, double tv_length, double tv_width) {
  // Zero covariance (an exactly known position, as at prediction step 0)
  // must still yield a valid density; floor each variance at (1 cm)^2.
  Eigen::Matrix2d floored = sigma;
  floored(0, 0) = std::max(floored(0, 0), 1e-4);
  floored(1, 1) = std::max(floored(1, 1), 1e-4);
  Eigen::ArrayXXd field = sample_density_field(spec, mean, floored);
  int di_max = static_cast<int>(std::floor(tv_length / 2 / spec.cx + 1e-9));
  int dj_max = static_cast<int>(std::floor(tv_width / 2 / spec.cy + 1e-9));
  return {spec, dilate_max(field, di_max, dj_max)};
}

Pog combine_pogs(const std::vector<std::pair<double, const Pog*>>& parts) {
  if (parts.empty()) {
    throw std::invalid_argument("combine_pogs: no parts");
  }
  const GridSpec& ref = parts.front().second->spec;
  Pog out{ref, Eigen::ArrayXXd::Zero(ref.nx, ref.ny)};
  for (const auto& [weight, pog] : parts) {
    const GridSpec& s = pog->spec;
    if (s.nx != ref.nx || s.ny != ref.ny || s.cx != ref.cx || s.cy != ref.cy ||
        s.origin_x != ref.origin_x || s.origin_y != ref.origin_y) {
      throw std::invalid_argument("combine_pogs: grid specs differ");
    }
    out.p += weight * pog->p;
  }
  return out;
}

Bog to_bog(const Pog& pog, double p_th) {
  if (!(p_th > 0)) {
    throw std::invalid_argument("to_bog: p_th must be positive");
  }
  Bog bog;
  bog.spec = pog.spec;
  bog.b = (pog.p >= p_th).cast<std::uint8_t>();
  return bog;
}

}  // namespace gridsmpc
