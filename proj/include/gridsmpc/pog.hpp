#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gridsmpc/grid.hpp"

namespace gridsmpc {

// Probabilistic occupancy grid. p(i, j) >= 0; values are densities scaled by
// maneuver weights, not normalized probabilities.
struct Pog {
  GridSpec spec;
  Eigen::ArrayXXd p;  // nx rows, ny cols
};

// Binary occupancy grid. b(i, j) is 1 where occupied.
struct Bog {
  GridSpec spec;
  Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> b;

  bool occupied(int i, int j) const { return b(i, j) != 0; }
};

// Bivariate normal density at a point. sigma must be symmetric positive
// definite; throws std::domain_error when det(sigma) <= 1e-12 (degenerate).
double gaussian_density(const Eigen::Vector2d& mean, const Eigen::Matrix2d& sigma,
                        const Eigen::Vector2d& point);

// Density sampled at every cell center. Cells farther than 6.5 marginal
// standard deviations from the mean hold exact zero (the true value there
// is below 1e-8 of the peak).
Eigen::ArrayXXd sample_density_field(const GridSpec& g, const Eigen::Vector2d& mean,
                                     const Eigen::Matrix2d& sigma);

// Morphological max dilation with a (2*di_max+1) x (2*dj_max+1) window.
Eigen::ArrayXXd dilate_max(const Eigen::ArrayXXd& field, int di_max, int dj_max);

// Occupancy field of one TV hypothesis: density sampled at cell centers and
// dilated by the vehicle half-dimensions (window |di|*cx <= tv_length/2,
// |dj|*cy <= tv_width/2). No renormalization. The position covariance is
// floored at diag(1e-6, 1e-6) so the h=0 zero-covariance case stays valid.
Pog build_tv_pog(const GridSpec& g, const Eigen::Vector2d& mean,
                 const Eigen::Matrix2d& sigma, double tv_length, double tv_width);

// Weighted pointwise sum. All parts must share one GridSpec
// (throws std::invalid_argument otherwise).
Pog combine_pogs(const std::vector<std::pair<double, const Pog*>>& parts);

// b = 1 where p >= p_th (inclusive). Requires p_th > 0.
Bog to_bog(const Pog& pog, double p_th);

}  // namespace gridsmpc
