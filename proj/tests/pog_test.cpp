#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "gridsmpc/pog.hpp"

using namespace gridsmpc;

namespace {

GridSpec centered_grid(int nx, int ny, double cx, double cy) {
  GridSpec g;
  g.cx = cx;
  g.cy = cy;
  g.nx = nx;
  g.ny = ny;
  g.origin_x = -nx * cx / 2;
  g.origin_y = -ny * cy / 2;
  return g;
}

Eigen::ArrayXXd brute_dilate(const Eigen::ArrayXXd& f, int di, int dj) {
  Eigen::ArrayXXd out(f.rows(), f.cols());
  for (int i = 0; i < f.rows(); ++i) {
    for (int j = 0; j < f.cols(); ++j) {
      double m = 0.0;
      for (int a = std::max<int>(i - di, 0); a <= std::min<int>(i + di, f.rows() - 1); ++a) {
        for (int b = std::max<int>(j - dj, 0); b <= std::min<int>(j + dj, f.cols() - 1);
             ++b) {
          m = std::max(m, f(a, b));
        }
      }
      out(i, j) = m;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("normal density worked values") {
  Eigen::Vector2d zero(0.0, 0.0);
  Eigen::Matrix2d eye = Eigen::Matrix2d::Identity();
  CHECK(gaussian_density(zero, eye, zero) ==
        doctest::Approx(0.15915494309189535).epsilon(1e-14));
  CHECK(gaussian_density(zero, 2 * eye, zero) ==
        doctest::Approx(0.07957747154594767).epsilon(1e-14));
  CHECK(gaussian_density(zero, eye, {1.0, 0.0}) ==
        doctest::Approx(0.09653235263005391).epsilon(1e-14));

  // Correlated covariance, checked through an independent matrix inverse.
  Eigen::Matrix2d sigma;
  sigma << 2.0, 0.5, 0.5, 1.0;
  Eigen::Vector2d mean(1.0, 2.0), pt(1.5, 2.5);
  Eigen::Vector2d d = pt - mean;
  double expect = std::exp(-0.5 * d.dot(sigma.inverse() * d)) /
                  (2 * M_PI * std::sqrt(sigma.determinant()));
  CHECK(gaussian_density(mean, sigma, pt) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("degenerate or malformed covariances are rejected") {
  Eigen::Vector2d zero(0.0, 0.0);
  Eigen::Matrix2d tiny = 1e-7 * Eigen::Matrix2d::Identity();  // det 1e-14
  CHECK_THROWS_AS(gaussian_density(zero, tiny, zero), std::domain_error);
  Eigen::Matrix2d skew;
  skew << 1.0, 0.4, -0.4, 1.0;
  CHECK_THROWS_AS(gaussian_density(zero, skew, zero), std::domain_error);
  Eigen::Matrix2d indef;
  indef << 1.0, 2.0, 2.0, 1.0;  // det -3
  CHECK_THROWS_AS(gaussian_density(zero, indef, zero), std::domain_error);
  Eigen::Matrix2d rank1;
  rank1 << 1.0, 1.0, 1.0, 1.0;
  CHECK_THROWS_AS(gaussian_density(zero, rank1, zero), std::domain_error);
  GridSpec g = centered_grid(10, 10, 0.5, 0.25);
  CHECK_THROWS_AS(sample_density_field(g, zero, tiny), std::domain_error);
}

TEST_CASE("sampled field times cell area sums to one when the support fits") {
  GridSpec g = centered_grid(160, 120, 0.5, 0.25);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> sx(0.3, 2.0), sy(0.2, 1.2), rho(-0.6, 0.6);
  std::uniform_real_distribution<double> mx(-3.0, 3.0), my(-2.0, 2.0);
  for (int n = 0; n < 20; ++n) {
    Eigen::Matrix2d sigma;
    double a = sx(rng), b = sy(rng), r = rho(rng);
    sigma << a * a, r * a * b, r * a * b, b * b;
    Eigen::Vector2d mean(mx(rng), my(rng));
    // 6.5-sigma support must fit inside the grid for the mass check.
    REQUIRE(mean.x() - 6.5 * a >= g.origin_x);
    REQUIRE(mean.x() + 6.5 * a <= g.max_x());
    REQUIRE(mean.y() - 6.5 * b >= g.origin_y);
    REQUIRE(mean.y() + 6.5 * b <= g.max_y());
    Eigen::ArrayXXd f = sample_density_field(g, mean, sigma);
    CHECK((f >= 0.0).all());
    double mass = f.sum() * g.cx * g.cy;
    CHECK(mass == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("sampled field matches pointwise density inside and is zero far out") {
  GridSpec g = centered_grid(80, 60, 0.5, 0.25);
  Eigen::Matrix2d sigma;
  sigma << 1.0, 0.2, 0.2, 0.5;
  Eigen::Vector2d mean(1.0, 0.5);
  Eigen::ArrayXXd f = sample_density_field(g, mean, sigma);
  int checked_nonzero = 0;
  for (int i = 0; i < g.nx; i += 7) {
    for (int j = 0; j < g.ny; j += 5) {
      Eigen::Vector2d c(g.origin_x + (i + 0.5) * g.cx, g.origin_y + (j + 0.5) * g.cy);
      double dx = std::abs(c.x() - mean.x()) / std::sqrt(sigma(0, 0));
      double dy = std::abs(c.y() - mean.y()) / std::sqrt(sigma(1, 1));
      if (f(i, j) != 0.0) {
        CHECK(f(i, j) == doctest::Approx(gaussian_density(mean, sigma, c)).epsilon(1e-13));
        ++checked_nonzero;
      } else {
        // Zeroed cells are outside the marginal support box.
        CHECK(std::max(dx, dy) >= 6.5 - 1e-9);
      }
    }
  }
  CHECK(checked_nonzero > 10);
}

TEST_CASE("max dilation equals the brute-force window max") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uv(0.0, 1.0);
  for (int n = 0; n < 30; ++n) {
    int nx = 5 + static_cast<int>(uv(rng) * 30);
    int ny = 3 + static_cast<int>(uv(rng) * 20);
    int di = static_cast<int>(uv(rng) * 7);
    int dj = static_cast<int>(uv(rng) * 5);
    Eigen::ArrayXXd f(nx, ny);
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) {
        // Sparse field with exact zeros, like a truncated density.
        f(i, j) = uv(rng) < 0.3 ? uv(rng) : 0.0;
      }
    }
    Eigen::ArrayXXd got = dilate_max(f, di, dj);
    Eigen::ArrayXXd want = brute_dilate(f, di, dj);
    CHECK((got == want).all());
  }
}

TEST_CASE("dilation with a zero window is the identity") {
  Eigen::ArrayXXd f = Eigen::ArrayXXd::Random(12, 9).abs();
  CHECK((dilate_max(f, 0, 0) == f).all());
  Eigen::ArrayXXd z = Eigen::ArrayXXd::Zero(6, 6);
  CHECK((dilate_max(z, 3, 3) == z).all());
}

TEST_CASE("tv occupancy is the dilated density with vehicle half-size windows") {
  GridSpec g = centered_grid(80, 40, 0.5, 0.25);
  Eigen::Matrix2d sigma;
  sigma << 0.8, 0.1, 0.1, 0.3;
  Eigen::Vector2d mean(2.0, 1.0);
  Pog pog = build_tv_pog(g, mean, sigma, 6.0, 2.0);
  // 6 m length over 0.5 m cells: +-6 cells; 2 m width over 0.25 m: +-4.
  Eigen::ArrayXXd want = dilate_max(sample_density_field(g, mean, sigma), 6, 4);
  CHECK((pog.p == want).all());
  CHECK(pog.spec.nx == g.nx);

  // The peak spreads: the cell at the mean keeps the peak value and so do
  // its window neighbours.
  CellIndex c = world_to_cell(g, mean.x(), mean.y());
  double peak = pog.p.maxCoeff();
  CHECK(pog.p(c.i, c.j) == peak);
  CHECK(pog.p(c.i + 6, c.j) == peak);
  CHECK(pog.p(c.i, c.j + 4) == peak);
}

TEST_CASE("tv occupancy floors a zero covariance instead of throwing") {
  GridSpec g = centered_grid(40, 24, 0.5, 0.25);
  // Mean exactly on a cell center so the floored near-delta support holds it.
  Pog pog = build_tv_pog(g, {0.25, 0.125}, Eigen::Matrix2d::Zero(), 6.0, 2.0);
  CHECK(pog.p.maxCoeff() > 0.0);
  CellIndex c = world_to_cell(g, 0.25, 0.125);
  CHECK(pog.p(c.i, c.j) == pog.p.maxCoeff());
}

TEST_CASE("a near-delta density between cell centers samples to zero") {
  // Center sampling keeps only values above 1e-8 of the peak; a distribution
  // concentrated between centers genuinely has no visible mass at any center.
  GridSpec g = centered_grid(40, 24, 0.5, 0.25);
  Eigen::Matrix2d sigma = 1e-4 * Eigen::Matrix2d::Identity();
  Eigen::ArrayXXd f = sample_density_field(g, {0.0, 0.0}, sigma);  // cell corner
  CHECK((f == 0.0).all());
  Eigen::ArrayXXd on = sample_density_field(g, {0.25, 0.125}, sigma);  // cell center
  CHECK(on.maxCoeff() > 0.0);
}

TEST_CASE("combining weights fields pointwise and rejects mismatched grids") {
  GridSpec g = centered_grid(20, 10, 0.5, 0.25);
  Pog a{g, Eigen::ArrayXXd::Constant(20, 10, 1.0)};
  Pog b{g, Eigen::ArrayXXd::Constant(20, 10, 2.0)};
  // Dyadic weights keep the expected value exact in floating point.
  Pog sum = combine_pogs({{0.5, &a}, {0.25, &b}});
  CHECK((sum.p == 1.0).all());

  GridSpec shifted = g;
  shifted.origin_x += 0.5;
  Pog c{shifted, Eigen::ArrayXXd::Constant(20, 10, 1.0)};
  CHECK_THROWS_AS(combine_pogs({{0.5, &a}, {0.5, &c}}), std::invalid_argument);
  CHECK_THROWS_AS(combine_pogs({}), std::invalid_argument);
}

TEST_CASE("thresholding is inclusive and monotone in the threshold") {
  GridSpec g = centered_grid(12, 8, 0.5, 0.25);
  Eigen::ArrayXXd f = Eigen::ArrayXXd::Zero(12, 8);
  f(3, 4) = 0.15;
  f(5, 5) = 0.149999;
  f(7, 2) = 0.9;
  Pog pog{g, f};
  Bog bog = to_bog(pog, 0.15);
  CHECK(bog.occupied(3, 4));  // exactly at threshold counts
  CHECK(!bog.occupied(5, 5));
  CHECK(bog.occupied(7, 2));
  CHECK(bog.b.cast<int>().sum() == 2);
  CHECK_THROWS_AS(to_bog(pog, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(to_bog(pog, -0.1), std::invalid_argument);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> uv(0.0, 1.0);
  for (int n = 0; n < 20; ++n) {
    Eigen::ArrayXXd r(12, 8);
    for (int i = 0; i < 12; ++i) {
      for (int j = 0; j < 8; ++j) r(i, j) = uv(rng) < 0.5 ? uv(rng) : 0.0;
    }
    Pog p{g, r};
    double lo = 0.1 + 0.4 * uv(rng);
    double hi = lo + 0.4 * uv(rng) + 1e-6;
    Bog coarse = to_bog(p, hi);
    Bog fine = to_bog(p, lo);
    for (int i = 0; i < 12; ++i) {
      for (int j = 0; j < 8; ++j) {
        if (coarse.occupied(i, j)) CHECK(fine.occupied(i, j));
      }
    }
  }
}
