#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "bal/interpolant.hpp"

using namespace bal;

namespace {

using Fn = std::function<double(std::span<const double>)>;

ThresholdGrid grid_from(const Fn& f, int l, double alpha, int d) {
  ThresholdGrid g{DepthConfig::make(l, alpha, 1.0, 0.05, d), d, {}};
  const double step = 1.0 / g.depth.M;
  for (std::size_t k = 0; k < g.line_count(); ++k) {
    const auto node = g.node(k);
    std::vector<double> xt;
    for (int v : node) xt.push_back(v * step);
    ThresholdEstimate e;
    e.T = f(xt);
    e.completed = true;
    g.lines.push_back(e);
  }
  return g;
}

}  // namespace

TEST(DepthConfig, Fields) {
  const auto a = DepthConfig::make(3, 1.0, 1.0, 0.05, 2);
  EXPECT_EQ(a.M, 8);
  EXPECT_DOUBLE_EQ(a.eps, 0.125);
  EXPECT_DOUBLE_EQ(a.delta, 0.05 / 512.0);
  const auto b = DepthConfig::make(2, 2.5, 2.0, 0.1, 3);
  EXPECT_EQ(b.M, 8);
  EXPECT_DOUBLE_EQ(b.eps, 2.0 * std::exp2(-5.0));
  EXPECT_DOUBLE_EQ(b.delta, 0.1 / (2.0 * 256.0));
  const auto c = DepthConfig::make(1, 0.5, 1.0, 0.05, 2);
  EXPECT_EQ(c.M, 2);
}

TEST(ThresholdGrid, LexicographicIndexing) {
  ThresholdGrid g{DepthConfig::make(1, 1.0, 1.0, 0.05, 3), 3, {}};
  EXPECT_EQ(g.line_count(), 9u);
  const std::vector<int> node{1, 2};
  EXPECT_EQ(g.flat_index(node), 5u);
  EXPECT_EQ(g.node(5), node);
  for (std::size_t k = 0; k < g.line_count(); ++k) EXPECT_EQ(g.flat_index(g.node(k)), k);
}

TEST(Lagrange, CardinalProperty) {
  for (double alpha : {1.5, 2.5, 3.5}) {
    const int deg = floor_strict(alpha);
    const int M = deg * 4;
    for (int q = 0; q < 4; ++q) {
      for (int a = q * deg; a <= (q + 1) * deg; ++a) {
        for (int b = q * deg; b <= (q + 1) * deg; ++b) {
          const std::vector<int> cell{q}, node{a};
          const std::vector<double> xt{static_cast<double>(b) / M};
          EXPECT_NEAR(lagrange_basis(cell, node, xt, M, alpha), a == b ? 1.0 : 0.0, 1e-14);
        }
      }
    }
  }
}

TEST(Lagrange, TensorCardinalIn2D) {
  const double alpha = 2.2;
  const int M = 4;
  const std::vector<int> cell{1, 0};
  for (int a0 = 2; a0 <= 4; ++a0)
    for (int a1 = 0; a1 <= 2; ++a1)
      for (int b0 = 2; b0 <= 4; ++b0)
        for (int b1 = 0; b1 <= 2; ++b1) {
          const std::vector<int> node{a0, a1};
          const std::vector<double> xt{b0 / 4.0, b1 / 4.0};
          const double expect = (a0 == b0 && a1 == b1) ? 1.0 : 0.0;
          EXPECT_NEAR(lagrange_basis(cell, node, xt, M, alpha), expect, 1e-14);
        }
}

TEST(Lagrange, RejectsForeignNodeAndLowSmoothness) {
  const std::vector<int> cell{0}, far{3};
  const std::vector<double> xt{0.1};
  EXPECT_THROW(lagrange_basis(cell, far, xt, 4, 1.5), std::invalid_argument);
  const std::vector<int> own{0};
  EXPECT_THROW(lagrange_basis(cell, own, xt, 4, 1.0), std::invalid_argument);
}

TEST(Lagrange, LinearSupIsOne) {
  // d = 2, floor(alpha) = 1: hat functions, sup exactly 1 at the node.
  const std::vector<int> cell{2}, node{2};
  double sup = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const std::vector<double> xt{0.5 + 0.25 * i / 1000.0};
    sup = std::max(sup, std::fabs(lagrange_basis(cell, node, xt, 4, 1.5)));
  }
  EXPECT_DOUBLE_EQ(sup, 1.0);
}

class LagrangeBound : public ::testing::TestWithParam<std::tuple<double, int>> {};

TEST_P(LagrangeBound, SampledSupWithinBound) {
  const auto [alpha, d] = GetParam();
  const int deg = floor_strict(alpha);
  const int dt = d - 1;
  const int cells = 2;
  const int M = deg * cells;
  const double bound = std::pow(deg, dt * deg);
  Engine rng(7);
  std::vector<int> cell(dt), node(dt);
  std::vector<double> xt(dt);
  for (int q = 0; q < std::pow(cells, dt); ++q) {
    int rem = q;
    for (int i = dt - 1; i >= 0; --i) {
      cell[i] = rem % cells;
      rem /= cells;
    }
    for (int s = 0; s < 10000; ++s) {
      for (int i = 0; i < dt; ++i) {
        xt[i] = (cell[i] + uniform01(rng)) / cells;
        node[i] = cell[i] * deg + static_cast<int>(rng() % (deg + 1));
      }
      ASSERT_LE(std::fabs(lagrange_basis(cell, node, xt, M, alpha)), bound + 1e-12);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Grid, LagrangeBound,
                         ::testing::Values(std::make_tuple(1.5, 2), std::make_tuple(1.5, 3),
                                           std::make_tuple(2.5, 2), std::make_tuple(2.5, 3)));

TEST(Interpolant, NodalExactness) {
  Engine rng(3);
  for (double alpha : {0.7, 1.0, 1.5, 2.5}) {
    for (int d : {2, 3}) {
      const auto fn = [&](std::span<const double> xt) {
        double v = 0.5;
        for (double x : xt) v += 0.1 * std::sin(7.0 * x);
        return v;
      };
      const auto grid = grid_from(fn, 2, alpha, d);
      const auto p = PiecewiseInterpolant::fit(grid, alpha, 1.0);
      const double step = 1.0 / grid.depth.M;
      for (std::size_t k = 0; k < grid.line_count(); ++k) {
        std::vector<double> xt;
        for (int v : grid.node(k)) xt.push_back(v * step);
        if (alpha > 1.0) {
          ASSERT_NEAR(p(xt), grid.lines[k].T, 1e-12);
        } else {
          // Constant cells agree with their lower corner; the far faces belong
          // to the cell below.
          bool lower_corner = true;
          for (int v : grid.node(k)) lower_corner = lower_corner && v == 0;
          if (lower_corner) ASSERT_EQ(p(xt), grid.lines[k].T);
        }
      }
    }
  }
}

TEST(Interpolant, PolynomialReproduction) {
  Engine rng(5);
  for (double alpha : {1.5, 2.5, 3.2}) {
    const int deg = floor_strict(alpha);
    for (int d : {2, 3}) {
      // Random polynomial of coordinatewise degree <= deg.
      std::vector<double> coef(static_cast<std::size_t>(std::pow(deg + 1, d - 1)));
      for (auto& c : coef) c = uniform01(rng) - 0.5;
      const auto poly = [&](std::span<const double> xt) {
        double total = 0.0;
        for (std::size_t k = 0; k < coef.size(); ++k) {
          std::size_t rem = k;
          double term = coef[k];
          for (double x : xt) {
            term *= std::pow(x, static_cast<double>(rem % (deg + 1)));
            rem /= deg + 1;
          }
          total += term;
        }
        return total;
      };
      const auto grid = grid_from(poly, 2, alpha, d);
      const auto p = PiecewiseInterpolant::fit(grid, alpha, 1.0);
      std::vector<double> xt(d - 1);
      double worst = 0.0;
      for (int s = 0; s < 10000; ++s) {
        for (auto& x : xt) x = uniform01(rng);
        worst = std::max(worst, std::fabs(p(xt) - poly(xt)));
      }
      EXPECT_LE(worst, 1e-12) << "alpha=" << alpha << " d=" << d;
    }
  }
}

TEST(Interpolant, ConstantData) {
  const auto grid = grid_from([](std::span<const double>) { return 0.5; }, 3, 0.7, 2);
  const auto p = PiecewiseInterpolant::fit(grid, 0.7, 1.0);
  for (int i = 0; i <= 100; ++i) {
    const std::vector<double> xt{i / 100.0};
    EXPECT_EQ(p(xt), 0.5);
  }
}

TEST(Interpolant, LinearMidpoint) {
  // alpha = 1.5, M = 4, cell 0 with nodes at 0 and 1/4.
  const auto grid = grid_from([](std::span<const double> xt) { return xt[0] < 0.2 ? 0.2 : 0.6; },
                              2, 1.5, 2);
  ASSERT_EQ(grid.depth.M, 4);
  const auto p = PiecewiseInterpolant::fit(grid, 1.5, 1.0);
  const std::vector<double> mid{0.125};
  EXPECT_NEAR(p(mid), 0.4, 1e-15);
}

TEST(Interpolant, FaceOwnedByLowerCell) {
  // alpha <= 1: x = 1/4 lies on the face between cells 0 and 1 of M = 4.
  const auto grid = grid_from([](std::span<const double> xt) { return xt[0]; }, 2, 1.0, 2);
  const auto p = PiecewiseInterpolant::fit(grid, 1.0, 1.0);
  const std::vector<double> face{0.25}, inside{0.3}, top{1.0};
  EXPECT_EQ(p(face), 0.0);
  EXPECT_EQ(p(inside), 0.25);
  EXPECT_EQ(p(top), 0.75);  // last cell is closed
  // alpha > 1: continuous across faces, value from the lower cell's polynomial.
  const auto g2 = grid_from([](std::span<const double> xt) { return xt[0] * xt[0]; }, 2, 2.5, 2);
  const auto p2 = PiecewiseInterpolant::fit(g2, 2.5, 1.0);
  const std::vector<double> f2{0.5};
  EXPECT_NEAR(p2(f2), 0.25, 1e-14);
}

TEST(Interpolant, BiasTerm) {
  const auto grid = grid_from([](std::span<const double>) { return 0.5; }, 3, 1.0, 2);
  const auto p = PiecewiseInterpolant::fit(grid, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(p.bias(), 2.0 / 8.0);
  const auto g2 = grid_from([](std::span<const double>) { return 0.5; }, 2, 1.5, 3);
  const auto p2 = PiecewiseInterpolant::fit(g2, 1.5, 1.0);
  // ceil(1.5)^{3 * 2} * 4^{-1.5}
  EXPECT_DOUBLE_EQ(p2.bias(), 64.0 / 8.0);
  EXPECT_GT(p2.bias(), 0.0);
}

TEST(Interpolant, IncompleteGridRejected) {
  auto grid = grid_from([](std::span<const double>) { return 0.5; }, 2, 1.0, 2);
  grid.lines.pop_back();
  EXPECT_THROW(PiecewiseInterpolant::fit(grid, 1.0, 1.0), std::invalid_argument);
}
