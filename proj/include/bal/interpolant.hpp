#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bal/linesearch.hpp"

namespace bal {

/// Grid parameters of one refinement depth.
struct DepthConfig {
  int l = 1;
  int M = 2;           // max(1, floor_strict(alpha)) * 2^l
  double eps = 0.5;    // lambda * 2^{-l alpha}
  double delta = 0.0;  // delta / (max(1, floor_strict(alpha)) * 2^{l(d+1)})

  static DepthConfig make(int l, double alpha, double lambda, double delta, int d);
};

/// Threshold estimates on every line of {0..M}^{d-1} / M, lexicographic order
/// with the first coordinate most significant. Only complete grids exist.
struct ThresholdGrid {
  DepthConfig depth;
  int dims = 2;  // d
  std::vector<ThresholdEstimate> lines;

  std::size_t line_count() const;
  std::size_t flat_index(std::span<const int> node) const;
  std::vector<int> node(std::size_t flat) const;
  double threshold(std::span<const int> node) const { return lines[flat_index(node)].T; }
};

/// Tensor-product Lagrange cardinal polynomial for node `node` of cell `cell`
/// at x~. Requires alpha > 1; throws std::invalid_argument when the node is
/// not one of the cell's (floor_strict(alpha)+1)^{d-1} nodes.
double lagrange_basis(std::span<const int> cell, std::span<const int> node,
                      std::span<const double> xt, int M, double alpha);

/// Piecewise polynomial (alpha > 1) or piecewise constant (alpha <= 1)
/// approximation of the boundary from a complete threshold grid.
class PiecewiseInterpolant {
 public:
  static PiecewiseInterpolant fit(const ThresholdGrid& grid, double alpha, double lambda);

  /// Value of the owning cell's polynomial; cells are half-open with the last
  /// cell on each axis closed.
  double operator()(std::span<const double> xt) const;

  double alpha() const { return alpha_; }
  int grid_count() const { return M_; }
  int dims() const { return dims_; }
  /// lambda * ceil(alpha)^{d ceil(alpha)} * M^{-alpha}
  double bias() const { return bias_; }
  /// Cells per axis.
  int cells_per_axis() const { return cells_; }

 private:
  double alpha_ = 1.0;
  int dims_ = 2;
  int M_ = 2;
  int degree_ = 0;  // floor_strict(alpha) for alpha > 1, else 0
  int cells_ = 2;
  double bias_ = 0.0;
  std::vector<double> values_;  // nodal thresholds on {0..M}^{d-1}
};

}  // namespace bal
