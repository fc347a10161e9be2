#include "bal/interpolant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bal/problem.hpp"

namespace bal {

DepthConfig DepthConfig::make(int l, double alpha, double lambda, double delta, int d) {
  const int m = std::max(1, floor_strict(alpha));
  DepthConfig cfg;
  cfg.l = l;
  cfg.M = m << l;
  cfg.eps = lambda * std::exp2(-l * alpha);
  cfg.delta = delta / (m * std::ldexp(1.0, l * (d + 1)));
  return cfg;
}

std::size_t ThresholdGrid::line_count() const {
  std::size_t count = 1;
  for (int i = 0; i < dims - 1; ++i) count *= static_cast<std::size_t>(depth.M + 1);
  return count;
}

std::size_t ThresholdGrid::flat_index(std::span<const int> node) const {
  std::size_t flat = 0;
  for (int v : node) flat = flat * static_cast<std::size_t>(depth.M + 1) + static_cast<std::size_t>(v);
  return flat;
}

std::vector<int> ThresholdGrid::node(std::size_t flat) const {
  std::vector<int> out(static_cast<std::size_t>(dims - 1));
  const auto base = static_cast<std::size_t>(depth.M + 1);
  for (auto it = out.rbegin(); it != out.rend(); ++it) {
    *it = static_cast<int>(flat % base);
    flat /= base;
  }
  return out;
}

namespace {

// Cardinal polynomial of local node `j` on nodes (first + i) / M, i = 0..degree.
double cardinal(double x, int first, int j, int degree, int M) {
  double value = 1.0;
  for (int i = 0; i <= degree; ++i) {
    if (i == j) continue;
    value *= (x * M - (first + i)) / static_cast<double>(j - i);
  }
  return value;
}

// Owning cell of coordinate x among `cells` equal cells; faces go to the lower cell.
int owning_cell(double x, int cells) {
  const int q = static_cast<int>(std::ceil(x * cells)) - 1;
  return std::clamp(q, 0, cells - 1);
}

}  // namespace

double lagrange_basis(std::span<const int> cell, std::span<const int> node,
                      std::span<const double> xt, int M, double alpha) {
  const int degree = floor_strict(alpha);
  if (degree < 1) throw std::invalid_argument("lagrange_basis requires alpha > 1");
  if (cell.size() != node.size() || cell.size() != xt.size())
    throw std::invalid_argument("lagrange_basis: dimension mismatch");
  double value = 1.0;
  for (std::size_t i = 0; i < cell.size(); ++i) {
    const int first = degree * cell[i];
    const int j = node[i] - first;
    if (j < 0 || j > degree) throw std::invalid_argument("lagrange_basis: node outside cell");
    value *= cardinal(xt[i], first, j, degree, M);
  }
  return value;
}

PiecewiseInterpolant PiecewiseInterpolant::fit(const ThresholdGrid& grid, double alpha,
                                               double lambda) {
  if (grid.lines.size() != grid.line_count())
    throw std::invalid_argument("threshold grid is incomplete");
  PiecewiseInterpolant p;
  p.alpha_ = alpha;
  p.dims_ = grid.dims;
  p.M_ = grid.depth.M;
  p.degree_ = alpha > 1.0 ? floor_strict(alpha) : 0;
  p.cells_ = alpha > 1.0 ? p.M_ / p.degree_ : p.M_;
  const int up = ceil_int(alpha);
  p.bias_ = lambda * std::pow(static_cast<double>(up), grid.dims * up) * std::pow(p.M_, -alpha);
  p.values_.reserve(grid.lines.size());
  for (const auto& line : grid.lines) p.values_.push_back(line.T);
  return p;
}

double PiecewiseInterpolant::operator()(std::span<const double> xt) const {
  const int dt = dims_ - 1;
  const auto base = static_cast<std::size_t>(M_ + 1);

  if (degree_ == 0) {
    // Constant from the cell's lower-corner threshold.
    std::size_t flat = 0;
    for (int i = 0; i < dt; ++i) flat = flat * base + static_cast<std::size_t>(owning_cell(xt[i], M_));
    return values_[flat];
  }

  // Per-axis cardinal values, then sum over the (degree+1)^{d-1} cell nodes.
  const int per_axis = degree_ + 1;
  std::vector<int> first(static_cast<std::size_t>(dt));
  std::vector<double> weights(static_cast<std::size_t>(dt * per_axis));
  for (int i = 0; i < dt; ++i) {
    first[i] = degree_ * owning_cell(xt[i], cells_);
    for (int j = 0; j <= degree_; ++j)
      weights[i * per_axis + j] = cardinal(xt[i], first[i], j, degree_, M_);
  }
  std::vector<int> local(static_cast<std::size_t>(dt), 0);
  double total = 0.0;
  while (true) {
    std::size_t flat = 0;
    double w = 1.0;
    for (int i = 0; i < dt; ++i) {
      flat = flat * base + static_cast<std::size_t>(first[i] + local[i]);
      w *= weights[i * per_axis + local[i]];
    }
    total += w * values_[flat];
    int axis = dt - 1;
    while (axis >= 0 && ++local[axis] > degree_) local[axis--] = 0;
    if (axis < 0) break;
  }
  return total;
}

}  // namespace bal
