#include "bal/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "bal/problem.hpp"

namespace bal {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LabeledRegions LabeledRegions::vacuous() { return {}; }

LabeledRegions LabeledRegions::around(std::shared_ptr<const PiecewiseInterpolant> fit,
                                      double margin, int depth, std::uint64_t labels_used) {
  LabeledRegions r;
  r.fit_ = std::move(fit);
  r.margin_ = margin;
  r.depth_ = depth;
  r.labels_used_ = labels_used;
  return r;
}

double LabeledRegions::lower(std::span<const double> xt) const {
  return fit_ ? (*fit_)(xt) - margin_ : -kInf;
}

double LabeledRegions::upper(std::span<const double> xt) const {
  return fit_ ? (*fit_)(xt) + margin_ : kInf;
}

bool LabeledRegions::in_label0(std::span<const double> x) const {
  return x.back() <= lower(x.first(x.size() - 1));
}

bool LabeledRegions::in_label1(std::span<const double> x) const {
  return x.back() >= upper(x.first(x.size() - 1));
}

std::string to_json_line(const DepthTrace& t) {
  char buf[200];
  std::snprintf(buf, sizeof buf,
                R"({"l":%d,"M_l":%d,"eps_l":%.17g,"delta_l":%.17g,"N_l":%llu,"completed":%s})",
                t.l, t.M, t.eps, t.delta, static_cast<unsigned long long>(t.labels),
                t.completed ? "true" : "false");
  return buf;
}

SubroutineResult run_subroutine(LabelOracle& oracle, std::uint64_t n, double delta,
                                double lambda, double alpha, const SubroutineOptions& options) {
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  SmoothnessParams{alpha, lambda}.validate();

  const int d = oracle.instance().dims();
  LabelOracle::Limit limit(oracle, n);
  const std::uint64_t start = oracle.used();

  SubroutineResult result;
  for (int l = 1; oracle.used() - start < n; ++l) {
    ThresholdGrid grid{DepthConfig::make(l, alpha, lambda, delta, d), d, {}};
    const std::size_t count = grid.line_count();
    if (count > options.max_lines_per_depth || grid.depth.M <= 0) break;

    // Precisions of 1/2 or more need no labels; keep the search inside its domain.
    const double eps = std::min(grid.depth.eps, 0.5);
    const double step = 1.0 / grid.depth.M;
    const std::uint64_t depth_start = oracle.used();
    bool complete = true;
    grid.lines.reserve(count);
    std::vector<double> anchor(static_cast<std::size_t>(d - 1));
    for (std::size_t flat = 0; flat < count; ++flat) {
      const auto node = grid.node(flat);
      for (int i = 0; i < d - 1; ++i) anchor[i] = node[i] * step;
      LineOracle line(oracle, anchor);
      auto est = run_line_search(line, eps, grid.depth.delta);
      if (!est.completed) {
        complete = false;
        break;
      }
      grid.lines.push_back(std::move(est));
    }
    result.trace.push_back({l, grid.depth.M, grid.depth.eps, grid.depth.delta,
                            oracle.used() - depth_start, complete});
    if (!complete) break;
    result.l_star = l;
    result.grid = std::move(grid);
  }

  result.labels_used = oracle.used() - start;
  if (result.l_star == 0) {
    result.regions = LabeledRegions::vacuous();
    return result;
  }
  auto fit = std::make_shared<const PiecewiseInterpolant>(
      PiecewiseInterpolant::fit(*result.grid, alpha, lambda));
  const double margin = 4.0 * fit->bias();
  result.regions = LabeledRegions::around(std::move(fit), margin, result.l_star, result.labels_used);
  return result;
}

double correctness_margin(double n, double delta, double lambda, double alpha, double kappa,
                          double c, int d) {
  if (kappa <= 1.0) return kInf;
  const int up = ceil_int(alpha);
  const double c1 = (kappa - 1.0) * c * c /
                    (400.0 * std::pow(2.0 * up, d - 1) * alpha * std::log(1.0 / c) * kappa *
                     std::pow(8.0, 2.0 * (kappa - 1.0)));
  const double rate = 2.0 * alpha * (kappa - 1.0) + d - 1.0;
  return 7.0 * std::pow(static_cast<double>(up), d * up) * std::exp2(alpha) *
         std::pow(lambda, (d - 1.0) / rate) *
         std::pow(std::log(n / delta) / (c1 * n), alpha / rate);
}

}  // namespace bal
