#include "bal/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace bal {

double sup_error(const BoundaryEstimate& g_hat, const ProblemInstance& instance, int resolution) {
  if (resolution < 2) throw std::invalid_argument("resolution must be >= 2");
  const int dt = instance.dims() - 1;
  std::vector<int> idx(static_cast<std::size_t>(dt), 0);
  std::vector<double> xt(static_cast<std::size_t>(dt));
  const double step = 1.0 / (resolution - 1);
  double worst = 0.0;
  while (true) {
    for (int i = 0; i < dt; ++i) xt[i] = idx[i] * step;
    const double err = std::abs(g_hat(xt) - instance.g_star(xt));
    if (std::isnan(err)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, err);
    int axis = dt - 1;
    while (axis >= 0 && ++idx[axis] == resolution) idx[axis--] = 0;
    if (axis < 0) break;
  }
  return worst;
}

HistogramClassifier::HistogramClassifier(int dims, int grid_side, std::vector<std::uint8_t> labels)
    : dims_(dims), side_(grid_side), labels_(std::move(labels)) {}

namespace {

std::size_t cell_of(std::span<const double> x, int side) {
  std::size_t flat = 0;
  for (double v : x) {
    const int j = std::clamp(static_cast<int>(std::floor(v * side)), 0, side - 1);
    flat = flat * static_cast<std::size_t>(side) + static_cast<std::size_t>(j);
  }
  return flat;
}

}  // namespace

int HistogramClassifier::operator()(std::span<const double> x) const {
  return labels_[cell_of(x.first(static_cast<std::size_t>(dims_)), side_)];
}

HistogramClassifier passive_baseline(LabelOracle& oracle, std::uint64_t n, int grid_side) {
  if (grid_side < 1) throw std::invalid_argument("grid_side must be >= 1");
  const int d = oracle.instance().dims();
  std::size_t cells = 1;
  for (int i = 0; i < d; ++i) cells *= static_cast<std::size_t>(grid_side);
  if (n < cells) throw std::invalid_argument("passive baseline needs n >= grid_side^d");

  Engine rng(derive_seed(oracle.seed(), 0x9a55u));
  std::vector<std::uint64_t> seen(cells, 0);
  std::vector<std::uint64_t> ones(cells, 0);
  std::vector<double> x(static_cast<std::size_t>(d));
  for (std::uint64_t i = 0; i < n; ++i) {
    for (auto& v : x) v = uniform01(rng);
    const int y = oracle.query(x);
    const auto c = cell_of(x, grid_side);
    ++seen[c];
    ones[c] += static_cast<std::uint64_t>(y);
  }
  std::vector<std::uint8_t> labels(cells, 0);
  for (std::size_t c = 0; c < cells; ++c) labels[c] = 2 * ones[c] > seen[c] ? 1 : 0;
  return HistogramClassifier(d, grid_side, std::move(labels));
}

void SweepResult::sort() {
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.n != b.n ? a.n < b.n : a.seed < b.seed;
  });
}

std::string to_csv_line(const SweepRow& row) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%llu,%llu,%.17g,%.17g,%llu,%.3f",
                static_cast<unsigned long long>(row.n), static_cast<unsigned long long>(row.seed),
                row.sup_error, row.excess_risk, static_cast<unsigned long long>(row.labels_used),
                row.wall_time_ms);
  return buf;
}

void write_csv(std::ostream& out, const SweepResult& sweep) {
  out << kSweepCsvHeader << '\n';
  for (const auto& row : sweep.rows) out << to_csv_line(row) << '\n';
}

double theoretical_exponent(double alpha, double kappa, int d) {
  return -alpha / (2.0 * alpha * (kappa - 1.0) + d - 1.0);
}

RateFit fit_rate(const SweepResult& sweep, double alpha, double kappa, int d,
                 std::size_t min_seeds) {
  std::map<std::uint64_t, std::vector<double>> by_budget;
  for (const auto& row : sweep.rows) by_budget[row.n].push_back(row.sup_error);
  if (by_budget.size() < 4) throw std::invalid_argument("rate fit needs at least 4 budgets");

  std::vector<double> xs;
  std::vector<double> ys;
  for (auto& [n, errors] : by_budget) {
    if (errors.size() < min_seeds)
      throw std::invalid_argument("rate fit needs at least " + std::to_string(min_seeds) +
                                  " seeds per budget");
    std::sort(errors.begin(), errors.end());
    const std::size_t mid = errors.size() / 2;
    const double median =
        errors.size() % 2 ? errors[mid] : 0.5 * (errors[mid - 1] + errors[mid]);
    if (!std::isfinite(median) || !(median > 0.0))
      throw std::invalid_argument("rate fit: median sup error at n=" + std::to_string(n) +
                                  " is vacuous");
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(median));
  }

  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.theoretical = theoretical_exponent(alpha, kappa, d);
  return fit;
}

std::string to_json(const RateFit& fit) {
  nlohmann::ordered_json j;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["r2"] = fit.r2;
  j["theoretical"] = fit.theoretical;
  return j.dump();
}

}  // namespace bal
