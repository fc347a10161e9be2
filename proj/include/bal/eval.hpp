#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bal/oracle.hpp"
#include "bal/problem.hpp"

namespace bal {

using BoundaryEstimate = std::function<double(std::span<const double>)>;

/// max over a uniform (d-1)-dimensional grid with `resolution` points per axis
/// (endpoints included) of |g_hat - g*|. Infinite when g_hat is infinite at
/// any grid point.
double sup_error(const BoundaryEstimate& g_hat, const ProblemInstance& instance, int resolution);

/// Histogram plug-in classifier on cells of side 1 / grid_side: majority of
/// the observed labels, ties and empty cells labeled 0.
class HistogramClassifier {
 public:
  HistogramClassifier(int dims, int grid_side, std::vector<std::uint8_t> labels);

  int operator()(std::span<const double> x) const;
  int grid_side() const { return side_; }
  const std::vector<std::uint8_t>& cell_labels() const { return labels_; }

 private:
  int dims_;
  int side_;
  std::vector<std::uint8_t> labels_;
};

/// Queries n labels at i.i.d. uniform points. Requires n >= grid_side^d.
HistogramClassifier passive_baseline(LabelOracle& oracle, std::uint64_t n, int grid_side);

struct SweepRow {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  double sup_error = 0.0;
  double excess_risk = 0.0;
  std::uint64_t labels_used = 0;
  double wall_time_ms = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;

  /// Rows ordered by (n, seed).
  void sort();
};

inline constexpr const char* kSweepCsvHeader =
    "n,seed,sup_error,excess_risk,labels_used,wall_time_ms";

std::string to_csv_line(const SweepRow& row);
void write_csv(std::ostream& out, const SweepResult& sweep);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double theoretical = 0.0;
};

/// -alpha / (2 alpha (kappa - 1) + d - 1)
double theoretical_exponent(double alpha, double kappa, int d);

/// Least squares of log(median sup_error) against log n. Requires >= 4
/// distinct budgets with >= `min_seeds` rows each; rejects infinite medians.
RateFit fit_rate(const SweepResult& sweep, double alpha, double kappa, int d,
                 std::size_t min_seeds = 20);

std::string to_json(const RateFit& fit);

}  // namespace bal
