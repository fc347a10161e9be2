#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bal/oracle.hpp"

namespace bal {

/// Vertical line {(anchor, z) : z in [0,1]} through a base oracle. Budget
/// accounting flows through the base.
class LineOracle {
 public:
  LineOracle(LabelOracle& base, std::vector<double> anchor);

  QueryPoint prepare(double z) const;
  int query(const QueryPoint& point) { return base_->query(point); }
  int query(double z) { return query(prepare(z)); }

  std::uint64_t used() const { return base_->used(); }
  const std::vector<double>& anchor() const { return anchor_; }

 private:
  LabelOracle* base_;
  std::vector<double> anchor_;
};

struct EpochTrace {
  int k = 0;
  double L = 0.0;
  double R = 1.0;
  std::uint64_t pulls = 0;  // t_k
  /// 'L': kept [L, M]; 'R': kept [M, R]; 'C': kept [U, V]; 'X': budget ran out.
  char decision = 'X';
};

std::string to_json_line(const EpochTrace& e);

struct ThresholdEstimate {
  double T = 0.5;
  double L = 0.0;
  double R = 1.0;
  std::uint64_t N = 0;
  bool completed = false;
  std::vector<EpochTrace> trace;
};

struct LineSearchOptions {
  bool trace = false;
};

/// 2 * sqrt(log(t / delta_k) / (2 t)).
double confidence_radius(double t, double delta_k);

/// Number of halving epochs: smallest K >= 0 with 2^{-K} <= 2 epsilon.
int epoch_count(double epsilon);

/// Worst-case label count of a successful search (kappa = 1 and kappa > 1
/// branches of the sample-complexity bound).
double sample_complexity_bound(double kappa, double c, double epsilon, double delta);

/// Noise-adaptive stochastic bisection. Each epoch pulls one label at each of
/// the three quartiles of the active interval until the midpoint, or both
/// outer quartiles, are labeled with confidence delta / (K 2^k). Budget
/// exhaustion returns completed = false with the labels spent so far.
ThresholdEstimate run_line_search(LineOracle& line, double epsilon, double delta,
                                  const LineSearchOptions& options = {});

}  // namespace bal
