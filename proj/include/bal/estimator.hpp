#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bal/interpolant.hpp"
#include "bal/oracle.hpp"

namespace bal {

/// Label-0 set {x_d <= lower(x~)} and label-1 set {x_d >= upper(x~)}, both
/// intersected with the unit cube. Vacuous regions label nothing.
class LabeledRegions {
 public:
  static LabeledRegions vacuous();
  static LabeledRegions around(std::shared_ptr<const PiecewiseInterpolant> fit, double margin,
                               int depth, std::uint64_t labels_used);

  double lower(std::span<const double> xt) const;
  double upper(std::span<const double> xt) const;
  bool in_label0(std::span<const double> x) const;
  bool in_label1(std::span<const double> x) const;

  bool is_vacuous() const { return fit_ == nullptr; }
  double margin() const { return margin_; }
  int depth() const { return depth_; }
  std::uint64_t labels_used() const { return labels_used_; }
  const std::shared_ptr<const PiecewiseInterpolant>& interpolant() const { return fit_; }

 private:
  std::shared_ptr<const PiecewiseInterpolant> fit_;
  double margin_ = 0.0;
  int depth_ = 0;
  std::uint64_t labels_used_ = 0;
};

struct DepthTrace {
  int l = 0;
  int M = 0;
  double eps = 0.0;
  double delta = 0.0;
  std::uint64_t labels = 0;  // N_l
  bool completed = false;
};

std::string to_json_line(const DepthTrace& t);

struct SubroutineResult {
  LabeledRegions regions;
  std::optional<ThresholdGrid> grid;  // depth l*; absent when l* = 0
  int l_star = 0;
  std::uint64_t labels_used = 0;
  std::vector<DepthTrace> trace;
};

struct SubroutineOptions {
  /// Refinement stops before a depth whose grid would exceed this many lines.
  std::size_t max_lines_per_depth = std::size_t{1} << 22;
};

/// Noise-adaptive boundary estimation for a known smoothness alpha: dyadic
/// grids of line searches at increasing depth until the budget n interrupts a
/// depth, then an interpolant of the last complete grid with margins 4b.
SubroutineResult run_subroutine(LabelOracle& oracle, std::uint64_t n, double delta,
                                double lambda, double alpha,
                                const SubroutineOptions& options = {});

/// Correctness margin guaranteed with probability 1 - 2 delta:
/// 7 ceil(a)^{d ceil(a)} 2^a lambda^{(d-1)/r} (log(n/delta) / (c1 n))^{a/r},
/// r = 2 a (kappa - 1) + d - 1. Infinite for kappa = 1 (c1 vanishes).
double correctness_margin(double n, double delta, double lambda, double alpha, double kappa,
                          double c, int d);

}  // namespace bal
