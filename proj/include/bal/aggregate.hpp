#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bal/estimator.hpp"
#include "bal/oracle.hpp"

namespace bal {

/// Running label sets s^0 = {x_d <= L(x~)} and s^1 = {x_d >= U(x~)}, stored
/// as the ordered list of merged subroutine outputs and folded on demand.
class AggregationState {
 public:
  struct Envelope {
    double lower;  // L
    double upper;  // U
  };

  Envelope evaluate(std::span<const double> xt) const;
  /// Envelope after the first `iterations` merges.
  Envelope evaluate_prefix(std::span<const double> xt, std::size_t iterations) const;

  std::size_t iteration() const { return merged_.size(); }
  const std::vector<LabeledRegions>& merged() const { return merged_; }

  friend AggregationState merge_regions(const AggregationState& state, LabeledRegions fresh);

 private:
  std::vector<LabeledRegions> merged_;
};

/// s^y_i = s^y_{i-1} u (S^y_i \ s^{1-y}_{i-1}) in envelope form:
///   U_i = min(U_{i-1}, max(u, succ L_{i-1})),  L_i = max(L_{i-1}, min(l, pred U_{i-1})).
AggregationState merge_regions(const AggregationState& state, LabeledRegions fresh);

/// One envelope step for a single x~; exposed for audits.
AggregationState::Envelope merge_envelope(AggregationState::Envelope previous, double fresh_lower,
                                          double fresh_upper);

struct IterationRecord {
  std::size_t i = 0;
  double alpha_i = 0.0;
  std::uint64_t n0 = 0;
  double delta0 = 0.0;
  int l_star = 0;
  std::uint64_t labels_used = 0;
};

std::string to_json_line(const IterationRecord& r);

class AdaptiveResult {
 public:
  AdaptiveResult(AggregationState state, std::vector<IterationRecord> records);

  /// min{x_d in [0,1] : (x~, x_d) in S^1}; +infinity when the column is empty.
  double g_hat(std::span<const double> xt) const;
  /// 1{x in S^1}.
  int classify(std::span<const double> x) const;

  AggregationState::Envelope envelope(std::span<const double> xt) const {
    return state_.evaluate(xt);
  }
  bool is_vacuous() const;

  const AggregationState& state() const { return state_; }
  const std::vector<IterationRecord>& records() const { return records_; }
  std::uint64_t labels_used() const;

 private:
  AggregationState state_;
  std::vector<IterationRecord> records_;
};

/// floor(ln n), the grid resolution of smoothness guesses.
int log_floor(std::uint64_t n);

/// Supplies the oracle for iteration i (0-based) with the given label cap.
using OracleFactory = std::function<LabelOracle(std::size_t iteration, std::uint64_t cap)>;

/// Smoothness-adaptive aggregation over alpha_i = i / floor(ln n),
/// i = 1..floor(ln n)^2, each with budget n / floor(ln n)^2.
AdaptiveResult run_adaptive(const OracleFactory& factory, std::uint64_t n, double delta,
                            double lambda);

}  // namespace bal
