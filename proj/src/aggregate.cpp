#include "bal/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace bal {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

AggregationState::Envelope merge_envelope(AggregationState::Envelope previous, double fresh_lower,
                                          double fresh_upper) {
  // Strict exclusion of the opposite set; ties fall into the abstention band.
  const double above_old_zero = std::nextafter(previous.lower, kInf);
  const double below_old_one = std::nextafter(previous.upper, -kInf);
  return {std::max(previous.lower, std::min(fresh_lower, below_old_one)),
          std::min(previous.upper, std::max(fresh_upper, above_old_zero))};
}

AggregationState::Envelope AggregationState::evaluate_prefix(std::span<const double> xt,
                                                             std::size_t iterations) const {
  Envelope env{-kInf, kInf};
  const std::size_t stop = std::min(iterations, merged_.size());
  for (std::size_t i = 0; i < stop; ++i) {
    const auto& r = merged_[i];
    if (r.is_vacuous()) continue;
    env = merge_envelope(env, r.lower(xt), r.upper(xt));
  }
  return env;
}

AggregationState::Envelope AggregationState::evaluate(std::span<const double> xt) const {
  return evaluate_prefix(xt, merged_.size());
}

AggregationState merge_regions(const AggregationState& state, LabeledRegions fresh) {
  AggregationState next = state;
  next.merged_.push_back(std::move(fresh));
  return next;
}

std::string to_json_line(const IterationRecord& r) {
  char buf[220];
  std::snprintf(buf, sizeof buf,
                R"({"i":%zu,"alpha_i":%.17g,"n0":%llu,"delta0":%.17g,"l_star":%d,"labels_used":%llu})",
                r.i, r.alpha_i, static_cast<unsigned long long>(r.n0), r.delta0, r.l_star,
                static_cast<unsigned long long>(r.labels_used));
  return buf;
}

AdaptiveResult::AdaptiveResult(AggregationState state, std::vector<IterationRecord> records)
    : state_(std::move(state)), records_(std::move(records)) {}

double AdaptiveResult::g_hat(std::span<const double> xt) const {
  const double upper = state_.evaluate(xt).upper;
  if (upper > 1.0) return kInf;
  return std::max(upper, 0.0);
}

int AdaptiveResult::classify(std::span<const double> x) const {
  return x.back() >= state_.evaluate(x.first(x.size() - 1)).upper ? 1 : 0;
}

bool AdaptiveResult::is_vacuous() const {
  return std::all_of(state_.merged().begin(), state_.merged().end(),
                     [](const LabeledRegions& r) { return r.is_vacuous(); });
}

std::uint64_t AdaptiveResult::labels_used() const {
  std::uint64_t total = 0;
  for (const auto& r : records_) total += r.labels_used;
  return total;
}

int log_floor(std::uint64_t n) {
  return static_cast<int>(std::floor(std::log(static_cast<double>(n))));
}

AdaptiveResult run_adaptive(const OracleFactory& factory, std::uint64_t n, double delta,
                            double lambda) {
  if (n < 3) throw std::invalid_argument("n must be >= 3");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(lambda >= 1.0)) throw std::invalid_argument("lambda must be >= 1");

  const int grid = log_floor(n);
  const auto iterations = static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid);
  const std::uint64_t n0 = n / iterations;
  const double delta0 = delta / static_cast<double>(iterations);

  AggregationState state;
  std::vector<IterationRecord> records;
  records.reserve(iterations);
  for (std::size_t i = 1; i <= iterations; ++i) {
    const double alpha_i = static_cast<double>(i) / grid;
    LabelOracle oracle = factory(i - 1, n0);
    auto sub = run_subroutine(oracle, n0, delta0, lambda, alpha_i);
    records.push_back({i, alpha_i, n0, delta0, sub.l_star, sub.labels_used});
    state = merge_regions(state, std::move(sub.regions));
  }
  return AdaptiveResult(std::move(state), std::move(records));
}

}  // namespace bal
