#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "bal/problem.hpp"
#include "bal/rng.hpp"

namespace bal {

/// Raised when a query would exceed the label budget. Never a label.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted() : std::runtime_error("label budget exhausted") {}
};

/// A query location with its regression value resolved once. Labels drawn at
/// a prepared point are identical to labels drawn at the raw coordinates.
struct QueryPoint {
  std::vector<double> x;
  double eta = 0.5;
};

/// Budgeted Bernoulli(eta(x)) label source. Single owner; not thread safe.
class LabelOracle {
 public:
  LabelOracle(std::shared_ptr<const ProblemInstance> instance, std::uint64_t seed,
              std::uint64_t cap);

  QueryPoint prepare(std::span<const double> x) const;

  int query(const QueryPoint& point);
  int query(std::span<const double> x) { return query(prepare(x)); }

  std::uint64_t used() const { return used_; }
  std::uint64_t cap() const { return cap_; }
  std::uint64_t remaining() const { return cap_ - used_; }
  std::uint64_t seed() const { return seed_; }
  const ProblemInstance& instance() const { return *instance_; }
  const std::shared_ptr<const ProblemInstance>& instance_ptr() const { return instance_; }

  /// Temporarily lowers the cap to used() + budget (never raises it).
  class Limit {
   public:
    Limit(LabelOracle& oracle, std::uint64_t budget);
    ~Limit();
    Limit(const Limit&) = delete;
    Limit& operator=(const Limit&) = delete;

   private:
    LabelOracle& oracle_;
    std::uint64_t saved_cap_;
  };

 private:
  std::shared_ptr<const ProblemInstance> instance_;
  Engine rng_;
  std::uint64_t seed_;
  std::uint64_t used_ = 0;
  std::uint64_t cap_;
};

}  // namespace bal
