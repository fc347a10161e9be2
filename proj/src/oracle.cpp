#include "bal/oracle.hpp"

#include <algorithm>

namespace bal {

LabelOracle::LabelOracle(std::shared_ptr<const ProblemInstance> instance, std::uint64_t seed,
                         std::uint64_t cap)
    : instance_(std::move(instance)), rng_(seed), seed_(seed), cap_(cap) {
  if (!instance_) throw std::invalid_argument("oracle needs a problem instance");
  if (cap_ == 0) throw std::invalid_argument("oracle cap must be positive");
}

QueryPoint LabelOracle::prepare(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != instance_->dims())
    throw std::invalid_argument("query point has wrong dimension");
  return {std::vector<double>(x.begin(), x.end()), instance_->eta(x)};
}

int LabelOracle::query(const QueryPoint& point) {
  if (used_ >= cap_) throw BudgetExhausted();
  ++used_;
  return uniform01(rng_) < point.eta ? 1 : 0;
}

LabelOracle::Limit::Limit(LabelOracle& oracle, std::uint64_t budget)
    : oracle_(oracle), saved_cap_(oracle.cap_) {
  const std::uint64_t room = oracle.cap_ - oracle.used_;
  oracle.cap_ = oracle.used_ + std::min(room, budget);
}

LabelOracle::Limit::~Limit() { oracle_.cap_ = saved_cap_; }

}  // namespace bal
