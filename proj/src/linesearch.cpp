#include "bal/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace bal {

LineOracle::LineOracle(LabelOracle& base, std::vector<double> anchor)
    : base_(&base), anchor_(std::move(anchor)) {
  if (static_cast<int>(anchor_.size()) != base.instance().dims() - 1)
    throw std::invalid_argument("line anchor must have d-1 coordinates");
}

QueryPoint LineOracle::prepare(double z) const {
  std::vector<double> x(anchor_);
  x.push_back(z);
  return base_->prepare(x);
}

std::string to_json_line(const EpochTrace& e) {
  char buf[160];
  std::snprintf(buf, sizeof buf, R"({"k":%d,"L":%.17g,"R":%.17g,"t_k":%llu,"decision":"%c"})",
                e.k, e.L, e.R, static_cast<unsigned long long>(e.pulls), e.decision);
  return buf;
}

double confidence_radius(double t, double delta_k) {
  return 2.0 * std::sqrt(std::log(t / delta_k) / (2.0 * t));
}

int epoch_count(double epsilon) {
  int k = 0;
  while (std::ldexp(1.0, -k) > 2.0 * epsilon) ++k;
  return k;
}

double sample_complexity_bound(double kappa, double c, double epsilon, double delta) {
  const double logs = std::log(1.0 / delta) + std::log(1.0 / epsilon);
  const double noise = std::log(1.0 / c) / (c * c);
  if (kappa == 1.0) return 64.0 * logs * noise * std::log(1.0 / epsilon);
  const double growth = std::pow(1.0 / epsilon, 2.0 * (kappa - 1.0)) - 1.0;
  return 200.0 * logs * kappa * noise * std::pow(8.0, 2.0 * (kappa - 1.0)) / (kappa - 1.0) *
         growth;
}

namespace {

struct PointStats {
  QueryPoint point;
  double sum = 0.0;
  // Signed excess of the label count over t/2.
  double excess(double t) const { return sum - 0.5 * t; }
};

}  // namespace

ThresholdEstimate run_line_search(LineOracle& line, double epsilon, double delta,
                                  const LineSearchOptions& options) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");

  const std::uint64_t start = line.used();
  const int K = epoch_count(epsilon);
  double L = 0.0;
  double R = 1.0;
  ThresholdEstimate est;
  est.completed = true;

  for (int k = 1; k <= K && est.completed; ++k) {
    const double delta_k = delta / (K * std::ldexp(1.0, k));
    const double width = R - L;
    const double M = 0.5 * (L + R);
    const double U = L + 0.25 * width;
    const double V = M + 0.25 * width;
    PointStats mid{line.prepare(M)}, low{line.prepare(U)}, high{line.prepare(V)};

    EpochTrace record{k, L, R, 0, 'X'};
    std::uint64_t t = 0;
    std::uint64_t next_check = 1;
    while (true) {
      try {
        mid.sum += line.query(mid.point);
        low.sum += line.query(low.point);
        high.sum += line.query(high.point);
      } catch (const BudgetExhausted&) {
        est.completed = false;
        break;
      }
      ++t;
      if (t < next_check) continue;

      // |eta_hat - 1/2| >= radius, scaled by t: |S - t/2| >= sqrt(2 t log(t/delta_k)).
      const double td = static_cast<double>(t);
      const double bound = std::sqrt(2.0 * td * std::log(td / delta_k));
      const double dm = mid.excess(td);
      const double dl = low.excess(td);
      const double dh = high.excess(td);
      if (std::abs(dm) >= bound) {
        if (dm > 0.0) {
          R = M;
          record.decision = 'L';
        } else {
          L = M;
          record.decision = 'R';
        }
        break;
      }
      if (dh >= bound && -dl >= bound) {
        L = U;
        R = V;
        record.decision = 'C';
        break;
      }
      // Each excess moves by at most 1/2 per pull and the bound grows with t,
      // so no exit is possible before the gap can be closed.
      const double gap_mid = bound - std::abs(dm);
      const double gap_outer = std::max(bound - dh, bound + dl);
      const double steps = std::ceil(2.0 * std::min(gap_mid, gap_outer)) - 1.0;
      next_check = t + static_cast<std::uint64_t>(std::max(1.0, steps));
    }
    record.pulls = t;
    if (options.trace) est.trace.push_back(record);
  }

  est.L = L;
  est.R = R;
  est.T = 0.5 * (L + R);
  est.N = line.used() - start;
  return est;
}

}  // namespace bal
