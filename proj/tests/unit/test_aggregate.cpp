#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "bal/aggregate.hpp"
#include "bal/eval.hpp"

using namespace bal;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::shared_ptr<const ProblemInstance> baseline_instance(bool noiseless = false) {
  InstanceDescriptor desc;
  desc.kappa = 1.5;
  desc.noiseless = noiseless;
  return std::make_shared<const ProblemInstance>(make_instance(desc));
}

// Regions around a random piecewise-constant fit on M = 2^l cells.
LabeledRegions random_regions(Engine& rng, int l, double margin) {
  ThresholdGrid g{DepthConfig::make(l, 1.0, 1.0, 0.05, 2), 2, {}};
  for (std::size_t k = 0; k < g.line_count(); ++k) {
    ThresholdEstimate e;
    e.T = uniform01(rng);
    e.completed = true;
    g.lines.push_back(e);
  }
  auto fit = std::make_shared<const PiecewiseInterpolant>(PiecewiseInterpolant::fit(g, 1.0, 1.0));
  return LabeledRegions::around(std::move(fit), margin, l, 0);
}

LabeledRegions constant_regions(double center, double margin) {
  ThresholdGrid g{DepthConfig::make(1, 1.0, 1.0, 0.05, 2), 2, {}};
  for (std::size_t k = 0; k < g.line_count(); ++k) {
    ThresholdEstimate e;
    e.T = center;
    e.completed = true;
    g.lines.push_back(e);
  }
  auto fit = std::make_shared<const PiecewiseInterpolant>(PiecewiseInterpolant::fit(g, 1.0, 1.0));
  return LabeledRegions::around(std::move(fit), margin, 1, 0);
}

}  // namespace

TEST(Merge, FirstMergeIsExact) {
  AggregationState s;
  s = merge_regions(s, constant_regions(0.5, 0.1));
  const std::vector<double> xt{0.3};
  const auto e = s.evaluate(xt);
  EXPECT_EQ(e.lower, 0.4);
  EXPECT_EQ(e.upper, 0.6);
  EXPECT_EQ(s.iteration(), 1u);
}

TEST(Merge, DippingLabelOneIsExcluded) {
  AggregationState s;
  s = merge_regions(s, constant_regions(0.5, 0.1));       // L = 0.4, U = 0.6
  s = merge_regions(s, constant_regions(0.25, 0.05));     // u = 0.3 < L
  const std::vector<double> xt{0.7};
  const auto e = s.evaluate(xt);
  EXPECT_EQ(e.upper, std::nextafter(0.4, kInf));
  EXPECT_EQ(e.lower, 0.4);
  EXPECT_LT(e.lower, e.upper);
}

TEST(Merge, VacuousLeavesStateUnchanged) {
  AggregationState s;
  s = merge_regions(s, constant_regions(0.5, 0.1));
  const auto before = s.evaluate(std::vector<double>{0.5});
  s = merge_regions(s, LabeledRegions::vacuous());
  const auto after = s.evaluate(std::vector<double>{0.5});
  EXPECT_EQ(before.lower, after.lower);
  EXPECT_EQ(before.upper, after.upper);
}

TEST(Merge, EnvelopeAlgebraMatchesSetDefinition) {
  // Check the envelope update against explicit set operations on a fine column.
  Engine rng(8);
  for (int trial = 0; trial < 2000; ++trial) {
    double L = -kInf, U = kInf;
    if (trial % 3) {
      L = uniform01(rng) * 0.6 - 0.1;
      U = L + 0.01 + uniform01(rng) * 0.5;
    }
    const double c = uniform01(rng);
    const double m = 0.02 + 0.3 * uniform01(rng);
    const auto next = merge_envelope({L, U}, c - m, c + m);
    for (int k = 0; k <= 400; ++k) {
      const double z = k / 400.0;
      const bool old0 = z <= L, old1 = z >= U;
      const bool new0 = old0 || (z <= c - m && !old1);
      const bool new1 = old1 || (z >= c + m && !old0);
      ASSERT_EQ(z <= next.lower, new0) << trial << " z=" << z;
      ASSERT_EQ(z >= next.upper, new1) << trial << " z=" << z;
    }
  }
}

TEST(Merge, RandomSequencesStayMonotoneAndDisjoint) {
  Engine rng(21);
  for (int run = 0; run < 50; ++run) {
    AggregationState s;
    std::vector<double> grid;
    for (int k = 0; k < 1000; ++k) grid.push_back(k / 999.0);
    std::vector<AggregationState::Envelope> prev(grid.size(), {-kInf, kInf});
    for (int i = 0; i < 30; ++i) {
      if (uniform01(rng) < 0.2)
        s = merge_regions(s, LabeledRegions::vacuous());
      else
        s = merge_regions(s, random_regions(rng, 1 + rng() % 5, 0.3 * uniform01(rng)));
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const std::vector<double> xt{grid[k]};
        const auto e = s.evaluate(xt);
        ASSERT_LE(e.upper, prev[k].upper);
        ASSERT_GE(e.lower, prev[k].lower);
        ASSERT_LT(e.lower, e.upper);
        prev[k] = e;
      }
    }
  }
}

TEST(Merge, PrefixEvaluation) {
  AggregationState s;
  s = merge_regions(s, constant_regions(0.5, 0.2));
  s = merge_regions(s, constant_regions(0.5, 0.1));
  const std::vector<double> xt{0.5};
  EXPECT_EQ(s.evaluate_prefix(xt, 0).upper, kInf);
  EXPECT_NEAR(s.evaluate_prefix(xt, 1).upper, 0.7, 1e-15);
  EXPECT_NEAR(s.evaluate_prefix(xt, 2).upper, 0.6, 1e-15);
}

TEST(Adaptive, LogFloorIsNatural) {
  EXPECT_EQ(log_floor(1u << 14), 9);
  EXPECT_EQ(log_floor(1u << 16), 11);
  EXPECT_EQ(log_floor(3), 1);
  EXPECT_EQ(log_floor(1u << 18), 12);
}

TEST(Adaptive, ScheduleFor2To14) {
  auto inst = baseline_instance();
  std::vector<std::uint64_t> caps;
  OracleFactory factory = [&](std::size_t i, std::uint64_t cap) {
    caps.push_back(cap);
    return LabelOracle(inst, derive_seed(5, i), cap);
  };
  const auto r = run_adaptive(factory, 1u << 14, 0.05, 1.0);
  ASSERT_EQ(r.records().size(), 81u);
  ASSERT_EQ(caps.size(), 81u);
  for (std::size_t i = 0; i < 81; ++i) {
    EXPECT_EQ(caps[i], 16384u / 81u);
    EXPECT_EQ(r.records()[i].n0, 202u);
    EXPECT_DOUBLE_EQ(r.records()[i].alpha_i, (i + 1) / 9.0);
    EXPECT_DOUBLE_EQ(r.records()[i].delta0, 0.05 / 81.0);
  }
  EXPECT_DOUBLE_EQ(r.records().back().alpha_i, 9.0);
  EXPECT_LE(r.labels_used(), 1u << 14);
}

TEST(Adaptive, VacuousOutputsGiveConstantZero) {
  auto inst = baseline_instance();
  OracleFactory factory = [&](std::size_t i, std::uint64_t cap) {
    return LabelOracle(inst, derive_seed(1, i), cap);
  };
  const auto r = run_adaptive(factory, 1u << 12, 0.05, 1.0);
  const std::vector<double> xt{0.5};
  EXPECT_TRUE(std::isinf(r.g_hat(xt)));
  Engine rng(3);
  for (int i = 0; i < 1000; ++i) {
    const std::vector<double> x{uniform01(rng), uniform01(rng)};
    ASSERT_EQ(r.classify(x), 0);
  }
  const auto risk = excess_risk_mc(
      *inst, [&](std::span<const double> x) { return r.classify(x); }, 100000, 2);
  const auto zero = excess_risk_mc(*inst, [](std::span<const double>) { return 0; }, 100000, 2);
  EXPECT_EQ(risk.estimate, zero.estimate);
}

TEST(Adaptive, ClassifyFollowsUpperEnvelope) {
  AggregationState s;
  s = merge_regions(s, constant_regions(0.5, 0.1));
  AdaptiveResult r(s, {});
  EXPECT_EQ(r.classify(std::vector<double>{0.5, 0.9}), 1);
  EXPECT_EQ(r.classify(std::vector<double>{0.5, 0.55}), 0);  // abstention band
  EXPECT_EQ(r.classify(std::vector<double>{0.5, 0.1}), 0);
  EXPECT_NEAR(r.g_hat(std::vector<double>{0.5}), 0.6, 1e-15);
  EXPECT_FALSE(r.is_vacuous());
}

TEST(Adaptive, GHatClipsBelowZero) {
  AggregationState s;
  s = merge_regions(s, constant_regions(0.0, 0.05));
  AdaptiveResult r(s, {});
  EXPECT_EQ(r.g_hat(std::vector<double>{0.5}), 0.05);
  AggregationState t;
  t = merge_regions(t, constant_regions(0.02, 0.01));
  t = merge_regions(t, constant_regions(-0.5, 0.1));
  AdaptiveResult r2(t, {});
  EXPECT_GE(r2.g_hat(std::vector<double>{0.5}), 0.0);
}

TEST(Adaptive, BudgetAndDeterminism) {
  auto inst = baseline_instance(true);
  for (std::uint64_t n : {3ull, 100ull, 5000ull, 1ull << 16}) {
    std::uint64_t total = 0;
    OracleFactory factory = [&](std::size_t i, std::uint64_t cap) {
      return LabelOracle(inst, derive_seed(9, n, i), cap);
    };
    const auto a = run_adaptive(factory, n, 0.05, 1.0);
    const auto b = run_adaptive(factory, n, 0.05, 1.0);
    for (const auto& rec : a.records()) total += rec.labels_used;
    EXPECT_LE(total, n);
    EXPECT_EQ(a.labels_used(), b.labels_used());
    const std::vector<double> xt{0.37};
    EXPECT_EQ(a.envelope(xt).upper, b.envelope(xt).upper);
  }
}

TEST(Adaptive, BaselineFiniteEstimateAndConfinedErrors) {
  auto inst = baseline_instance();
  const std::uint64_t n = 1u << 16;
  const int lf = log_floor(n);
  const std::uint64_t n0 = n / (lf * lf);
  const double delta0 = 0.05 / (lf * lf);
  // alpha_{i*} is the largest guess not above alpha = 1.
  const double band = correctness_margin(static_cast<double>(n0), delta0, 1.0, 1.0, 1.5, 0.4, 2);
  int finite = 0, escaped = 0;
  for (int s = 0; s < 100; ++s) {
    OracleFactory factory = [&](std::size_t i, std::uint64_t cap) {
      return LabelOracle(inst, derive_seed(s, n, i + 1), cap);
    };
    const auto r = run_adaptive(factory, n, 0.05, 1.0);
    const auto g_hat = [&](std::span<const double> xt) { return r.g_hat(xt); };
    finite += std::isfinite(sup_error(g_hat, *inst, 513)) ? 1 : 0;
    for (int i = 0; i <= 128; ++i)
      for (int j = 0; j <= 128; ++j) {
        const std::vector<double> x{i / 128.0, j / 128.0};
        if (r.classify(x) != inst->bayes(x) && std::fabs(x[1] - 0.5) >= band) ++escaped;
      }
  }
  EXPECT_GE(finite, 95);
  EXPECT_EQ(escaped, 0);
}

TEST(Adaptive, RejectsTinyBudget) {
  auto inst = baseline_instance();
  OracleFactory factory = [&](std::size_t, std::uint64_t cap) { return LabelOracle(inst, 1, cap); };
  EXPECT_THROW(run_adaptive(factory, 2, 0.05, 1.0), std::invalid_argument);
}

TEST(IterationRecord, JsonLine) {
  IterationRecord r{3, 1.0 / 3, 202, 0.05 / 81, 1, 0};
  const auto line = to_json_line(r);
  EXPECT_NE(line.find(R"("i":3)"), std::string::npos);
  EXPECT_NE(line.find(R"("n0":202)"), std::string::npos);
  EXPECT_NE(line.find(R"("l_star":1)"), std::string::npos);
}
