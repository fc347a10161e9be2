#include "bal/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "bal/aggregate.hpp"
#include "bal/estimator.hpp"
#include "bal/linesearch.hpp"
#include "bal/oracle.hpp"

namespace bal {

namespace {

using json = nlohmann::ordered_json;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kRiskStream = 0xffffffffULL;
constexpr std::size_t kMaxAuditPoints = std::size_t{1} << 22;

const std::set<std::string> kKnownKeys = {
    "family", "d", "alpha", "lambda", "kappa", "c", "c_eff", "eta_upper", "marginal", "delta0",
    "kappa_prime", "kappa0", "instance_seed", "noiseless", "offset", "slopes", "amplitude",
    "frequency", "bumps_per_axis", "algorithm", "n", "delta", "seeds", "budgets", "output",
    "audit_resolution", "subroutine_alpha", "linesearch_anchor", "linesearch_epsilon",
    "passive_grid_side", "mc_samples", "record_wall_time"};

template <class T>
T get_as(const json& doc, const std::string& key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(key, "wrong type");
  }
}

std::uint64_t get_count(const json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long long>() < 0))
    throw ConfigError(key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

double get_real(const json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

template <class F>
void rethrow_as(const std::string& field, F&& f) {
  try {
    f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
}

std::shared_ptr<const ProblemInstance> build_instance(const RunConfig& config) {
  std::shared_ptr<const ProblemInstance> inst;
  rethrow_as("instance", [&] {
    inst = std::make_shared<const ProblemInstance>(make_instance(config.instance));
  });
  return inst;
}

double wall_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

// Uniform grid of `res` points per axis over [0,1]^{dt}, endpoints included.
template <class F>
void for_each_grid_point(int dt, int res, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(dt), 0);
  std::vector<double> xt(static_cast<std::size_t>(dt));
  const double step = 1.0 / (res - 1);
  while (true) {
    for (int i = 0; i < dt; ++i) xt[i] = idx[i] * step;
    f(std::span<const double>(xt));
    int axis = dt - 1;
    while (axis >= 0 && ++idx[axis] == res) idx[axis--] = 0;
    if (axis < 0) break;
  }
}

struct Envelopes {
  std::function<AggregationState::Envelope(std::span<const double>)> band;
  bool vacuous = true;
  int finest = 0;
};

// Boundary implied by a histogram: bottom edge of the lowest 1-cell per column.
double histogram_boundary(const HistogramClassifier& f, int d, std::span<const double> xt) {
  const int side = f.grid_side();
  std::vector<double> x(xt.begin(), xt.end());
  x.push_back(0.0);
  for (int j = 0; j < side; ++j) {
    x[static_cast<std::size_t>(d - 1)] = (j + 0.5) / side;
    if (f(x)) return static_cast<double>(j) / side;
  }
  return kInf;
}

struct CellOutcome {
  SweepRow row;
  AuditRecord audit;
};

CellOutcome execute(const RunConfig& config, std::uint64_t n, std::uint64_t seed, bool audit) {
  const auto start = std::chrono::steady_clock::now();
  const auto inst = build_instance(config);
  const int d = inst->dims();

  CellOutcome out;
  out.row.n = n;
  out.row.seed = seed;
  out.audit.n = n;
  out.audit.seed = seed;

  Classifier classifier;
  BoundaryEstimate g_hat;
  Envelopes env;
  std::uint64_t used = 0;

  switch (config.algorithm) {
    case Algorithm::Adaptive: {
      OracleFactory factory = [&](std::size_t i, std::uint64_t cap) {
        return LabelOracle(inst, derive_seed(seed, n, i + 1), cap);
      };
      auto result = std::make_shared<AdaptiveResult>(
          run_adaptive(factory, n, config.delta, config.instance.lambda));
      used = result->labels_used();
      classifier = [result](std::span<const double> x) { return result->classify(x); };
      g_hat = [result](std::span<const double> xt) { return result->g_hat(xt); };
      env.band = [result](std::span<const double> xt) { return result->envelope(xt); };
      env.vacuous = result->is_vacuous();
      for (const auto& r : result->state().merged())
        if (!r.is_vacuous()) env.finest = std::max(env.finest, r.interpolant()->grid_count());
      break;
    }
    case Algorithm::Subroutine: {
      LabelOracle oracle(inst, derive_seed(seed, n, 1), n);
      const double alpha = config.subroutine_alpha.value_or(config.instance.alpha);
      auto sub = run_subroutine(oracle, n, config.delta, config.instance.lambda, alpha);
      used = sub.labels_used;
      auto regions = std::make_shared<LabeledRegions>(std::move(sub.regions));
      classifier = [regions](std::span<const double> x) { return regions->in_label1(x) ? 1 : 0; };
      g_hat = [regions](std::span<const double> xt) {
        const double u = regions->upper(xt);
        return u > 1.0 ? kInf : std::max(u, 0.0);
      };
      env.band = [regions](std::span<const double> xt) {
        return AggregationState::Envelope{regions->lower(xt), regions->upper(xt)};
      };
      env.vacuous = regions->is_vacuous();
      if (!env.vacuous) env.finest = regions->interpolant()->grid_count();
      break;
    }
    case Algorithm::LineSearch: {
      LabelOracle oracle(inst, derive_seed(seed, n, 1), n);
      std::vector<double> anchor = config.linesearch_anchor;
      if (anchor.empty()) anchor.assign(static_cast<std::size_t>(d - 1), 0.5);
      LineOracle line(oracle, anchor);
      const auto est = run_line_search(line, config.linesearch_epsilon, config.delta);
      used = est.N;
      const double x_star = inst->g_star(anchor);
      out.row.sup_error = est.completed ? std::abs(est.T - x_star) : kInf;
      const double T = est.T;
      classifier = [T](std::span<const double> x) { return x.back() >= T ? 1 : 0; };
      out.audit.vacuous = !est.completed;
      out.audit.sup_error = out.row.sup_error;
      out.audit.violation = est.completed && std::abs(est.T - x_star) > config.linesearch_epsilon;
      out.audit.half_width = est.completed ? (est.R - est.L) / 2.0 : 1.0;
      break;
    }
    case Algorithm::Passive: {
      LabelOracle oracle(inst, derive_seed(seed, n, 1), n);
      const int side = resolve_passive_grid_side(config, n);
      auto hist = std::make_shared<HistogramClassifier>(passive_baseline(oracle, n, side));
      used = oracle.used();
      classifier = [hist](std::span<const double> x) { return (*hist)(x); };
      g_hat = [hist, d](std::span<const double> xt) { return histogram_boundary(*hist, d, xt); };
      env.finest = side;
      break;
    }
  }

  out.row.labels_used = used;
  if (config.algorithm != Algorithm::LineSearch) {
    const int res = resolve_audit_resolution(config, env.finest);
    out.row.sup_error = sup_error(g_hat, *inst, res);
    out.audit.sup_error = out.row.sup_error;
  }
  out.row.excess_risk =
      excess_risk_mc(*inst, classifier, config.mc_samples, derive_seed(seed, n, kRiskStream))
          .estimate;

  if (audit && config.algorithm != Algorithm::LineSearch) {
    out.audit.vacuous = env.vacuous;
    if (!env.vacuous) {
      const int res = resolve_audit_resolution(config, env.finest);
      const double step = 1.0 / (res - 1);
      double width = 0.0;
      bool bad = false;
      for_each_grid_point(d - 1, res, [&](std::span<const double> xt) {
        const auto band = env.band(xt);
        const double g = inst->g_star(xt);
        // Grid heights labeled 1 start at the first node >= upper; label 0 ends
        // at the last node <= lower.
        const double first_one = std::ceil(band.upper / step) * step;
        const double last_zero = std::floor(band.lower / step) * step;
        if (first_one <= 1.0 && std::max(first_one, 0.0) < g) bad = true;
        if (last_zero >= 0.0 && std::min(last_zero, 1.0) >= g) bad = true;
        width = std::max({width, std::min(band.upper, 1.0) - g, g - std::max(band.lower, 0.0)});
      });
      out.audit.violation = bad;
      out.audit.half_width = std::max(width, 0.0);
    }
  }
  out.row.wall_time_ms = config.record_wall_time ? wall_ms(start) : 0.0;
  return out;
}

template <class T, class F>
std::vector<T> parallel_map(std::size_t count, int workers, F&& f) {
  std::vector<T> results(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = f(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::vector<std::uint64_t> sweep_budgets(const RunConfig& config) {
  return config.budgets.empty() ? std::vector<std::uint64_t>{config.n} : config.budgets;
}

json meta_document(const RunConfig& config, const std::string& command) {
  json meta;
  meta["command"] = command;
  meta["config"] = json::parse(config_to_json(config));
  meta["engine"] = std::string(kEngineName);
  meta["log_base"] = "e";
  meta["seed_scheme"] = "derive_seed(seed, n, iteration)";
  return meta;
}

void emit(const RunConfig& config, const std::string& suffix, const std::string& body,
          std::ostream& fallback) {
  if (config.output.empty()) {
    fallback << body;
    return;
  }
  std::ofstream f(config.output + suffix, std::ios::binary);
  if (!f) throw ConfigError("output", "cannot open " + config.output + suffix);
  f << body;
}

std::string csv_body(const SweepResult& sweep) {
  std::ostringstream os;
  write_csv(os, sweep);
  return os.str();
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Adaptive: return "adaptive";
    case Algorithm::Subroutine: return "subroutine";
    case Algorithm::LineSearch: return "linesearch";
    case Algorithm::Passive: return "passive";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "adaptive") return Algorithm::Adaptive;
  if (name == "subroutine") return Algorithm::Subroutine;
  if (name == "linesearch") return Algorithm::LineSearch;
  if (name == "passive") return Algorithm::Passive;
  throw ConfigError("algorithm", "unknown algorithm '" + name + "'");
}

void RunConfig::validate() const {
  const auto& in = instance;
  if (in.d < 2 || in.d > 8) throw ConfigError("d", "must lie in [2, 8]");
  rethrow_as("alpha", [&] { SmoothnessParams{in.alpha, in.lambda}.validate(); });
  rethrow_as("kappa", [&] { NoiseParams{in.kappa, in.c}.validate(); });
  rethrow_as("marginal", [&] { in.marginal.validate(); });
  if (!in.slopes.empty() && in.slopes.size() != static_cast<std::size_t>(in.d - 1))
    throw ConfigError("slopes", "needs d - 1 entries");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta", "must lie in (0, 1)");
  if (seeds.empty()) throw ConfigError("seeds", "needs at least one seed");
  if (algorithm == Algorithm::Adaptive && n < 3) throw ConfigError("n", "adaptive needs n >= 3");
  if (n == 0) throw ConfigError("n", "must be >= 1");
  for (auto b : budgets)
    if (b < 3) throw ConfigError("budgets", "every budget must be >= 3");
  if (audit_resolution == 1 || audit_resolution < 0)
    throw ConfigError("audit_resolution", "must be 0 (auto) or >= 2");
  if (subroutine_alpha && !(*subroutine_alpha > 0.0))
    throw ConfigError("subroutine_alpha", "must be positive");
  if (!linesearch_anchor.empty()) {
    if (linesearch_anchor.size() != static_cast<std::size_t>(in.d - 1))
      throw ConfigError("linesearch_anchor", "needs d - 1 entries");
    for (double a : linesearch_anchor)
      if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("linesearch_anchor", "must lie in [0, 1]");
  }
  if (!(linesearch_epsilon > 0.0 && linesearch_epsilon < 1.0))
    throw ConfigError("linesearch_epsilon", "must lie in (0, 1)");
  if (passive_grid_side < 0) throw ConfigError("passive_grid_side", "must be >= 0");
  if (algorithm == Algorithm::Passive) {
    const auto check = [&](std::uint64_t budget, const char* field) {
      const double cells = std::pow(resolve_passive_grid_side(*this, budget), in.d);
      if (static_cast<double>(budget) < cells)
        throw ConfigError(field, "passive needs n >= passive_grid_side^d");
    };
    if (budgets.empty()) check(n, "n");
    for (auto b : budgets) check(b, "budgets");
  }
  if (mc_samples == 0) throw ConfigError("mc_samples", "must be >= 1");
  build_instance(*this);
}

RunConfig config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config", "expected a JSON object");
  for (const auto& item : doc.items())
    if (!kKnownKeys.count(item.key())) throw ConfigError(item.key(), "unknown key");

  RunConfig c;
  auto& in = c.instance;
  const auto has = [&](const char* k) { return doc.contains(k) && !doc.at(k).is_null(); };
  if (has("family")) {
    const auto name = get_as<std::string>(doc, "family");
    rethrow_as("family", [&] { in.family = boundary_family_from_string(name); });
  }
  if (has("d")) in.d = static_cast<int>(get_count(doc, "d"));
  if (has("alpha")) in.alpha = get_real(doc, "alpha");
  if (has("lambda")) in.lambda = get_real(doc, "lambda");
  if (has("kappa")) in.kappa = get_real(doc, "kappa");
  if (has("c")) in.c = get_real(doc, "c");
  if (has("c_eff")) in.c_eff = get_real(doc, "c_eff");
  if (has("eta_upper")) in.eta_upper = get_real(doc, "eta_upper");
  if (has("marginal")) {
    const auto name = get_as<std::string>(doc, "marginal");
    rethrow_as("marginal", [&] { in.marginal.kind = marginal_kind_from_string(name); });
  }
  if (has("delta0")) in.marginal.delta0 = get_real(doc, "delta0");
  if (has("kappa_prime")) in.marginal.kappa_prime = get_real(doc, "kappa_prime");
  if (has("kappa0")) in.marginal.kappa0 = get_real(doc, "kappa0");
  if (has("instance_seed")) in.seed = get_count(doc, "instance_seed");
  if (has("noiseless")) in.noiseless = get_as<bool>(doc, "noiseless");
  if (has("offset")) in.offset = get_real(doc, "offset");
  if (has("slopes")) in.slopes = get_as<std::vector<double>>(doc, "slopes");
  if (has("amplitude")) in.amplitude = get_real(doc, "amplitude");
  if (has("frequency")) in.frequency = get_real(doc, "frequency");
  if (has("bumps_per_axis")) in.bumps_per_axis = static_cast<int>(get_count(doc, "bumps_per_axis"));

  if (has("algorithm")) c.algorithm = algorithm_from_string(get_as<std::string>(doc, "algorithm"));
  if (has("n")) c.n = get_count(doc, "n");
  if (has("delta")) c.delta = get_real(doc, "delta");
  if (has("seeds")) c.seeds = get_as<std::vector<std::uint64_t>>(doc, "seeds");
  if (has("budgets")) c.budgets = get_as<std::vector<std::uint64_t>>(doc, "budgets");
  if (has("output")) c.output = get_as<std::string>(doc, "output");
  if (has("audit_resolution")) c.audit_resolution = static_cast<int>(get_count(doc, "audit_resolution"));
  if (has("subroutine_alpha")) c.subroutine_alpha = get_real(doc, "subroutine_alpha");
  if (has("linesearch_anchor"))
    c.linesearch_anchor = get_as<std::vector<double>>(doc, "linesearch_anchor");
  if (has("linesearch_epsilon")) c.linesearch_epsilon = get_real(doc, "linesearch_epsilon");
  if (has("passive_grid_side"))
    c.passive_grid_side = static_cast<int>(get_count(doc, "passive_grid_side"));
  if (has("mc_samples")) c.mc_samples = get_count(doc, "mc_samples");
  if (has("record_wall_time")) c.record_wall_time = get_as<bool>(doc, "record_wall_time");
  c.validate();
  return c;
}

std::string config_to_json(const RunConfig& c) {
  const auto& in = c.instance;
  json j;
  j["family"] = to_string(in.family);
  j["d"] = in.d;
  j["alpha"] = in.alpha;
  j["lambda"] = in.lambda;
  j["kappa"] = in.kappa;
  j["c"] = in.c;
  const double c_eff = in.c_eff.value_or(in.c);
  j["c_eff"] = c_eff;
  j["eta_upper"] = in.eta_upper.value_or(c_eff);
  j["marginal"] = to_string(in.marginal.kind);
  j["delta0"] = in.marginal.delta0;
  j["kappa_prime"] = in.marginal.kappa_prime;
  j["kappa0"] = in.marginal.kappa0;
  j["instance_seed"] = in.seed;
  j["noiseless"] = in.noiseless;
  j["offset"] = in.offset;
  j["slopes"] = in.slopes.empty() ? std::vector<double>(static_cast<std::size_t>(in.d - 1), 0.0)
                                  : in.slopes;
  if (in.amplitude)
    j["amplitude"] = *in.amplitude;
  else
    j["amplitude"] = nullptr;
  j["frequency"] = in.frequency;
  j["bumps_per_axis"] = in.bumps_per_axis;
  j["algorithm"] = to_string(c.algorithm);
  j["n"] = c.n;
  j["delta"] = c.delta;
  j["seeds"] = c.seeds;
  j["budgets"] = c.budgets;
  j["output"] = c.output;
  j["audit_resolution"] = c.audit_resolution;
  j["subroutine_alpha"] = c.subroutine_alpha.value_or(in.alpha);
  j["linesearch_anchor"] = c.linesearch_anchor.empty()
                               ? std::vector<double>(static_cast<std::size_t>(in.d - 1), 0.5)
                               : c.linesearch_anchor;
  j["linesearch_epsilon"] = c.linesearch_epsilon;
  j["passive_grid_side"] = resolve_passive_grid_side(c, c.n);
  j["mc_samples"] = c.mc_samples;
  j["record_wall_time"] = c.record_wall_time;
  return j.dump();
}

int resolve_audit_resolution(const RunConfig& config, int finest_grid) {
  if (config.audit_resolution >= 2) return config.audit_resolution;
  int res = std::max(64, 4 * finest_grid + 1);
  const int dt = config.instance.d - 1;
  while (res > 2 && std::pow(static_cast<double>(res), dt) > static_cast<double>(kMaxAuditPoints))
    res /= 2;
  return res;
}

int resolve_passive_grid_side(const RunConfig& config, std::uint64_t n) {
  if (config.passive_grid_side > 0) return config.passive_grid_side;
  const int d = config.instance.d;
  int side = std::max(1, static_cast<int>(std::lround(std::pow(static_cast<double>(n), 1.0 / (d + 2)))));
  while (side > 1 && std::pow(side, d) > static_cast<double>(n)) --side;
  return side;
}

SweepRow run_cell(const RunConfig& config, std::uint64_t n, std::uint64_t seed) {
  return execute(config, n, seed, false).row;
}

AuditRecord audit_cell(const RunConfig& config, std::uint64_t n, std::uint64_t seed) {
  if (config.algorithm == Algorithm::Passive)
    throw ConfigError("algorithm", "audit supports adaptive, subroutine and linesearch");
  return execute(config, n, seed, true).audit;
}

int worker_count() {
  const char* env = std::getenv("BAL_WORKERS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw ConfigError("BAL_WORKERS", "must be a positive integer");
  return static_cast<int>(std::min<long>(v, 256));
}

SweepResult run_sweep(const RunConfig& config, int workers) {
  const auto budgets = sweep_budgets(config);
  const std::size_t seeds = config.seeds.size();
  SweepResult sweep;
  sweep.rows = parallel_map<SweepRow>(budgets.size() * seeds, workers, [&](std::size_t k) {
    return run_cell(config, budgets[k / seeds], config.seeds[k % seeds]);
  });
  sweep.sort();
  return sweep;
}

AuditReport run_audit(const RunConfig& config, int workers) {
  if (config.algorithm == Algorithm::Passive)
    throw ConfigError("algorithm", "audit supports adaptive, subroutine and linesearch");
  const auto budgets = sweep_budgets(config);
  const std::size_t seeds = config.seeds.size();
  AuditReport report;
  report.records = parallel_map<AuditRecord>(budgets.size() * seeds, workers, [&](std::size_t k) {
    return audit_cell(config, budgets[k / seeds], config.seeds[k % seeds]);
  });
  std::size_t violations = 0;
  for (const auto& r : report.records) {
    violations += r.violation ? 1 : 0;
    report.vacuous_runs += r.vacuous ? 1 : 0;
  }
  report.violation_frequency =
      static_cast<double>(violations) / static_cast<double>(report.records.size());
  report.threshold = 2.0 * config.delta;
  return report;
}

std::string to_json(const AuditReport& report) {
  json j;
  j["runs"] = report.records.size();
  j["violation_frequency"] = report.violation_frequency;
  j["threshold"] = report.threshold;
  j["within_threshold"] = report.violation_frequency <= report.threshold;
  j["vacuous_runs"] = report.vacuous_runs;
  json rows = json::array();
  for (const auto& r : report.records) {
    json row;
    row["n"] = r.n;
    row["seed"] = r.seed;
    row["vacuous"] = r.vacuous;
    row["violation"] = r.violation;
    row["half_width"] = r.half_width;
    if (std::isfinite(r.sup_error))
      row["sup_error"] = r.sup_error;
    else
      row["sup_error"] = nullptr;
    rows.push_back(std::move(row));
  }
  j["records"] = std::move(rows);
  return j.dump(2) + "\n";
}

int cmd_run(const RunConfig& config, std::ostream& out) {
  RunConfig one = config;
  one.budgets.clear();
  SweepResult result = run_sweep(one, worker_count());
  emit(config, ".csv", csv_body(result), out);
  if (!config.output.empty())
    emit(config, ".meta.json", meta_document(config, "run").dump(2) + "\n", out);
  return 0;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
  std::set<std::uint64_t> distinct(config.budgets.begin(), config.budgets.end());
  if (distinct.size() < 4) throw ConfigError("budgets", "sweep needs at least 4 distinct budgets");
  if (config.seeds.size() < 20) throw ConfigError("seeds", "sweep needs at least 20 seeds");
  SweepResult result = run_sweep(config, worker_count());
  emit(config, ".csv", csv_body(result), out);

  const auto& in = config.instance;
  json rate;
  try {
    rate = json::parse(to_json(fit_rate(result, in.alpha, in.kappa, in.d)));
  } catch (const std::invalid_argument& e) {
    rate["slope"] = nullptr;
    rate["intercept"] = nullptr;
    rate["r2"] = nullptr;
    rate["theoretical"] = theoretical_exponent(in.alpha, in.kappa, in.d);
    rate["error"] = e.what();
  }
  if (config.output.empty()) {
    out << rate.dump() << '\n';
  } else {
    emit(config, ".rate.json", rate.dump(2) + "\n", out);
    emit(config, ".meta.json", meta_document(config, "sweep").dump(2) + "\n", out);
  }
  return 0;
}

int cmd_audit(const RunConfig& config, std::ostream& out) {
  const auto report = run_audit(config, worker_count());
  emit(config, ".audit.json", to_json(report), out);
  if (!config.output.empty())
    emit(config, ".meta.json", meta_document(config, "audit").dump(2) + "\n", out);
  return 0;
}

}  // namespace bal
