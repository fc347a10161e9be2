#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bal/experiment.hpp"

namespace {

using json = nlohmann::ordered_json;

enum class Kind { Int, Real, Bool, Text, Reals, Ints };

struct Field {
  const char* name;
  Kind kind;
  const char* help;
};

const std::vector<Field> kFields = {
    {"family", Kind::Text, "boundary family: affine | sinusoid | bumpsum"},
    {"d", Kind::Int, "ambient dimension"},
    {"alpha", Kind::Real, "boundary smoothness"},
    {"lambda", Kind::Real, "Hoelder constant (>= 1)"},
    {"kappa", Kind::Real, "noise exponent (>= 1)"},
    {"c", Kind::Real, "noise constant"},
    {"c_eff", Kind::Real, "realized noise constant (>= c)"},
    {"eta_upper", Kind::Real, "upper noise constant"},
    {"marginal", Kind::Text, "uniform | hard_margin | soft_margin"},
    {"delta0", Kind::Real, "hard margin half-width"},
    {"kappa_prime", Kind::Real, "soft margin exponent"},
    {"kappa0", Kind::Real, "soft margin reference exponent"},
    {"instance_seed", Kind::Int, "seed of the random boundary coefficients"},
    {"noiseless", Kind::Bool, "deterministic labels"},
    {"offset", Kind::Real, "boundary centre height"},
    {"slopes", Kind::Reals, "affine slopes, comma separated"},
    {"amplitude", Kind::Real, "sinusoid / bump amplitude"},
    {"frequency", Kind::Real, "sinusoid frequency"},
    {"bumps_per_axis", Kind::Int, "bump count per axis"},
    {"algorithm", Kind::Text, "adaptive | subroutine | linesearch | passive"},
    {"n", Kind::Int, "label budget"},
    {"delta", Kind::Real, "confidence parameter"},
    {"seeds", Kind::Ints, "run seeds, comma separated; a..b expands to a range"},
    {"budgets", Kind::Ints, "sweep budgets, comma separated"},
    {"output", Kind::Text, "artifact path prefix"},
    {"audit_resolution", Kind::Int, "audit grid points per axis (0 = auto)"},
    {"subroutine_alpha", Kind::Real, "smoothness used by the subroutine"},
    {"linesearch_anchor", Kind::Reals, "line-search anchor, comma separated"},
    {"linesearch_epsilon", Kind::Real, "line-search precision"},
    {"passive_grid_side", Kind::Int, "passive histogram cells per axis (0 = auto)"},
    {"mc_samples", Kind::Int, "Monte-Carlo samples for excess risk"},
    {"record_wall_time", Kind::Bool, "fill the wall_time_ms column"},
};

struct Args {
  std::string config_path;
  std::map<std::string, std::vector<std::string>> values;
};

void add_fields(CLI::App* cmd, Args& args) {
  cmd->add_option("--config", args.config_path, "flat JSON config file")->check(CLI::ExistingFile);
  for (const auto& f : kFields) {
    auto* opt = cmd->add_option(std::string("--") + f.name, args.values[f.name], f.help);
    if (f.kind == Kind::Reals || f.kind == Kind::Ints)
      opt->delimiter(',');
    else
      opt->expected(1);
  }
}

json parse_scalar(const std::string& name, Kind kind, const std::string& text) {
  try {
    switch (kind) {
      case Kind::Int:
      case Kind::Ints: {
        std::size_t pos = 0;
        const auto v = std::stoull(text, &pos);
        if (pos != text.size() || text.front() == '-') throw std::invalid_argument(text);
        return v;
      }
      case Kind::Real:
      case Kind::Reals: {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
      }
      case Kind::Bool:
        if (text == "true" || text == "1") return true;
        if (text == "false" || text == "0") return false;
        throw std::invalid_argument(text);
      case Kind::Text:
        return text;
    }
  } catch (const std::exception&) {
  }
  throw bal::ConfigError(name, "cannot parse '" + text + "'");
}

bal::RunConfig resolve(const Args& args) {
  json doc = json::object();
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      doc = json::parse(ss.str());
    } catch (const json::parse_error& e) {
      throw bal::ConfigError("config", e.what());
    }
    if (!doc.is_object()) throw bal::ConfigError("config", "expected a JSON object");
  }
  for (const auto& f : kFields) {
    const auto& raw = args.values.at(f.name);
    if (raw.empty()) continue;
    if (f.kind == Kind::Reals || f.kind == Kind::Ints) {
      json list = json::array();
      for (const auto& item : raw) {
        const auto dots = item.find("..");
        if (f.kind == Kind::Ints && dots != std::string::npos) {
          const auto lo = parse_scalar(f.name, f.kind, item.substr(0, dots)).get<std::uint64_t>();
          const auto hi = parse_scalar(f.name, f.kind, item.substr(dots + 2)).get<std::uint64_t>();
          if (hi < lo) throw bal::ConfigError(f.name, "empty range '" + item + "'");
          for (auto v = lo; v <= hi; ++v) list.push_back(v);
        } else {
          list.push_back(parse_scalar(f.name, f.kind, item));
        }
      }
      doc[f.name] = std::move(list);
    } else {
      doc[f.name] = parse_scalar(f.name, f.kind, raw.back());
    }
  }
  return bal::config_from_json(doc.dump());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active boundary learning experiments"};
  app.require_subcommand(1);

  Args run_args, sweep_args, audit_args;
  auto* run = app.add_subcommand("run", "one (algorithm, n, seed) cell per seed");
  auto* sweep = app.add_subcommand("sweep", "budgets x seeds grid and rate fit");
  auto* audit = app.add_subcommand("audit", "set-inclusion audit across seeds");
  add_fields(run, run_args);
  add_fields(sweep, sweep_args);
  add_fields(audit, audit_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return bal::cmd_run(resolve(run_args), std::cout);
    if (sweep->parsed()) return bal::cmd_sweep(resolve(sweep_args), std::cout);
    if (audit->parsed()) return bal::cmd_audit(resolve(audit_args), std::cout);
  } catch (const bal::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
