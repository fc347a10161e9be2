#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bal/eval.hpp"
#include "bal/problem.hpp"

namespace bal {

enum class Algorithm { Adaptive, Subroutine, LineSearch, Passive };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);

/// Raised for malformed or inconsistent configuration; names the field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct RunConfig {
  InstanceDescriptor instance;
  Algorithm algorithm = Algorithm::Adaptive;
  std::uint64_t n = 1u << 14;
  double delta = 0.05;
  std::vector<std::uint64_t> seeds{0};
  std::vector<std::uint64_t> budgets;
  std::string output;            // path prefix; empty writes the CSV to stdout
  int audit_resolution = 0;      // 0: 4x the finest grid reached, at least 64
  std::optional<double> subroutine_alpha;  // defaults to instance alpha
  std::vector<double> linesearch_anchor;   // defaults to the centre of the cube face
  double linesearch_epsilon = 1.0 / 16.0;
  int passive_grid_side = 0;     // 0: n^{1/(d+2)} rounded, at least 1
  std::uint64_t mc_samples = 200000;
  bool record_wall_time = false;

  /// Checks every field; throws ConfigError.
  void validate() const;
};

/// Flat JSON document to config. Unknown keys and type mismatches are errors.
RunConfig config_from_json(const std::string& text);
/// Fully resolved config (defaults filled in) as a JSON object string.
std::string config_to_json(const RunConfig& config);

/// Audit grid points per axis actually used for the given result depth.
int resolve_audit_resolution(const RunConfig& config, int finest_grid);
int resolve_passive_grid_side(const RunConfig& config, std::uint64_t n);

/// Set-inclusion audit of one run on the audit grid.
struct AuditRecord {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  bool vacuous = false;
  bool violation = false;   // some labeled grid point on the wrong side of g*
  double half_width = 1.0;  // sup over columns of the unlabeled band around g*
  double sup_error = 0.0;
};

/// One (algorithm, n, seed) cell.
SweepRow run_cell(const RunConfig& config, std::uint64_t n, std::uint64_t seed);
AuditRecord audit_cell(const RunConfig& config, std::uint64_t n, std::uint64_t seed);

/// Number of worker threads from BAL_WORKERS (default 1).
int worker_count();

/// Grid of run_cell over budgets x seeds, rows sorted by (n, seed).
SweepResult run_sweep(const RunConfig& config, int workers);

struct AuditReport {
  std::vector<AuditRecord> records;
  double violation_frequency = 0.0;
  double threshold = 0.0;  // 2 delta
  std::size_t vacuous_runs = 0;
};

AuditReport run_audit(const RunConfig& config, int workers);
std::string to_json(const AuditReport& report);

/// Subcommands. Artifacts go to config.output + suffix, or to `out`.
int cmd_run(const RunConfig& config, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out);
int cmd_audit(const RunConfig& config, std::ostream& out);

}  // namespace bal
