#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bal/rng.hpp"

namespace bal {

/// Largest integer strictly smaller than alpha (so floor_strict(2.0) == 1).
int floor_strict(double alpha);
int ceil_int(double alpha);

struct SmoothnessParams {
  double alpha = 1.0;
  double lambda = 1.0;

  void validate() const;
};

struct NoiseParams {
  double kappa = 1.5;
  double c = 0.4;

  void validate() const;
};

enum class BoundaryFamily { Affine, Sinusoid, BumpSum };

std::string to_string(BoundaryFamily family);
BoundaryFamily boundary_family_from_string(const std::string& name);

/// Family coefficients. Fields that do not apply to the chosen family are
/// ignored. An unset amplitude is auto-scaled to the largest value that keeps
/// the boundary inside Sigma(lambda, alpha) and inside [0, 1].
struct BoundarySpec {
  BoundaryFamily family = BoundaryFamily::Affine;
  int dims = 2;
  SmoothnessParams smoothness;
  double offset = 0.5;
  std::vector<double> slopes;         // Affine; empty means all zero
  std::optional<double> amplitude;    // Sinusoid, BumpSum
  double frequency = 1.0;             // Sinusoid
  int bumps_per_axis = 2;             // BumpSum
};

/// Ground-truth boundary g*: [0,1]^{d-1} -> [0,1].
class BoundaryFn {
 public:
  /// Throws std::invalid_argument when the requested coefficients cannot be
  /// certified to lie in Sigma(lambda, alpha).
  static BoundaryFn create(const BoundarySpec& spec, std::uint64_t seed);

  double operator()(std::span<const double> xt) const;

  /// Degree-`degree` Taylor polynomial of g around y, evaluated at x.
  double taylor(std::span<const double> y, std::span<const double> x, int degree) const;

  /// Hoelder constant of the realized function (smallest lambda for which the
  /// construction certifies membership).
  double holder_constant() const { return holder_constant_; }

  BoundaryFamily family() const { return spec_.family; }
  int dims() const { return spec_.dims; }
  const SmoothnessParams& smoothness() const { return spec_.smoothness; }
  double amplitude() const { return amplitude_; }
  const BoundarySpec& spec() const { return spec_; }

  /// Hoelder constant of x -> sin(2 pi omega x) with respect to every
  /// beta <= alpha (Taylor remainder form), maximised over beta.
  static double sinusoid_unit_holder(double alpha, double frequency);

 private:
  BoundarySpec spec_;
  double amplitude_ = 0.0;
  double holder_constant_ = 0.0;
  std::vector<double> phases_;   // Sinusoid
  std::vector<double> signs_;    // BumpSum, one per bump
  double bump_height_ = 0.0;     // BumpSum: h in h * (w - r)^alpha
};

struct Marginal {
  enum class Kind { Uniform, HardMargin, SoftMargin };
  Kind kind = Kind::Uniform;
  double delta0 = 0.0;       // HardMargin
  double kappa_prime = 2.0;  // SoftMargin
  double kappa0 = 1.0;       // SoftMargin

  void validate() const;
};

std::string to_string(Marginal::Kind kind);
Marginal::Kind marginal_kind_from_string(const std::string& name);

/// Flat instance descriptor; the CLI serializes this verbatim.
struct InstanceDescriptor {
  BoundaryFamily family = BoundaryFamily::Affine;
  int d = 2;
  double alpha = 1.0;
  double lambda = 1.0;
  double kappa = 1.5;
  double c = 0.4;
  std::optional<double> c_eff;      // defaults to c
  std::optional<double> eta_upper;  // C; defaults to c_eff
  Marginal marginal;
  std::uint64_t seed = 0;
  bool noiseless = false;           // eta = 1{x_d >= g*}; test variant
  double offset = 0.5;
  std::vector<double> slopes;
  std::optional<double> amplitude;
  double frequency = 1.0;
  int bumps_per_axis = 2;
};

/// Synthetic classification problem with known boundary and regression
/// function. Immutable once built.
class ProblemInstance {
 public:
  ProblemInstance(BoundaryFn boundary, NoiseParams noise, double c_eff, double eta_upper,
                  Marginal marginal, bool noiseless = false);

  int dims() const { return boundary_.dims(); }
  const BoundaryFn& boundary() const { return boundary_; }
  const NoiseParams& noise() const { return noise_; }
  double c_eff() const { return c_eff_; }
  double eta_upper() const { return eta_upper_; }
  const Marginal& marginal() const { return marginal_; }
  bool noiseless() const { return noiseless_; }

  double g_star(std::span<const double> xt) const { return boundary_(xt); }

  /// Signed vertical distance x_d - g*(x~).
  double offset_from_boundary(std::span<const double> x) const;

  double eta(std::span<const double> x) const;
  /// eta given the signed vertical distance; avoids re-evaluating g*.
  double eta_from_offset(double dist) const;

  int bayes(std::span<const double> x) const { return offset_from_boundary(x) >= 0.0 ? 1 : 0; }

  /// Draws x from P_X into `out` (size d).
  void sample_marginal(Engine& rng, std::span<double> out) const;

 private:
  BoundaryFn boundary_;
  NoiseParams noise_;
  double c_eff_;
  double eta_upper_;
  Marginal marginal_;
  bool noiseless_;
};

ProblemInstance make_instance(const InstanceDescriptor& desc);

using Classifier = std::function<int(std::span<const double>)>;

struct RiskEstimate {
  double estimate = 0.0;
  double half_width = 0.0;  // 95% normal approximation
};

/// Monte-Carlo estimate of R(f) - R(f*) under the instance's marginal.
RiskEstimate excess_risk_mc(const ProblemInstance& instance, const Classifier& classifier,
                            std::uint64_t n_mc, std::uint64_t seed);

}  // namespace bal
