#include "bal/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bal {

namespace {

constexpr double kMaxNoiseConstant = 0.45;
constexpr double kCertTolerance = 1e-12;

[[noreturn]] void reject(const std::string& what) { throw std::invalid_argument(what); }

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

int floor_strict(double alpha) { return static_cast<int>(std::ceil(alpha)) - 1; }
int ceil_int(double alpha) { return static_cast<int>(std::ceil(alpha)); }

void SmoothnessParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) reject("alpha must be a positive finite real");
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) reject("lambda must be >= 1");
}

void NoiseParams::validate() const {
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) reject("kappa must be >= 1");
  if (!(c > 0.0) || c > kMaxNoiseConstant) reject("c must lie in (0, 0.45]");
}

std::string to_string(BoundaryFamily family) {
  switch (family) {
    case BoundaryFamily::Affine: return "affine";
    case BoundaryFamily::Sinusoid: return "sinusoid";
    case BoundaryFamily::BumpSum: return "bumpsum";
  }
  return "?";
}

BoundaryFamily boundary_family_from_string(const std::string& name) {
  if (name == "affine") return BoundaryFamily::Affine;
  if (name == "sinusoid") return BoundaryFamily::Sinusoid;
  if (name == "bumpsum") return BoundaryFamily::BumpSum;
  reject("family: unknown boundary family '" + name + "'");
}

// Taylor remainder of degree m for sin(L x + phi) at step u = L h is bounded by
// min(u^{m+1}/(m+1)!, 2 u^m / m!). For every bracket of beta sharing the same
// Taylor degree the worst beta is the largest one, since h <= 1.
double BoundaryFn::sinusoid_unit_holder(double alpha, double frequency) {
  const double L = 2.0 * std::numbers::pi * frequency;
  double worst = 0.0;
  for (int m = 0; m <= floor_strict(alpha); ++m) {
    const double beta = std::min(alpha, static_cast<double>(m + 1));
    const double h_cross = std::min(1.0, 2.0 * (m + 1) / L);
    const double value =
        std::pow(L, m + 1) * std::pow(h_cross, m + 1 - beta) / factorial(m + 1);
    worst = std::max(worst, value);
  }
  return worst;
}

BoundaryFn BoundaryFn::create(const BoundarySpec& spec, std::uint64_t seed) {
  spec.smoothness.validate();
  if (spec.dims < 2) reject("d must be >= 2");
  const int dt = spec.dims - 1;
  const double lambda = spec.smoothness.lambda;
  const double alpha = spec.smoothness.alpha;
  const double room = std::min(spec.offset, 1.0 - spec.offset);
  if (!(room >= 0.0)) reject("offset must lie in [0, 1]");

  BoundaryFn g;
  g.spec_ = spec;
  Engine rng(derive_seed(seed, 0xb0u));

  switch (spec.family) {
    case BoundaryFamily::Affine: {
      if (g.spec_.slopes.empty()) g.spec_.slopes.assign(dt, 0.0);
      if (static_cast<int>(g.spec_.slopes.size()) != dt) reject("slope: expected d-1 slopes");
      double total = 0.0;
      for (double s : g.spec_.slopes) total += std::abs(s);
      if (total > lambda * (1.0 + kCertTolerance))
        reject("slope: sum of |slopes| exceeds lambda, Hoelder membership fails");
      if (total / 2.0 > room + kCertTolerance) reject("slope: boundary leaves [0, 1]");
      g.holder_constant_ = total;
      g.amplitude_ = total / 2.0;
      break;
    }
    case BoundaryFamily::Sinusoid: {
      if (!(spec.frequency > 0.0)) reject("frequency must be positive");
      const double unit = sinusoid_unit_holder(alpha, spec.frequency);
      double amp = spec.amplitude.value_or(std::min(lambda / unit, room));
      if (amp < 0.0) reject("amplitude must be non-negative");
      if (amp * unit > lambda * (1.0 + kCertTolerance))
        reject("amplitude: exceeds the Hoelder budget lambda for this alpha and frequency");
      if (amp > room + kCertTolerance) reject("amplitude: boundary leaves [0, 1]");
      g.amplitude_ = amp;
      g.holder_constant_ = amp * unit;
      g.phases_.resize(dt);
      for (auto& p : g.phases_) p = 2.0 * std::numbers::pi * uniform01(rng);
      break;
    }
    case BoundaryFamily::BumpSum: {
      if (alpha > 1.0) reject("alpha: bumpsum boundaries are only certified for alpha <= 1");
      if (spec.bumps_per_axis < 1) reject("bumps must be >= 1");
      const double w = 0.5 / spec.bumps_per_axis;
      const double ww = std::pow(w, alpha);
      // Disjoint supports: |g(x) - g(y)| <= 2 h ||x - y||^alpha.
      double amp = spec.amplitude.value_or(std::min(lambda * ww / 2.0, room));
      if (amp < 0.0) reject("amplitude must be non-negative");
      if (2.0 * amp / ww > lambda * (1.0 + kCertTolerance))
        reject("amplitude: exceeds the Hoelder budget lambda for this alpha and bump width");
      if (amp > room + kCertTolerance) reject("amplitude: boundary leaves [0, 1]");
      g.amplitude_ = amp;
      g.bump_height_ = amp / ww;
      g.holder_constant_ = 2.0 * g.bump_height_;
      std::size_t count = 1;
      for (int i = 0; i < dt; ++i) count *= static_cast<std::size_t>(spec.bumps_per_axis);
      g.signs_.resize(count);
      for (auto& s : g.signs_) s = (rng() & 1u) ? 1.0 : -1.0;
      break;
    }
  }
  return g;
}

double BoundaryFn::operator()(std::span<const double> xt) const {
  const int dt = spec_.dims - 1;
  switch (spec_.family) {
    case BoundaryFamily::Affine: {
      double v = spec_.offset;
      for (int i = 0; i < dt; ++i) v += spec_.slopes[i] * (xt[i] - 0.5);
      return v;
    }
    case BoundaryFamily::Sinusoid: {
      const double L = 2.0 * std::numbers::pi * spec_.frequency;
      double s = 0.0;
      for (int i = 0; i < dt; ++i) s += std::sin(L * xt[i] + phases_[i]);
      return spec_.offset + amplitude_ * s / dt;
    }
    case BoundaryFamily::BumpSum: {
      const int k = spec_.bumps_per_axis;
      const double w = 0.5 / k;
      std::size_t index = 0;
      double r = 0.0;
      for (int i = 0; i < dt; ++i) {
        const int j = std::clamp(static_cast<int>(std::floor(xt[i] * k)), 0, k - 1);
        index = index * k + j;
        r = std::max(r, std::abs(xt[i] - (2 * j + 1) * w));
      }
      const double reach = std::max(0.0, w - r);
      return spec_.offset + signs_[index] * bump_height_ * std::pow(reach, spec_.smoothness.alpha);
    }
  }
  return 0.0;
}

double BoundaryFn::taylor(std::span<const double> y, std::span<const double> x, int degree) const {
  const int dt = spec_.dims - 1;
  switch (spec_.family) {
    case BoundaryFamily::Affine:
      return degree >= 1 ? (*this)(x) : (*this)(y);
    case BoundaryFamily::Sinusoid: {
      const double L = 2.0 * std::numbers::pi * spec_.frequency;
      double s = 0.0;
      for (int i = 0; i < dt; ++i) {
        const double h = x[i] - y[i];
        double power = 1.0;  // (L h)^k / k!
        for (int k = 0; k <= degree; ++k) {
          s += power * std::sin(L * y[i] + phases_[i] + k * std::numbers::pi / 2.0);
          power *= L * h / (k + 1);
        }
      }
      return spec_.offset + amplitude_ * s / dt;
    }
    case BoundaryFamily::BumpSum:
      // Only alpha <= 1 is supported, where the expansion is the constant term.
      return (*this)(y);
  }
  return 0.0;
}

void Marginal::validate() const {
  switch (kind) {
    case Kind::Uniform: break;
    case Kind::HardMargin:
      if (!(delta0 > 0.0) || delta0 >= 1.0) reject("margin_delta0 must lie in (0, 1)");
      break;
    case Kind::SoftMargin:
      if (!(kappa_prime - kappa0 + 1.0 > 0.0))
        reject("margin_kappa_prime: need kappa_prime - kappa0 + 1 > 0");
      break;
  }
}

std::string to_string(Marginal::Kind kind) {
  switch (kind) {
    case Marginal::Kind::Uniform: return "uniform";
    case Marginal::Kind::HardMargin: return "hard_margin";
    case Marginal::Kind::SoftMargin: return "soft_margin";
  }
  return "?";
}

Marginal::Kind marginal_kind_from_string(const std::string& name) {
  if (name == "uniform") return Marginal::Kind::Uniform;
  if (name == "hard_margin") return Marginal::Kind::HardMargin;
  if (name == "soft_margin") return Marginal::Kind::SoftMargin;
  reject("marginal: unknown marginal '" + name + "'");
}

ProblemInstance::ProblemInstance(BoundaryFn boundary, NoiseParams noise, double c_eff,
                                 double eta_upper, Marginal marginal, bool noiseless)
    : boundary_(std::move(boundary)),
      noise_(noise),
      c_eff_(c_eff),
      eta_upper_(eta_upper),
      marginal_(marginal),
      noiseless_(noiseless) {
  noise_.validate();
  marginal_.validate();
  if (!(c_eff_ >= noise_.c) || c_eff_ > kMaxNoiseConstant)
    reject("c_eff must lie in [c, 0.45]");
  if (!(eta_upper_ >= c_eff_)) reject("eta_upper must be >= c_eff");
  if (marginal_.kind == Marginal::Kind::SoftMargin &&
      marginal_.kappa0 > std::min(noise_.kappa, marginal_.kappa_prime + 1.0))
    reject("margin_kappa0 must be <= min(kappa, kappa_prime + 1)");
}

double ProblemInstance::offset_from_boundary(std::span<const double> x) const {
  const auto d = static_cast<std::size_t>(dims());
  return x[d - 1] - boundary_(x.first(d - 1));
}

double ProblemInstance::eta_from_offset(double dist) const {
  if (noiseless_) return dist >= 0.0 ? 1.0 : 0.0;
  if (dist == 0.0) return 0.5;
  const double mag = c_eff_ * std::pow(std::abs(dist), noise_.kappa - 1.0);
  return dist > 0.0 ? 0.5 + mag : 0.5 - mag;
}

double ProblemInstance::eta(std::span<const double> x) const {
  return eta_from_offset(offset_from_boundary(x));
}

void ProblemInstance::sample_marginal(Engine& rng, std::span<double> out) const {
  const auto d = static_cast<std::size_t>(dims());
  auto xt = out.first(d - 1);
  switch (marginal_.kind) {
    case Marginal::Kind::Uniform:
      for (auto& v : out) v = uniform01(rng);
      return;
    case Marginal::Kind::HardMargin: {
      // Uniform on {|x_d - g*| > delta0}: accept a column with probability
      // equal to its admissible length, then draw inside it.
      for (int attempt = 0; attempt < 1'000'000; ++attempt) {
        for (auto& v : xt) v = uniform01(rng);
        const double g = boundary_(xt);
        const double below = std::max(0.0, g - marginal_.delta0);
        const double above = std::max(0.0, 1.0 - g - marginal_.delta0);
        const double total = below + above;
        if (uniform01(rng) >= total) continue;
        const double u = uniform01(rng) * total;
        out[d - 1] = u < below ? u : g + marginal_.delta0 + (u - below);
        return;
      }
      throw std::runtime_error("hard margin marginal has no mass");
    }
    case Marginal::Kind::SoftMargin: {
      // Column density proportional to |x_d - g*|^{p-1}.
      const double p = marginal_.kappa_prime - marginal_.kappa0 + 1.0;
      for (auto& v : xt) v = uniform01(rng);
      const double g = boundary_(xt);
      const double below = std::pow(g, p);
      const double above = std::pow(1.0 - g, p);
      const bool go_below = uniform01(rng) * (below + above) < below;
      const double len = go_below ? g : 1.0 - g;
      const double dist = len * std::pow(uniform01(rng), 1.0 / p);
      out[d - 1] = go_below ? g - dist : g + dist;
      return;
    }
  }
}

ProblemInstance make_instance(const InstanceDescriptor& desc) {
  BoundarySpec spec;
  spec.family = desc.family;
  spec.dims = desc.d;
  spec.smoothness = {desc.alpha, desc.lambda};
  spec.offset = desc.offset;
  spec.slopes = desc.slopes;
  spec.amplitude = desc.amplitude;
  spec.frequency = desc.frequency;
  spec.bumps_per_axis = desc.bumps_per_axis;
  auto boundary = BoundaryFn::create(spec, desc.seed);
  const double c_eff = desc.c_eff.value_or(desc.c);
  const double upper = desc.eta_upper.value_or(c_eff);
  return ProblemInstance(std::move(boundary), NoiseParams{desc.kappa, desc.c}, c_eff, upper,
                         desc.marginal, desc.noiseless);
}

RiskEstimate excess_risk_mc(const ProblemInstance& instance, const Classifier& classifier,
                            std::uint64_t n_mc, std::uint64_t seed) {
  if (n_mc == 0) throw std::invalid_argument("n_mc must be >= 1");
  Engine rng(derive_seed(seed, 0x715cu));
  std::vector<double> x(static_cast<std::size_t>(instance.dims()));
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t i = 0; i < n_mc; ++i) {
    instance.sample_marginal(rng, x);
    const double dist = instance.offset_from_boundary(x);
    const int bayes = dist >= 0.0 ? 1 : 0;
    if (classifier(x) != bayes) {
      const double loss = std::abs(1.0 - 2.0 * instance.eta_from_offset(dist));
      sum += loss;
      sum_sq += loss * loss;
    }
  }
  const double n = static_cast<double>(n_mc);
  const double mean = sum / n;
  const double var = n > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1)) : 0.0;
  return {mean, 1.96 * std::sqrt(var / n)};
}

}  // namespace bal
