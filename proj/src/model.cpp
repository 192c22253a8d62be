#include "spinbath/model.hpp"

#include <cmath>
#include <cstring>
#include <limits>

#include "spinbath/rng.hpp"

namespace spinbath {

namespace {

void require_finite(double v, const char* field) {
  if (!std::isfinite(v))
    throw validation_error(field, std::string(field) + " must be finite");
}

// log(2 cosh x) without overflow.
double log_2cosh(double x) {
  const double a = std::fabs(x);
  return a + std::log1p(std::exp(-2.0 * a));
}

}  // namespace

ModelSpec ModelSpec::build(double delta, double beta, std::vector<Mode> modes,
                           SystemState initial, bool zero_temperature) {
  require_finite(delta, "delta");
  if (!zero_temperature) {
    require_finite(beta, "beta");
    if (beta < 0.0)
      throw validation_error("beta", "beta must be >= 0 (got negative)");
  }
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (!std::isfinite(modes[k].omega))
      throw validation_error("modes", "omega_" + std::to_string(k) + " must be finite");
    if (!std::isfinite(modes[k].g))
      throw validation_error("modes", "g_" + std::to_string(k) + " must be finite");
  }
  require_finite(initial.theta, "initial.theta");
  require_finite(initial.phi, "initial.phi");

  ModelSpec m;
  m.delta_ = delta;
  m.beta_ = zero_temperature ? std::numeric_limits<double>::infinity() : beta;
  m.zero_temperature_ = zero_temperature;
  m.modes_ = std::move(modes);
  m.initial_ = initial;
  return m;
}

ModelSpec ModelSpec::with_initial(SystemState s) const {
  ModelSpec m = *this;
  m.initial_ = s;
  return m;
}

std::uint64_t ModelSpec::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* p, std::size_t n) {
    const unsigned char* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ULL;
    }
  };
  mix(&delta_, sizeof delta_);
  const double b = zero_temperature_ ? -1.0 : beta_;
  mix(&b, sizeof b);
  for (const Mode& m : modes_) {
    mix(&m.omega, sizeof m.omega);
    mix(&m.g, sizeof m.g);
  }
  mix(&initial_.theta, sizeof initial_.theta);
  mix(&initial_.phi, sizeof initial_.phi);
  return h;
}

std::vector<int> BathConfiguration::spins() const {
  std::vector<int> s(count);
  for (int k = 0; k < count; ++k) s[k] = spin(k);
  return s;
}

BathConfiguration BathConfiguration::from_spins(const std::vector<int>& s) {
  BathConfiguration c;
  c.count = static_cast<int>(s.size());
  for (int k = 0; k < c.count; ++k)
    if (s[k] > 0) c.index |= (std::uint64_t{1} << k);
  return c;
}

double omega_of(const ModelSpec& model, const BathConfiguration& config) {
  double sum = 0.0;
  for (std::size_t k = 0; k < model.size(); ++k)
    sum += model.modes()[k].g * config.spin(static_cast<int>(k));
  return sum;
}

double bath_energy(const ModelSpec& model, const BathConfiguration& config) {
  double sum = 0.0;
  for (std::size_t k = 0; k < model.size(); ++k)
    sum += model.modes()[k].omega * config.spin(static_cast<int>(k));
  return sum;
}

double log_partition_function(const ModelSpec& model) {
  if (model.zero_temperature())
    throw validation_error("beta", "partition function needs finite beta");
  double lz = 0.0;
  for (const Mode& m : model.modes()) lz += log_2cosh(model.beta() * m.omega);
  return lz;
}

double partition_function(const ModelSpec& model) {
  return std::exp(log_partition_function(model));
}

double boltzmann_weight(const ModelSpec& model, const BathConfiguration& config) {
  if (model.zero_temperature()) return config.index == 0 ? 1.0 : 0.0;
  return std::exp(-model.beta() * bath_energy(model, config) -
                  log_partition_function(model));
}

std::vector<Mode> sample_couplings(const SamplerSpec& sampler) {
  if (!(sampler.c_total >= 0.0))
    throw validation_error("c_total", "c_total must be >= 0");
  if (!std::isfinite(sampler.omega))
    throw validation_error("omega", "sampler omega must be finite");

  const std::size_t n = sampler.count;
  std::vector<Mode> modes(n);
  const double scale = n ? std::sqrt(sampler.c_total / static_cast<double>(n)) : 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    modes[k].omega = sampler.omega;
    if (sampler.distribution == CouplingDistribution::Rademacher)
      modes[k].g = (k % 2 == 0) ? scale : -scale;
    else
      modes[k].g = scale * standard_normal(sampler.seed, k);
  }
  return modes;
}

double ReducedState::hermiticity_defect() const {
  const double herm = std::abs(rho01 - std::conj(rho10));
  const double diag_imag =
      std::max(std::fabs(rho11.imag()), std::fabs(rho00.imag()));
  const double tr = std::fabs(trace() - 1.0);
  return std::max({herm, diag_imag, tr});
}

void ReducedState::eigenvalues(double& lo, double& hi) const {
  const double p = rho11.real();
  const double q = rho00.real();
  const double mid = 0.5 * (p + q);
  const double rad = std::hypot(0.5 * (p - q), std::abs(rho10));
  lo = mid - rad;
  hi = mid + rad;
}

ReducedState ReducedState::projector(const SystemState& s) {
  const std::complex<double> a{std::cos(0.5 * s.theta), 0.0};
  const std::complex<double> b =
      std::polar(std::sin(0.5 * s.theta), s.phi);
  ReducedState r;
  r.rho11 = a * std::conj(a);
  r.rho10 = a * std::conj(b);
  r.rho01 = std::conj(r.rho10);
  r.rho00 = b * std::conj(b);
  return r;
}

std::string distribution_name(CouplingDistribution d) {
  return d == CouplingDistribution::Gaussian ? "gaussian" : "rademacher";
}

}  // namespace spinbath
