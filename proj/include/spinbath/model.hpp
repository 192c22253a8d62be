#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "spinbath/errors.hpp"

namespace spinbath {

// One bath mode: level splitting omega and coupling g to the central spin.
struct Mode {
  double omega = 0.0;
  double g = 0.0;
};

// Pure state of the central spin as Bloch angles:
//   |psi> = cos(theta/2)|1> + e^{i phi} sin(theta/2)|0>,
// with sigma_z|1> = +|1> and |1> the excited state. theta=0 is |1>.
struct SystemState {
  double theta = 0.0;
  double phi = 0.0;
};

inline bool is_excited_state(const SystemState& s) { return s.theta == 0.0; }

// Immutable description of H = delta*sz0 + sum_k omega_k szk + sx0 sum_k g_k szk
// together with the initial product state (central spin pure, bath thermal
// at inverse temperature beta). beta = infinity is represented by the
// zero_temperature flag and means the single all-spins-down bath configuration.
class ModelSpec {
 public:
  static ModelSpec build(double delta, double beta, std::vector<Mode> modes,
                         SystemState initial = {}, bool zero_temperature = false);

  double delta() const { return delta_; }
  double beta() const { return beta_; }
  bool zero_temperature() const { return zero_temperature_; }
  const std::vector<Mode>& modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }
  const SystemState& initial_system() const { return initial_; }

  ModelSpec with_initial(SystemState s) const;

  // FNV-1a over the canonical byte representation; mixed with a run seed by
  // trajectory producers.
  std::uint64_t fingerprint() const;

 private:
  ModelSpec() = default;
  double delta_ = 0.0;
  double beta_ = 0.0;
  bool zero_temperature_ = false;
  std::vector<Mode> modes_;
  SystemState initial_;
};

// One Ising assignment of the bath: bit k of index set <=> s_k = +1.
struct BathConfiguration {
  std::uint64_t index = 0;
  int count = 0;

  int spin(int k) const { return ((index >> k) & 1u) ? +1 : -1; }
  std::vector<int> spins() const;
  static BathConfiguration from_spins(const std::vector<int>& s);
};

// Omega(s) = sum_k g_k s_k  (eigenvalue of the coupling operator).
double omega_of(const ModelSpec& model, const BathConfiguration& config);

// Bath energy eigenvalue sum_k omega_k s_k.
double bath_energy(const ModelSpec& model, const BathConfiguration& config);

// gamma = sqrt(delta^2 + Omega^2).
inline double gamma_of(double delta, double omega_val) {
  return std::hypot(delta, omega_val);
}

// log Z = sum_k log(2 cosh(beta omega_k)); overflow-safe.
double log_partition_function(const ModelSpec& model);
double partition_function(const ModelSpec& model);

// exp(-beta E_B(s))/Z; at zero temperature the indicator of the all-down
// configuration.
double boltzmann_weight(const ModelSpec& model, const BathConfiguration& config);

enum class CouplingDistribution { Gaussian, Rademacher };

// Disordered-coupling sampler: N modes with a common splitting omega and
// couplings of zero mean and second moment C/N. Rademacher alternates
// +sqrt(C/N), -sqrt(C/N), ... starting at +, so an odd-N tail lands on +.
struct SamplerSpec {
  std::size_t count = 0;
  double omega = 1.0;
  double c_total = 1.0;
  CouplingDistribution distribution = CouplingDistribution::Gaussian;
  std::uint64_t seed = 0;
};

std::vector<Mode> sample_couplings(const SamplerSpec& sampler);

// 2x2 reduced density matrix of the central spin in the {|1>,|0>} basis.
struct ReducedState {
  std::complex<double> rho11{0.0, 0.0};
  std::complex<double> rho10{0.0, 0.0};
  std::complex<double> rho01{0.0, 0.0};
  std::complex<double> rho00{0.0, 0.0};

  double sz() const { return rho11.real() - rho00.real(); }
  double trace() const { return rho11.real() + rho00.real(); }
  // Deviation from Hermiticity-with-unit-trace; eigenvalue range check.
  double hermiticity_defect() const;
  void eigenvalues(double& lo, double& hi) const;

  static ReducedState projector(const SystemState& s);
};

std::string distribution_name(CouplingDistribution d);

}  // namespace spinbath
