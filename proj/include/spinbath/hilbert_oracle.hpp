#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spinbath/model.hpp"
#include "spinbath/trajectory.hpp"

namespace spinbath {

inline constexpr int kOracleCap = 10;

// Density matrix of the full (central spin + bath) system. Basis ordering is
// fixed and bit-exact: basis index i has bath spin k in bit k (bit set means
// s_k = +1) and the central spin in bit N (bit set means |1>).
struct FullState {
  Eigen::MatrixXcd rho;
  int n_bath = 0;

  // max deviation from Hermiticity / unit trace; eigenvalue range.
  double hermiticity_defect() const;
  double trace_defect() const;
  void eigenvalue_range(double& lo, double& hi) const;
};

// Dense H = delta sz0 + sum_k omega_k szk + sx0 sum_k g_k szk in the ordering
// above. Throws when N exceeds the cap.
Eigen::MatrixXcd build_full_hamiltonian(const ModelSpec& model,
                                        int cap = kOracleCap);

// rho(0) = |psi><psi| (x) e^{-beta H_B}/Z.
FullState initial_full_state(const ModelSpec& model, int cap = kOracleCap);

// One-shot evolution rho(t) = U rho0 U^dagger with U = V e^{-i lambda t} V^+.
FullState evolve_density(const ModelSpec& model, double t,
                         const FullState& rho0, int cap = kOracleCap);

ReducedState partial_trace_system(const FullState& state);
Eigen::MatrixXcd partial_trace_bath(const FullState& state);

// max-entry norm of [H, H_B]; zero for the model by construction.
double commutator_norm(const ModelSpec& model, int cap = kOracleCap);

// Brute-force evolution with the Hermitian eigendecomposition computed once
// and reused across all requested times. Deliberately ignores the
// bath-diagonal block structure so it stays independent of the
// configuration-sum engine.
class HilbertOracle {
 public:
  explicit HilbertOracle(const ModelSpec& model, int cap = kOracleCap);

  FullState evolve(double t) const;
  ReducedState reduced_at(double t) const;
  Trajectory time_series(const std::vector<double>& grid,
                         int threads = 0) const;

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  ModelSpec model_;
  int dim_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
  Eigen::MatrixXcd rho0_in_eigenbasis_;
};

}  // namespace spinbath
