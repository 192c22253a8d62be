#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "spinbath/model.hpp"
#include "spinbath/trajectory.hpp"

namespace spinbath {

// Exact reduced dynamics by thermal averaging of the closed-form 2x2
// evolution over all 2^N bath configurations. Per configuration, with
// gamma = sqrt(delta^2 + Omega^2),
//   sz(t)     = (delta^2 + Omega^2 cos 2 gamma t) / gamma^2
//   rho10(t)  = i Omega sin(2 gamma t)/(2 gamma)
//               + delta Omega (1 - cos 2 gamma t)/(2 gamma^2)
// for an initial |1>; general pure initial states evolve the 2x2 state
// directly. At gamma = 0 the limits are sz = 1, rho10 = 0.
//
// The OpenMP kernel reduces fixed 4096-configuration blocks with compensated
// summation and folds the block partials in index order, so results are
// bitwise independent of the thread count.

inline constexpr std::size_t kConfigSumCap = 24;

// Thermal-average magnetization <sigma_z(t)>; requires the initial |1>.
double magnetization_at(const ModelSpec& model, double t, int threads = 0);

// Thermal-average coherence rho10(t); requires the initial |1>.
std::complex<double> coherence_at(const ModelSpec& model, double t,
                                  int threads = 0);

// Full reduced density matrix for any pure initial system state.
ReducedState reduced_density_matrix_at(const ModelSpec& model, double t,
                                       int threads = 0);

Trajectory time_series(const ModelSpec& model, const std::vector<double>& grid,
                       int threads = 0);

// Uniform-grid mean of sz and rho10 over [t_start, t_end] (n_samples >= 100).
std::pair<double, std::complex<double>> stationary_time_average(
    const ModelSpec& model, double t_start, double t_end, int n_samples,
    int threads = 0);

// Plain single-loop implementation kept as a correctness reference for the
// parallel kernel; used by tests and the benchmark.
namespace serial_ref {
double magnetization_at(const ModelSpec& model, double t);
std::complex<double> coherence_at(const ModelSpec& model, double t);
ReducedState reduced_density_matrix_at(const ModelSpec& model, double t);
}  // namespace serial_ref

}  // namespace spinbath
