#include "spinbath/config_sum.hpp"

#include <cmath>
#include <string>

#include "spinbath/numerics.hpp"
#include "spinbath/threads.hpp"

namespace spinbath {

namespace {

constexpr int kBlockBits = 12;
constexpr int kTimeTile = 32;

void check_cap(const ModelSpec& model) {
  if (model.size() > kConfigSumCap)
    throw validation_error(
        "modes", "configuration sum supports N <= " +
                     std::to_string(kConfigSumCap) +
                     " (got N = " + std::to_string(model.size()) +
                     "); use the integral engine for larger baths");
}

void require_excited(const ModelSpec& model, const char* op) {
  if (!is_excited_state(model.initial_system()))
    throw validation_error(
        "initial", std::string(op) +
                       " assumes the initial excited state |1>; use "
                       "reduced_density_matrix_at for general states");
}

// Per-configuration observables for the initial |1>.
struct ExcitedKernel {
  static constexpr int kQ = 3;  // sz, re rho10, im rho10
  double delta;
  void operator()(double omega_val, double t, double* out) const {
    const double g2 = delta * delta + omega_val * omega_val;
    if (g2 == 0.0) {
      out[0] = 1.0;
      out[1] = 0.0;
      out[2] = 0.0;
      return;
    }
    const double gamma = std::sqrt(g2);
    const double s2 = std::sin(2.0 * gamma * t);
    const double c2 = std::cos(2.0 * gamma * t);
    out[0] = (delta * delta + omega_val * omega_val * c2) / g2;
    out[1] = delta * omega_val * (1.0 - c2) / (2.0 * g2);
    out[2] = omega_val * s2 / (2.0 * gamma);
  }
};

// Per-configuration 2x2 evolution of a general pure initial state.
struct GeneralKernel {
  static constexpr int kQ = 4;  // rho11, rho00, re rho10, im rho10
  double delta;
  std::complex<double> psi1, psi0;
  void operator()(double omega_val, double t, double* out) const {
    const double gamma = gamma_of(delta, omega_val);
    const double c1 = std::cos(gamma * t);
    const double s = sin_over(gamma, t);  // sin(gamma t)/gamma
    const std::complex<double> u11{c1, -delta * s};
    const std::complex<double> u10{0.0, -omega_val * s};
    const std::complex<double> a = u11 * psi1 + u10 * psi0;
    const std::complex<double> b = u10 * psi1 + std::conj(u11) * psi0;
    out[0] = std::norm(a);
    out[1] = std::norm(b);
    const std::complex<double> r10 = a * std::conj(b);
    out[2] = r10.real();
    out[3] = r10.imag();
  }
};

// Accumulates sum over all 2^N configurations of w(s) * kernel(Omega(s), t)
// into out[ti*Q + q] for every time. Fixed 2^kBlockBits blocks, serial
// compensated sums per block, block partials folded in index order: the
// result is a pure function of (model, times), not of the thread count.
template <typename Kernel>
void config_reduce(const ModelSpec& model, const std::vector<double>& times,
                   const Kernel& kernel, double* out, int threads) {
  constexpr int Q = Kernel::kQ;
  const int n = static_cast<int>(model.size());
  const int nt_total = static_cast<int>(times.size());

  for (int i = 0; i < nt_total * Q; ++i) out[i] = 0.0;

  if (model.zero_temperature()) {
    // Single all-down configuration.
    double omega_val = 0.0;
    for (const Mode& m : model.modes()) omega_val -= m.g;
    double vals[Q];
    for (int ti = 0; ti < nt_total; ++ti) {
      kernel(omega_val, times[ti], vals);
      for (int q = 0; q < Q; ++q) out[ti * Q + q] = vals[q];
    }
    return;
  }

  const int low = std::min(n, kBlockBits);
  const std::size_t n_low = std::size_t{1} << low;
  const std::size_t n_blocks = std::size_t{1} << (n - low);
  const double beta = model.beta();
  const double log_z = (beta == 0.0) ? 0.0 : log_partition_function(model);
  const double w_uniform = std::ldexp(1.0, -n);  // exact 2^-N

  // Exact per-config decomposition Omega = Omega_hi(block) + Omega_lo(j).
  std::vector<double> omega_lo(n_low, 0.0), energy_lo(n_low, 0.0);
  for (std::size_t j = 0; j < n_low; ++j) {
    double og = 0.0, oe = 0.0;
    for (int k = 0; k < low; ++k) {
      const double s = ((j >> k) & 1u) ? 1.0 : -1.0;
      og += model.modes()[k].g * s;
      oe += model.modes()[k].omega * s;
    }
    omega_lo[j] = og;
    energy_lo[j] = oe;
  }

  const int nt = resolve_threads(threads);
  std::vector<double> partial(n_blocks * kTimeTile * Q);

  for (int tile0 = 0; tile0 < nt_total; tile0 += kTimeTile) {
    const int tile_n = std::min(kTimeTile, nt_total - tile0);

#ifdef _OPENMP
#pragma omp parallel for num_threads(nt) schedule(static)
#endif
    for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(n_blocks);
         ++blk) {
      double omega_hi = 0.0, energy_hi = 0.0;
      for (int k = low; k < n; ++k) {
        const double s = ((static_cast<std::size_t>(blk) >> (k - low)) & 1u)
                             ? 1.0
                             : -1.0;
        omega_hi += model.modes()[k].g * s;
        energy_hi += model.modes()[k].omega * s;
      }

      Kahan acc[kTimeTile * Q];
      double vals[Q];
      for (std::size_t j = 0; j < n_low; ++j) {
        const double omega_val = omega_hi + omega_lo[j];
        const double w =
            (beta == 0.0)
                ? w_uniform
                : std::exp(-beta * (energy_hi + energy_lo[j]) - log_z);
        for (int ti = 0; ti < tile_n; ++ti) {
          kernel(omega_val, times[tile0 + ti], vals);
          for (int q = 0; q < Q; ++q) acc[ti * Q + q].add(w * vals[q]);
        }
      }
      double* slot = partial.data() + static_cast<std::size_t>(blk) * kTimeTile * Q;
      for (int i = 0; i < tile_n * Q; ++i) slot[i] = acc[i].value();
    }

    for (int ti = 0; ti < tile_n; ++ti) {
      for (int q = 0; q < Q; ++q) {
        Kahan fold;
        for (std::size_t blk = 0; blk < n_blocks; ++blk)
          fold.add(partial[blk * kTimeTile * Q + ti * Q + q]);
        out[(tile0 + ti) * Q + q] = fold.value();
      }
    }
  }
}

std::complex<double> initial_amplitude_1(const SystemState& s) {
  return {std::cos(0.5 * s.theta), 0.0};
}
std::complex<double> initial_amplitude_0(const SystemState& s) {
  return std::polar(std::sin(0.5 * s.theta), s.phi);
}

}  // namespace

double magnetization_at(const ModelSpec& model, double t, int threads) {
  check_cap(model);
  require_excited(model, "magnetization_at");
  double out[3];
  config_reduce(model, {t}, ExcitedKernel{model.delta()}, out, threads);
  return out[0];
}

std::complex<double> coherence_at(const ModelSpec& model, double t,
                                  int threads) {
  check_cap(model);
  require_excited(model, "coherence_at");
  double out[3];
  config_reduce(model, {t}, ExcitedKernel{model.delta()}, out, threads);
  return {out[1], out[2]};
}

ReducedState reduced_density_matrix_at(const ModelSpec& model, double t,
                                       int threads) {
  check_cap(model);
  double out[4];
  const SystemState init = model.initial_system();
  config_reduce(model, {t},
                GeneralKernel{model.delta(), initial_amplitude_1(init),
                              initial_amplitude_0(init)},
                out, threads);
  ReducedState r;
  r.rho11 = out[0];
  r.rho00 = out[1];
  r.rho10 = {out[2], out[3]};
  r.rho01 = std::conj(r.rho10);
  return r;
}

Trajectory time_series(const ModelSpec& model, const std::vector<double>& grid,
                       int threads) {
  check_cap(model);
  validate_grid(grid);

  Trajectory traj;
  traj.engine = "configsum";
  traj.model_fingerprint = model.fingerprint();
  traj.points.resize(grid.size());

  if (is_excited_state(model.initial_system())) {
    std::vector<double> out(grid.size() * 3);
    config_reduce(model, grid, ExcitedKernel{model.delta()}, out.data(),
                  threads);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      TrajectoryPoint& p = traj.points[i];
      p.t = grid[i];
      p.sz = out[i * 3];
      p.rho10 = {out[i * 3 + 1], out[i * 3 + 2]};
      p.state.rho11 = 0.5 * (1.0 + p.sz);
      p.state.rho00 = 0.5 * (1.0 - p.sz);
      p.state.rho10 = p.rho10;
      p.state.rho01 = std::conj(p.rho10);
    }
  } else {
    const SystemState init = model.initial_system();
    std::vector<double> out(grid.size() * 4);
    config_reduce(model, grid,
                  GeneralKernel{model.delta(), initial_amplitude_1(init),
                                initial_amplitude_0(init)},
                  out.data(), threads);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      TrajectoryPoint& p = traj.points[i];
      p.t = grid[i];
      p.state.rho11 = out[i * 4];
      p.state.rho00 = out[i * 4 + 1];
      p.state.rho10 = {out[i * 4 + 2], out[i * 4 + 3]};
      p.state.rho01 = std::conj(p.state.rho10);
      p.sz = p.state.sz();
      p.rho10 = p.state.rho10;
    }
  }
  return traj;
}

std::pair<double, std::complex<double>> stationary_time_average(
    const ModelSpec& model, double t_start, double t_end, int n_samples,
    int threads) {
  check_cap(model);
  if (!(t_end > t_start) || !(t_start > 0.0))
    throw validation_error("window", "need t_end > t_start > 0");
  if (n_samples < 100)
    throw validation_error("n_samples", "need n_samples >= 100");

  std::vector<double> grid(n_samples);
  for (int i = 0; i < n_samples; ++i)
    grid[i] = t_start + (t_end - t_start) * static_cast<double>(i) /
                            (n_samples - 1);

  const Trajectory traj = time_series(model, grid, threads);
  Kahan sz, re, im;
  for (const auto& p : traj.points) {
    sz.add(p.sz);
    re.add(p.rho10.real());
    im.add(p.rho10.imag());
  }
  const double inv = 1.0 / n_samples;
  return {sz.value() * inv,
          {re.value() * inv, im.value() * inv}};
}

namespace serial_ref {

namespace {

template <typename Kernel>
void serial_reduce(const ModelSpec& model, double t, const Kernel& kernel,
                   double* out) {
  constexpr int Q = Kernel::kQ;
  for (int q = 0; q < Q; ++q) out[q] = 0.0;
  const int n = static_cast<int>(model.size());

  if (model.zero_temperature()) {
    double omega_val = 0.0;
    for (const Mode& m : model.modes()) omega_val -= m.g;
    kernel(omega_val, t, out);
    return;
  }

  const double log_z = log_partition_function(model);
  Kahan acc[Q];
  double vals[Q];
  const std::size_t total = std::size_t{1} << n;
  for (std::size_t idx = 0; idx < total; ++idx) {
    double omega_val = 0.0, energy = 0.0;
    for (int k = 0; k < n; ++k) {
      const double s = ((idx >> k) & 1u) ? 1.0 : -1.0;
      omega_val += model.modes()[k].g * s;
      energy += model.modes()[k].omega * s;
    }
    const double w = std::exp(-model.beta() * energy - log_z);
    kernel(omega_val, t, vals);
    for (int q = 0; q < Q; ++q) acc[q].add(w * vals[q]);
  }
  for (int q = 0; q < Q; ++q) out[q] = acc[q].value();
}

}  // namespace

double magnetization_at(const ModelSpec& model, double t) {
  check_cap(model);
  require_excited(model, "magnetization_at");
  double out[3];
  serial_reduce(model, t, ExcitedKernel{model.delta()}, out);
  return out[0];
}

std::complex<double> coherence_at(const ModelSpec& model, double t) {
  check_cap(model);
  require_excited(model, "coherence_at");
  double out[3];
  serial_reduce(model, t, ExcitedKernel{model.delta()}, out);
  return {out[1], out[2]};
}

ReducedState reduced_density_matrix_at(const ModelSpec& model, double t) {
  check_cap(model);
  double out[4];
  const SystemState init = model.initial_system();
  serial_reduce(model, t,
                GeneralKernel{model.delta(), initial_amplitude_1(init),
                              initial_amplitude_0(init)},
                out);
  ReducedState r;
  r.rho11 = out[0];
  r.rho00 = out[1];
  r.rho10 = {out[2], out[3]};
  r.rho01 = std::conj(r.rho10);
  return r;
}

}  // namespace serial_ref

}  // namespace spinbath
