#include "spinbath/hilbert_oracle.hpp"

#include <cmath>
#include <string>

#include "spinbath/threads.hpp"

namespace spinbath {

namespace {

void check_cap(const ModelSpec& model, int cap) {
  if (static_cast<int>(model.size()) > cap)
    throw validation_error(
        "modes", "Hilbert-space oracle supports N <= " + std::to_string(cap) +
                     " (got N = " + std::to_string(model.size()) + ")");
}

// Eigenvalues of H_B and of the coupling operator per bath index, computed
// once so equal entries are bitwise equal wherever they reappear.
void bath_tables(const ModelSpec& model, std::vector<double>& energy,
                 std::vector<double>& omega_val) {
  const int n = static_cast<int>(model.size());
  const std::size_t nb = std::size_t{1} << n;
  energy.assign(nb, 0.0);
  omega_val.assign(nb, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    double e = 0.0, o = 0.0;
    for (int k = 0; k < n; ++k) {
      const double s = ((b >> k) & 1u) ? 1.0 : -1.0;
      e += model.modes()[k].omega * s;
      o += model.modes()[k].g * s;
    }
    energy[b] = e;
    omega_val[b] = o;
  }
}

std::vector<double> thermal_weights(const ModelSpec& model,
                                    const std::vector<double>& energy) {
  const std::size_t nb = energy.size();
  std::vector<double> w(nb, 0.0);
  if (model.zero_temperature()) {
    w[0] = 1.0;  // all spins down
    return w;
  }
  const double log_z = log_partition_function(model);
  for (std::size_t b = 0; b < nb; ++b)
    w[b] = std::exp(-model.beta() * energy[b] - log_z);
  return w;
}

}  // namespace

double FullState::hermiticity_defect() const {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double FullState::trace_defect() const {
  return std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
}

void FullState::eigenvalue_range(double& lo, double& hi) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      0.5 * (rho + rho.adjoint()));
  lo = es.eigenvalues().minCoeff();
  hi = es.eigenvalues().maxCoeff();
}

Eigen::MatrixXcd build_full_hamiltonian(const ModelSpec& model, int cap) {
  check_cap(model, cap);
  const int n = static_cast<int>(model.size());
  const std::size_t nb = std::size_t{1} << n;
  const std::size_t dim = nb << 1;

  std::vector<double> energy, omega_val;
  bath_tables(model, energy, omega_val);

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t down = b;        // central-spin bit clear -> |0>
    const std::size_t up = b | nb;     // central-spin bit set   -> |1>
    h(up, up) = model.delta() + energy[b];
    h(down, down) = -model.delta() + energy[b];
    h(up, down) = omega_val[b];  // sx0 flips the central spin
    h(down, up) = omega_val[b];
  }
  return h;
}

FullState initial_full_state(const ModelSpec& model, int cap) {
  check_cap(model, cap);
  const int n = static_cast<int>(model.size());
  const std::size_t nb = std::size_t{1} << n;

  std::vector<double> energy, omega_val;
  bath_tables(model, energy, omega_val);
  const std::vector<double> w = thermal_weights(model, energy);

  const SystemState init = model.initial_system();
  const std::complex<double> a{std::cos(0.5 * init.theta), 0.0};
  const std::complex<double> c = std::polar(std::sin(0.5 * init.theta), init.phi);

  FullState st;
  st.n_bath = n;
  st.rho = Eigen::MatrixXcd::Zero(nb << 1, nb << 1);
  for (std::size_t b = 0; b < nb; ++b) {
    st.rho(b | nb, b | nb) = std::norm(a) * w[b];
    st.rho(b, b) = std::norm(c) * w[b];
    st.rho(b | nb, b) = a * std::conj(c) * w[b];
    st.rho(b, b | nb) = c * std::conj(a) * w[b];
  }
  return st;
}

FullState evolve_density(const ModelSpec& model, double t,
                         const FullState& rho0, int cap) {
  check_cap(model, cap);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      build_full_hamiltonian(model, cap));
  if (es.info() != Eigen::Success)
    throw numeric_error("Hamiltonian eigendecomposition failed");
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::MatrixXcd& v = es.eigenvectors();

  const Eigen::MatrixXcd w = v.adjoint() * rho0.rho * v;
  const std::size_t dim = w.rows();
  Eigen::MatrixXcd m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const std::complex<double> phase =
          std::polar(1.0, -(lam(i) - lam(j)) * t);
      m(i, j) = phase * w(i, j);
    }
  FullState out;
  out.n_bath = rho0.n_bath;
  out.rho = v * m * v.adjoint();
  return out;
}

ReducedState partial_trace_system(const FullState& state) {
  const std::size_t nb = std::size_t{1} << state.n_bath;
  std::complex<double> r11{0, 0}, r00{0, 0}, r10{0, 0};
  for (std::size_t b = 0; b < nb; ++b) {
    r11 += state.rho(b | nb, b | nb);
    r00 += state.rho(b, b);
    r10 += state.rho(b | nb, b);
  }
  ReducedState r;
  r.rho11 = r11;
  r.rho00 = r00;
  r.rho10 = r10;
  r.rho01 = std::conj(r10);
  return r;
}

Eigen::MatrixXcd partial_trace_bath(const FullState& state) {
  const std::size_t nb = std::size_t{1} << state.n_bath;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(nb, nb);
  for (std::size_t b1 = 0; b1 < nb; ++b1)
    for (std::size_t b2 = 0; b2 < nb; ++b2)
      out(b1, b2) =
          state.rho(b1, b2) + state.rho(b1 | nb, b2 | nb);
  return out;
}

double commutator_norm(const ModelSpec& model, int cap) {
  check_cap(model, cap);
  const int n = static_cast<int>(model.size());
  const std::size_t nb = std::size_t{1} << n;
  const std::size_t dim = nb << 1;

  std::vector<double> energy, omega_val;
  bath_tables(model, energy, omega_val);

  const Eigen::MatrixXcd h = build_full_hamiltonian(model, cap);
  Eigen::MatrixXcd hb = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t b = 0; b < nb; ++b) {
    hb(b, b) = energy[b];
    hb(b | nb, b | nb) = energy[b];
  }
  return (h * hb - hb * h).cwiseAbs().maxCoeff();
}

HilbertOracle::HilbertOracle(const ModelSpec& model, int cap) : model_(model) {
  check_cap(model, cap);
  dim_ = static_cast<int>(std::size_t{2} << model.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      build_full_hamiltonian(model, cap));
  if (es.info() != Eigen::Success)
    throw numeric_error("Hamiltonian eigendecomposition failed");
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
  const FullState rho0 = initial_full_state(model, cap);
  rho0_in_eigenbasis_ = eigenvectors_.adjoint() * rho0.rho * eigenvectors_;
}

FullState HilbertOracle::evolve(double t) const {
  Eigen::MatrixXcd m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      const std::complex<double> phase =
          std::polar(1.0, -(eigenvalues_(i) - eigenvalues_(j)) * t);
      m(i, j) = phase * rho0_in_eigenbasis_(i, j);
    }
  FullState out;
  out.n_bath = static_cast<int>(model_.size());
  out.rho = eigenvectors_ * m * eigenvectors_.adjoint();
  return out;
}

ReducedState HilbertOracle::reduced_at(double t) const {
  return partial_trace_system(evolve(t));
}

Trajectory HilbertOracle::time_series(const std::vector<double>& grid,
                                      int threads) const {
  validate_grid(grid);
  Trajectory traj;
  traj.engine = "oracle";
  traj.model_fingerprint = model_.fingerprint();
  traj.points.resize(grid.size());

  const int nt = resolve_threads(threads);
#ifdef _OPENMP
#pragma omp parallel for num_threads(nt) schedule(static)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.size());
       ++i) {
    const ReducedState r = reduced_at(grid[i]);
    TrajectoryPoint& p = traj.points[i];
    p.t = grid[i];
    p.state = r;
    p.sz = r.sz();
    p.rho10 = r.rho10;
  }
  return traj;
}

}  // namespace spinbath
