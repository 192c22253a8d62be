#include "spinbath/integral_engine.hpp"

#include <cmath>

#include "spinbath/threads.hpp"

namespace spinbath {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

double safe_r(double eta, double x) {
  const double d = (eta - x) * (eta + x);
  return d > 0.0 ? std::sqrt(d) : 0.0;
}

// z * erfcx(z), stable for arbitrarily large z (limit 1/sqrt(pi)).
double z_erfcx(double z) {
  if (z > 1e8) {
    const double inv2 = (std::isinf(z)) ? 0.0 : 1.0 / (z * z);
    return (1.0 - 0.5 * inv2) / kSqrtPi;
  }
  return z * erfc_scaled(z);
}

}  // namespace

double identity18_residual(double delta, double omega_val, double eta,
                           const QuadratureSettings& settings) {
  if (!(eta >= 0.0)) throw validation_error("eta", "eta must be >= 0");
  if (eta == 0.0) return 0.0;
  QuadratureSettings s = settings;
  s.oscillation_hint = gamma_of(delta, omega_val);
  const auto lhs = integrate_adaptive(
      [delta, omega_val, eta](double x) {
        return std::cos(omega_val * x) * bessel_j0(delta * safe_r(eta, x));
      },
      0.0, eta, s);
  const double gamma = gamma_of(delta, omega_val);
  const double rhs = (gamma == 0.0) ? eta : std::sin(eta * gamma) / gamma;
  return std::fabs(lhs.value - rhs);
}

IntegralEngine::IntegralEngine(CharacteristicFunction phi, double delta,
                               QuadratureSettings settings, double t_max)
    : phi_(std::move(phi)), delta_(delta), t_max_(t_max) {
  if (!(t_max >= 0.0)) throw validation_error("t_max", "t_max must be >= 0");
  hint_ = std::hypot(delta_, phi_.omega_scale());

  inner_ = settings;
  inner_.oscillation_hint = hint_;
  outer_ = settings;
  outer_.abs_tol = std::min(1e-2, 100.0 * settings.abs_tol);
  outer_.oscillation_hint = hint_;

  // For many-mode exact products each Phi evaluation costs O(N); tabulate it
  // once so quadrature nodes cost O(1).
  if (!phi_.is_gaussian() && phi_.mode_count() > 64 && t_max_ > 0.0) {
    const CharacteristicFunction& cf = phi_;
    phi_table_ = PiecewiseChebyshev<std::complex<double>>::build(
        [&cf](double x) { return cf(x); }, 0.0, 2.0 * t_max_,
        std::min(1e-11, inner_.abs_tol * 0.1), phi_.omega_scale());
  }
}

std::complex<double> IntegralEngine::phi(double x) const {
  if (phi_table_) return phi_table_->eval(x);
  return phi_(x);
}
double IntegralEngine::phi_re(double x) const { return phi(x).real(); }
double IntegralEngine::phi_im(double x) const { return phi(x).imag(); }

void IntegralEngine::check_range(double t) const {
  if (!(t >= 0.0)) throw validation_error("t", "integral engine needs t >= 0");
  if (t > t_max_ * (1.0 + 1e-12) + 1e-300 && t > 0.0)
    throw validation_error("t", "t exceeds the range this engine was built for");
}

double IntegralEngine::f_of(double eta) const {
  if (eta == 0.0) return 0.0;
  const auto r = integrate_adaptive(
      [this, eta](double x) {
        return bessel_j0(delta_ * safe_r(eta, x)) * phi_re(x);
      },
      0.0, eta, inner_);
  return r.value;
}

double IntegralEngine::f_derivative(double eta) const {
  double tail = 0.0;
  if (delta_ != 0.0 && eta > 0.0) {
    const auto r = integrate_adaptive(
        [this, eta](double x) {
          return j1_kernel(delta_, safe_r(eta, x)) * phi_re(x);
        },
        0.0, eta, inner_);
    tail = eta * r.value;
  }
  return phi_re(eta) - tail;
}

double IntegralEngine::g_of(double eta) const {
  if (eta == 0.0 || phi_.purely_real()) return 0.0;
  double tail = 0.0;
  if (delta_ != 0.0) {
    const auto r = integrate_adaptive(
        [this, eta](double x) {
          return x * j1_kernel(delta_, safe_r(eta, x)) * phi_im(x);
        },
        0.0, eta, inner_);
    tail = r.value;
  }
  return phi_im(eta) - tail;
}

void IntegralEngine::ensure_f_table() const {
  std::call_once(f_once_, [this] {
    if (t_max_ <= 0.0 || delta_ == 0.0) return;
    // Seeding panels at the oscillation scale belongs to the tight-tolerance
    // path, like the quadrature's own seeding; a coarsened tolerance gets the
    // purely estimate-driven build so that loosening is actually visible.
    const double hint = outer_.abs_tol <= 1e-4 ? hint_ : 0.0;
    f_table_ = PiecewiseChebyshev<double>::build(
        [this](double eta) { return f_of(eta); }, 0.0, 2.0 * t_max_,
        outer_.abs_tol, hint);
  });
}

void IntegralEngine::ensure_g_table() const {
  std::call_once(g_once_, [this] {
    if (t_max_ <= 0.0 || delta_ == 0.0 || phi_.purely_real()) return;
    const double hint = outer_.abs_tol <= 1e-4 ? hint_ : 0.0;
    g_table_ = PiecewiseChebyshev<double>::build(
        [this](double eta) { return g_of(eta); }, 0.0, 2.0 * t_max_,
        outer_.abs_tol, hint);
  });
}

double IntegralEngine::magnetization(double t) const {
  check_range(t);
  if (t == 0.0) return phi_re(0.0);
  double outer = 0.0;
  if (delta_ != 0.0) {
    ensure_f_table();
    outer = delta_ * delta_ * f_table_->integral(0.0, 2.0 * t);
  }
  return f_derivative(2.0 * t) + outer;
}

std::complex<double> IntegralEngine::coherence(
    double t, CoherenceConvention convention) const {
  check_range(t);
  if (t == 0.0 || phi_.purely_real()) return {0.0, 0.0};
  const double g2t = g_of(2.0 * t);
  double outer = 0.0;
  if (delta_ != 0.0) {
    ensure_g_table();
    outer = g_table_->integral(0.0, 2.0 * t);
  }
  const double factor =
      (convention == CoherenceConvention::Printed) ? 1.0 : 0.5;
  return {factor * delta_ * outer, 0.5 * g2t};
}

Trajectory IntegralEngine::time_series(const std::vector<double>& grid,
                                       int threads, bool with_coherence) const {
  validate_grid(grid);
  if (grid.front() < 0.0)
    throw validation_error("grid", "integral engine needs t >= 0");
  check_range(grid.back());
  ensure_f_table();
  if (with_coherence) ensure_g_table();

  Trajectory traj;
  traj.engine = phi_.is_gaussian() ? "gaussian" : "integral";
  traj.model_fingerprint = phi_.model() ? phi_.model()->fingerprint() : 0;
  traj.points.resize(grid.size());

  const int nt = resolve_threads(threads);
  (void)nt;
#ifdef _OPENMP
#pragma omp parallel for num_threads(nt) schedule(dynamic, 1)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.size());
       ++i) {
    TrajectoryPoint& p = traj.points[i];
    p.t = grid[i];
    p.sz = magnetization(grid[i]);
    p.rho10 = with_coherence
                  ? coherence(grid[i], CoherenceConvention::Reconciled)
                  : std::complex<double>{0.0, 0.0};
    p.state.rho11 = 0.5 * (1.0 + p.sz);
    p.state.rho00 = 0.5 * (1.0 - p.sz);
    p.state.rho10 = p.rho10;
    p.state.rho01 = std::conj(p.rho10);
  }
  return traj;
}

double magnetization_integral(const CharacteristicFunction& phi, double delta,
                              double t, const QuadratureSettings& settings) {
  return IntegralEngine(phi, delta, settings, t).magnetization(t);
}

std::complex<double> coherence_integral(const CharacteristicFunction& phi,
                                        double delta, double t,
                                        CoherenceConvention convention,
                                        const QuadratureSettings& settings) {
  return IntegralEngine(phi, delta, settings, t).coherence(t, convention);
}

double stationary_paper(double delta, double c_total, double beta,
                        double omega) {
  if (!(c_total > 0.0))
    throw validation_error("c_total", "stationary formulas need C > 0");
  if (delta == 0.0) return 0.0;
  // Even in delta: the underlying time average is E[Delta^2/gamma^2].
  const double ch = std::cosh(beta * omega);
  const double z = std::fabs(delta) * ch / std::sqrt(2.0 * c_total);
  return 0.5 * kSqrtPi * z_erfcx(z);
}

double stationary_oracle(double delta, double sigma2, int nodes) {
  if (!(sigma2 >= 0.0))
    throw validation_error("sigma2", "variance must be >= 0");
  if (delta == 0.0) return 0.0;
  if (sigma2 == 0.0) return 1.0;
  const GaussHermiteRule rule = gauss_hermite(nodes);
  const double d2 = delta * delta;
  const double two_s2 = 2.0 * sigma2;
  Kahan acc;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double om2 = two_s2 * rule.nodes[i] * rule.nodes[i];
    acc.add(rule.weights[i] * d2 / (d2 + om2));
  }
  return acc.value() / kSqrtPi;
}

StationaryReport stationary_report(double delta, double c_total, double beta,
                                   double omega) {
  if (!(c_total > 0.0))
    throw validation_error("c_total", "stationary report needs C > 0");
  StationaryReport rep;
  rep.sigma2 = effective_sigma2(c_total, beta, omega);
  const double ch = std::cosh(beta * omega);
  rep.z = std::fabs(delta) * ch / std::sqrt(2.0 * c_total);
  rep.paper_value = stationary_paper(delta, c_total, beta, omega);
  rep.oracle_value = stationary_oracle(delta, rep.sigma2);
  if (rep.oracle_value > 0.0) {
    rep.ratio = rep.paper_value / rep.oracle_value;
    rep.ratio_defined = true;
  } else {
    rep.ratio = 1.0;  // by convention when both vanish
    rep.ratio_defined = false;
  }
  return rep;
}

}  // namespace spinbath
