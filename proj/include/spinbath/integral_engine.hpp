#pragma once

#include <complex>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "spinbath/char_fn.hpp"
#include "spinbath/numerics.hpp"
#include "spinbath/trajectory.hpp"

namespace spinbath {

// Residual of the closed-form identity
//   Re int_0^eta e^{i x Omega} J0(Delta sqrt(eta^2-x^2)) dx
//     = sin(eta sqrt(Delta^2+Omega^2)) / sqrt(Delta^2+Omega^2).
double identity18_residual(double delta, double omega_val, double eta,
                           const QuadratureSettings& settings = {});

// Off-diagonal evaluator conventions. The printed operator applies
// Delta * int_0^{2t} d eta to the bracket; the reconciled one applies
// (Delta/2) * int, which is the reading that matches the configuration
// average exactly. Both are exposed; nothing is silently corrected.
enum class CoherenceConvention { Printed, Reconciled };

// Magnetization and coherence from the Bessel-integral representation:
//   F(eta) = Re int_0^eta J0(Delta sqrt(eta^2-x^2)) Phi(x) dx
//   <sz(t)> = F'(2t) + Delta^2 int_0^{2t} F(eta) d eta
// with the derivative taken analytically (Leibniz):
//   F'(eta) = Re Phi(eta)
//             - eta int_0^eta j1_kernel(Delta, sqrt(eta^2-x^2)) Re Phi(x) dx.
// The coherence bracket is
//   G(eta) = Im Phi(eta)
//            - int_0^eta x j1_kernel(Delta, sqrt(eta^2-x^2)) Im Phi(x) dx
// and rho10(t) = i/2 G(2t) + {Delta | Delta/2} int_0^{2t} G(eta) d eta.
//
// The engine tabulates F and G once (piecewise Chebyshev, integrated exactly)
// and, for exact-product Phi with many modes, tabulates Phi itself so each
// quadrature node costs O(1) instead of O(N). Tables are built once and are
// immutable afterwards; evaluation is safe from multiple threads.
class IntegralEngine {
 public:
  IntegralEngine(CharacteristicFunction phi, double delta,
                 QuadratureSettings settings = {}, double t_max = 0.0);

  double magnetization(double t) const;
  std::complex<double> coherence(
      double t, CoherenceConvention convention = CoherenceConvention::Reconciled) const;

  Trajectory time_series(const std::vector<double>& grid, int threads = 0,
                         bool with_coherence = true) const;

  double t_max() const { return t_max_; }
  // diagnostic access for tests
  double f_of(double eta) const;
  double f_derivative(double eta) const;
  double g_of(double eta) const;

 private:
  std::complex<double> phi(double x) const;
  double phi_re(double x) const;
  double phi_im(double x) const;
  void ensure_f_table() const;
  void ensure_g_table() const;
  void check_range(double t) const;

  CharacteristicFunction phi_;
  double delta_;
  QuadratureSettings inner_;   // abs tol tightened for the inner quadratures
  QuadratureSettings outer_;
  double t_max_;
  double hint_;                // sqrt(delta^2 + omega_scale^2)
  std::optional<PiecewiseChebyshev<std::complex<double>>> phi_table_;

  mutable std::once_flag f_once_, g_once_;
  mutable std::optional<PiecewiseChebyshev<double>> f_table_;
  mutable std::optional<PiecewiseChebyshev<double>> g_table_;
};

// Single-shot helpers matching the engine (build tables for [0, 2t] only).
double magnetization_integral(const CharacteristicFunction& phi, double delta,
                              double t, const QuadratureSettings& settings = {});
std::complex<double> coherence_integral(const CharacteristicFunction& phi,
                                        double delta, double t,
                                        CoherenceConvention convention,
                                        const QuadratureSettings& settings = {});

// Long-time magnetization two ways: the closed-form erfc expression and an
// independent Gauss-Hermite expectation of Delta^2/gamma^2. Their ratio
// flags the factor-2 mismatch between the two normalizations.
struct StationaryReport {
  double paper_value = 0.0;   // Delta cosh(bw) sqrt(pi/8C) e^{z^2} erfc(z)
  double oracle_value = 0.0;  // E[Delta^2/(Delta^2+Omega^2)], Omega ~ N(0, sigma^2)
  double ratio = 1.0;         // paper_value / oracle_value
  bool ratio_defined = false;
  double z = 0.0;             // Delta cosh(beta omega)/sqrt(2C)
  double sigma2 = 0.0;        // C / cosh^2(beta omega)
};

double stationary_paper(double delta, double c_total, double beta, double omega);
double stationary_oracle(double delta, double sigma2, int nodes = 300);
StationaryReport stationary_report(double delta, double c_total, double beta,
                                   double omega);

}  // namespace spinbath
