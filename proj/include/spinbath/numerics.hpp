#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "spinbath/errors.hpp"

namespace spinbath {

// Bessel J0, J1 to |error| <= 1e-12 on |x| <= 50: power series (extended
// accumulation) below the crossover, Hankel amplitude/phase expansion above.
double bessel_j0(double x);
double bessel_j1(double x);

// J1(z)/z, entire, = 1/2 at z = 0.
double j1_over_z(double z);

// K(r) = delta * J1(delta r)/r with K(0) = delta^2/2; the kernel of the
// off-diagonal integrand and of the Leibniz derivative.
inline double j1_kernel(double delta, double r) {
  return delta * delta * j1_over_z(delta * r);
}

// e^{z^2} erfc(z) for z >= 0, 1e-12 relative on [0, 50]; never overflows.
// Power series below 2, Lentz continued fraction above. z < 0 throws.
double erfc_scaled(double z);

// sin(g t)/g with the g -> 0 limit t.
inline double sin_over(double g, double t) {
  if (g == 0.0) return t;
  return std::sin(g * t) / g;
}

// Compensated (Neumaier) accumulator; deterministic for a fixed add order.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct QuadratureSettings {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 2000;
  // Highest angular frequency present in the integrand. When > 0 and the
  // requested absolute tolerance is tight (<= 1e-4), initial panels are
  // seeded at <= pi/4 of phase each so an oscillatory integrand cannot
  // alias into a spuriously small error estimate. Coarse-tolerance requests
  // skip the seeding and rely on the error estimate alone, which is what a
  // deliberately loosened tolerance is expected to exercise.
  double oscillation_hint = 0.0;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

// Adaptive Gauss-Kronrod (G7,K15) bisection. Deterministic: the refinement
// order and final summation order do not depend on thread count or timing.
// Throws quadrature_error when the bisection budget is exhausted.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureSettings& settings = {});

// Gauss-Hermite rule for weight e^{-x^2} on (-inf, inf), by Golub-Welsch on
// the Jacobi matrix; weights stay finite for any n (extreme-node weights
// underflow to zero harmlessly).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermiteRule gauss_hermite(int n);

// Piecewise Chebyshev interpolant of a smooth function on [a, b], built
// adaptively to a target absolute accuracy; supports exact integration of
// the stored polynomial over any subinterval. Used to amortize expensive
// integrand factors across many quadratures.
template <typename T>
class PiecewiseChebyshev {
 public:
  static constexpr int kDegree = 16;

  static PiecewiseChebyshev build(const std::function<T(double)>& f, double a,
                                  double b, double tol,
                                  double oscillation_hint = 0.0);

  T eval(double x) const;
  T integral(double lo, double hi) const;
  double lower() const { return a_; }
  double upper() const { return b_; }
  std::size_t panel_count() const { return panels_.size(); }

 private:
  struct Panel {
    double lo, hi;
    T coeff[kDegree + 1];       // Chebyshev coefficients on [lo, hi]
    T anti[kDegree + 2];        // antiderivative coefficients (same interval)
    T full_integral;
  };
  const Panel& panel_at(double x) const;
  double a_ = 0.0, b_ = 0.0;
  std::vector<Panel> panels_;          // sorted by lo
  std::vector<T> prefix_;              // integral from a_ to panels_[i].lo
};

extern template class PiecewiseChebyshev<double>;
extern template class PiecewiseChebyshev<std::complex<double>>;

}  // namespace spinbath
