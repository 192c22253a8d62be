#pragma once

// Test-only reference implementations, independent of src/numerics.cpp:
// __float128 power series / Hankel expansions for J0, J1 and a __float128
// series + double-exponential quadrature for the scaled complementary error
// function. Accuracy is far below 1e-13 everywhere they are used, so they
// serve as oracles for the double-precision implementations.

#include <quadmath.h>

namespace oracle {

// J_nu(x) for nu in {0,1}, |x| <= 20: plain power series. The largest term
// at x = 20 is ~8e6, so float128's 1.9e-34 epsilon leaves ~1e-26 absolute.
inline __float128 bessel_series_f128(int nu, __float128 x) {
  const __float128 q = 0.25Q * x * x;
  __float128 term = (nu == 0) ? 1.0Q : 0.5Q * x;
  __float128 sum = term;
  for (int m = 1; m <= 200; ++m) {
    term *= -q / (static_cast<__float128>(m) * (m + nu));
    sum += term;
    if (fabsq(term) < 1e-40Q * (fabsq(sum) + 1e-300Q)) break;
  }
  return sum;
}

// Hankel asymptotic expansion, truncated at its smallest term; the
// truncation error is ~e^{-2x} < 4e-18 for x >= 20.
inline __float128 bessel_hankel_f128(int nu, __float128 x) {
  const __float128 mu = 4.0Q * nu * nu;
  __float128 p = 1.0Q, q = 0.0Q, a = 1.0Q;
  __float128 prev = 1e300Q;
  for (int m = 1; m <= 200; ++m) {
    a *= (mu - (2.0Q * m - 1) * (2.0Q * m - 1)) / (8.0Q * m * x);
    if (fabsq(a) >= prev) break;
    prev = fabsq(a);
    switch (m % 4) {
      case 0: p += a; break;
      case 1: q += a; break;
      case 2: p -= a; break;
      default: q -= a; break;
    }
    if (fabsq(a) < 1e-38Q) break;
  }
  const __float128 chi = x - (0.5Q * nu + 0.25Q) * M_PIq;
  return sqrtq(2.0Q / (M_PIq * x)) * (p * cosq(chi) - q * sinq(chi));
}

inline double bessel_j(int nu, double x) {
  __float128 ax = fabsq(static_cast<__float128>(x));
  __float128 v = (ax <= 20.0Q) ? bessel_series_f128(nu, ax)
                               : bessel_hankel_f128(nu, ax);
  if (nu == 1 && x < 0) v = -v;
  return static_cast<double>(v);
}

inline double j0(double x) { return bessel_j(0, x); }
inline double j1(double x) { return bessel_j(1, x); }

// erfcx by series: e^{z^2}(1 - erf(z)); float128 keeps the cancellation
// harmless for z <= 4 (relative error ~1e-20 there).
inline __float128 erfcx_series_f128(__float128 z) {
  if (z == 0.0Q) return 1.0Q;
  const __float128 zz = z * z;
  __float128 term = z, sum = z;
  for (int n = 1; n <= 400; ++n) {
    term *= -zz / n;
    const __float128 add = term / (2 * n + 1);
    sum += add;
    if (fabsq(add) < 1e-45Q * fabsq(sum)) break;
  }
  const __float128 erf = 2.0Q / sqrtq(M_PIq) * sum;
  return expq(zz) * (1.0Q - erf);
}

// erfcx(z) = (2/sqrt(pi)) int_0^inf e^{-u^2 - 2 z u} du, evaluated with the
// exp-sinh double-exponential rule; positive integrand, no cancellation,
// works for every z >= 0.
inline __float128 erfcx_quadrature_f128(__float128 z) {
  const __float128 h = 0.008Q;
  const int nmax = 600;
  __float128 sum = 0.0Q;
  for (int k = -nmax; k <= nmax; ++k) {
    const __float128 t = h * k;
    const __float128 u = expq(0.5Q * M_PIq * sinhq(t));
    const __float128 w = 0.5Q * M_PIq * coshq(t) * u;  // du/dt
    const __float128 f = expq(-u * u - 2.0Q * z * u);
    sum += w * f;
  }
  sum *= h;
  return 2.0Q / sqrtq(M_PIq) * sum;
}

inline double erfcx(double z) {
  const __float128 zq = z;
  return static_cast<double>(zq <= 4.0Q ? erfcx_series_f128(zq)
                                        : erfcx_quadrature_f128(zq));
}

}  // namespace oracle
