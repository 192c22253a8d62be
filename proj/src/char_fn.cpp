#include "spinbath/char_fn.hpp"

#include <cmath>

namespace spinbath {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 1/cosh without overflow.
double sech(double y) {
  const double a = std::fabs(y);
  const double e = std::exp(-a);
  return 2.0 * e / (1.0 + e * e);
}

}  // namespace

double effective_sigma2(double c_total, double beta, double omega) {
  if (!(c_total >= 0.0))
    throw validation_error("c_total", "c_total must be >= 0");
  const double s = sech(beta * omega);
  return c_total * s * s;
}

double phi_gaussian(double c_total, double beta, double omega, double x) {
  return std::exp(-0.5 * effective_sigma2(c_total, beta, omega) * x * x);
}

std::complex<double> phi_exact(const ModelSpec& model, double x) {
  if (model.zero_temperature()) {
    // single all-down configuration: Phi = e^{-i x sum_k g_k}
    double gsum = 0.0;
    for (const Mode& m : model.modes()) gsum += m.g;
    return std::polar(1.0, -x * gsum);
  }
  std::complex<double> prod{1.0, 0.0};
  for (const Mode& m : model.modes()) {
    const double gx = m.g * x;
    prod *= std::complex<double>(std::cos(gx),
                                 -std::tanh(model.beta() * m.omega) *
                                     std::sin(gx));
  }
  return prod;
}

std::complex<double> exponent_term(double g, double omega, double beta,
                                   double x) {
  const double tau =
      std::isinf(beta) ? 1.0 : std::tanh(beta * omega);
  const double gx = g * x;
  const double c = std::cos(gx);
  const double s = std::sin(gx);
  const double re = 0.5 * std::log(c * c + tau * tau * s * s);

  double im;
  if (tau == 0.0) {
    im = 0.0;
  } else {
    // continuous branch: shift gx into (-pi/2, pi/2] and add back the
    // accumulated half-turns
    const double m = std::nearbyint(gx / kPi);
    const double u = gx - m * kPi;
    const double sgn = (tau > 0.0) ? 1.0 : -1.0;
    im = -(std::atan(tau * std::tan(u)) + m * kPi * sgn);
  }
  return {re, im};
}

CharacteristicFunction CharacteristicFunction::exact_product(
    const ModelSpec& model) {
  CharacteristicFunction cf;
  cf.gaussian_ = false;
  cf.model_ = std::make_shared<const ModelSpec>(model);
  double scale = 0.0;
  bool real = !model.zero_temperature();
  for (const Mode& m : model.modes()) {
    scale += std::fabs(m.g);
    if (!model.zero_temperature() &&
        std::tanh(model.beta() * m.omega) != 0.0 && m.g != 0.0)
      real = false;
  }
  cf.omega_scale_ = scale;
  cf.purely_real_ = real;
  return cf;
}

CharacteristicFunction CharacteristicFunction::gaussian(double c_total,
                                                        double beta,
                                                        double omega) {
  CharacteristicFunction cf;
  cf.gaussian_ = true;
  cf.purely_real_ = true;
  cf.sigma2_ = effective_sigma2(c_total, beta, omega);
  cf.omega_scale_ = 6.0 * std::sqrt(cf.sigma2_);
  return cf;
}

std::complex<double> CharacteristicFunction::operator()(double x) const {
  if (gaussian_) return {std::exp(-0.5 * sigma2_ * x * x), 0.0};
  return phi_exact(*model_, x);
}

}  // namespace spinbath
