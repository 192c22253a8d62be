#pragma once

#include <complex>
#include <memory>

#include "spinbath/model.hpp"

namespace spinbath {

// Thermal characteristic function Phi(x) = <e^{i x Omega}>:
//   exact product:  prod_k [cos(g_k x) - i tanh(beta omega_k) sin(g_k x)]
//   Gaussian limit: exp(-C x^2 / (2 cosh^2(beta omega)))
double effective_sigma2(double c_total, double beta, double omega);
double phi_gaussian(double c_total, double beta, double omega, double x);
std::complex<double> phi_exact(const ModelSpec& model, double x);

// One factor of the exact product in exponential form exp(A_k), with
//   A_k = 1/2 ln[cos^2(g x) + tanh^2(beta omega) sin^2(g x)]
//         - i atan[tanh(beta omega) tan(g x)]
// with the imaginary part unwrapped so A_k is continuous in x across the
// tan singularities. beta may be +infinity (tanh factor 1).
std::complex<double> exponent_term(double g, double omega, double beta,
                                   double x);

class CharacteristicFunction {
 public:
  static CharacteristicFunction exact_product(const ModelSpec& model);
  static CharacteristicFunction gaussian(double c_total, double beta,
                                         double omega);

  std::complex<double> operator()(double x) const;

  bool is_gaussian() const { return gaussian_; }
  // Phi is real for the Gaussian variant and for tanh(beta omega_k) = 0.
  bool purely_real() const { return purely_real_; }
  // Largest |Omega| carried by Phi: sum_k |g_k| exactly; for the Gaussian
  // variant a 6-sigma practical bound.
  double omega_scale() const { return omega_scale_; }
  std::size_t mode_count() const { return model_ ? model_->size() : 0; }
  const ModelSpec* model() const { return model_.get(); }
  double sigma2() const { return sigma2_; }

 private:
  CharacteristicFunction() = default;
  bool gaussian_ = false;
  bool purely_real_ = false;
  double omega_scale_ = 0.0;
  double sigma2_ = 0.0;
  std::shared_ptr<const ModelSpec> model_;
};

}  // namespace spinbath
