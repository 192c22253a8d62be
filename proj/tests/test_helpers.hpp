#pragma once

// Shared helpers for the test suites: seeded random models built with the
// library's counter RNG, and a brute-force configuration enumerator kept
// independent of the engines under test.

#include <complex>
#include <vector>

#include "spinbath/model.hpp"
#include "spinbath/rng.hpp"

namespace testutil {

using spinbath::BathConfiguration;
using spinbath::Mode;
using spinbath::ModelSpec;

// Random model with N modes, delta/omega/g uniform in [-2, 2].
inline ModelSpec random_model(std::uint64_t seed, int n, double beta) {
  const double delta = spinbath::uniform_in(seed, 0, 7, -2.0, 2.0);
  std::vector<Mode> modes(n);
  for (int k = 0; k < n; ++k) {
    modes[k].omega = spinbath::uniform_in(seed, k + 1, 8, -2.0, 2.0);
    modes[k].g = spinbath::uniform_in(seed, k + 1, 9, -2.0, 2.0);
  }
  return ModelSpec::build(delta, beta, modes);
}

// sum over all configurations of w(s) f(Omega(s)); direct enumeration.
template <typename F>
double enumerate_weighted(const ModelSpec& model, F f) {
  const std::size_t total = std::size_t{1} << model.size();
  double sum = 0.0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    BathConfiguration c{idx, static_cast<int>(model.size())};
    sum += spinbath::boltzmann_weight(model, c) * f(spinbath::omega_of(model, c));
  }
  return sum;
}

// sum over configurations of w(s) e^{i x Omega(s)}.
inline std::complex<double> enumerate_phi(const ModelSpec& model, double x) {
  const std::size_t total = std::size_t{1} << model.size();
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t idx = 0; idx < total; ++idx) {
    BathConfiguration c{idx, static_cast<int>(model.size())};
    sum += spinbath::boltzmann_weight(model, c) *
           std::polar(1.0, x * spinbath::omega_of(model, c));
  }
  return sum;
}

}  // namespace testutil
