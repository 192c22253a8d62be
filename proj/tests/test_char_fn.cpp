#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spinbath/char_fn.hpp"
#include "spinbath/rng.hpp"
#include "test_helpers.hpp"

using namespace spinbath;
using testutil::random_model;

TEST_CASE("phi_exact basics") {
  const ModelSpec m = random_model(1, 5, 0.8);
  CHECK(phi_exact(m, 0.0) == std::complex<double>(1.0, 0.0));

  // beta = 0: purely real product of cosines
  const ModelSpec hot = random_model(2, 4, 0.0);
  for (double x : {0.5, 2.0, 11.0}) {
    const auto v = phi_exact(hot, x);
    CHECK(v.imag() == 0.0);
    double expect = 1.0;
    for (const Mode& mode : hot.modes()) expect *= std::cos(mode.g * x);
    CHECK(v.real() == doctest::Approx(expect).epsilon(1e-14));
  }

  // zero temperature, single mode, g = 1: e^{-ix}
  const ModelSpec cold = ModelSpec::build(1.0, 0.0, {{1.0, 1.0}}, {}, true);
  for (double x : {0.3, 2.0, 9.0}) {
    const auto v = phi_exact(cold, x);
    CHECK(v.real() == doctest::Approx(std::cos(x)).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(-std::sin(x)).epsilon(1e-14));
  }
}

TEST_CASE("phi_exact equals the configuration enumeration") {
  for (int n : {1, 4, 8, 12}) {
    const ModelSpec m = random_model(10 + n, n, 0.9);
    for (int i = 0; i <= 10; ++i) {
      const double x = 2.0 * i;
      const auto direct = testutil::enumerate_phi(m, x);
      CHECK(std::abs(phi_exact(m, x) - direct) < 1e-12);
    }
  }
}

TEST_CASE("phi invariants: modulus bound and conjugation symmetry") {
  const ModelSpec m = random_model(20, 6, 1.3);
  const CharacteristicFunction phi = CharacteristicFunction::exact_product(m);
  CHECK(std::abs(phi(0.0) - std::complex<double>(1, 0)) == 0.0);
  for (int i = 0; i < 50; ++i) {
    const double x = uniform_in(21, i, 0, -15.0, 15.0);
    CHECK(std::abs(phi(x)) <= 1.0 + 1e-14);
    CHECK(std::abs(phi(-x) - std::conj(phi(x))) < 1e-15);
  }
}

TEST_CASE("exponent_term reproduces the product factor and stays continuous") {
  CHECK(exponent_term(0.7, 1.1, 0.8, 0.0) == std::complex<double>(0.0, 0.0));

  // Re A <= 0 always
  for (int i = 0; i < 1000; ++i) {
    const double g = uniform_in(30, i, 0, -2.0, 2.0);
    const double om = uniform_in(30, i, 1, -2.0, 2.0);
    const double beta = uniform_in(30, i, 2, 0.0, 3.0);
    const double x = uniform_in(30, i, 3, -20.0, 20.0);
    CHECK(exponent_term(g, om, beta, x).real() <= 1e-15);
  }

  // exp(A_k) equals the corresponding product factor
  for (int i = 0; i < 200; ++i) {
    const double g = uniform_in(31, i, 0, -2.0, 2.0);
    const double om = uniform_in(31, i, 1, -2.0, 2.0);
    const double beta = uniform_in(31, i, 2, 0.0, 3.0);
    const double x = uniform_in(31, i, 3, -20.0, 20.0);
    const std::complex<double> factor{
        std::cos(g * x), -std::tanh(beta * om) * std::sin(g * x)};
    CHECK(std::abs(std::exp(exponent_term(g, om, beta, x)) - factor) < 1e-12);
  }

  // beta = infinity, g = 1: A = -i x after unwrapping
  const double inf = std::numeric_limits<double>::infinity();
  for (double x : {0.5, 2.0, 7.9, 30.0}) {
    const auto a = exponent_term(1.0, 1.0, inf, x);
    CHECK(a.real() == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(a.imag() == doctest::Approx(-x).epsilon(1e-13));
  }

  // continuity across the tan singularity at g x = pi/2
  const double g = 1.0, om = 0.9, beta = 1.1;
  double prev = exponent_term(g, om, beta, 1.4).imag();
  for (double x = 1.4 + 1e-3; x < 1.8; x += 1e-3) {
    const double cur = exponent_term(g, om, beta, x).imag();
    CHECK(std::fabs(cur - prev) < 0.02);
    prev = cur;
  }
}

TEST_CASE("gaussian characteristic function") {
  CHECK(phi_gaussian(1.0, 0.7, 1.3, 0.0) == 1.0);
  for (double x : {0.5, 1.0, 3.0})
    CHECK(phi_gaussian(1.0, 0.0, 1.0, x) ==
          doctest::Approx(std::exp(-0.5 * x * x)).epsilon(1e-14));
  // frozen bath at large beta
  CHECK(phi_gaussian(1.0, 400.0, 1.0, 5.0) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(effective_sigma2(1.0, 0.0, 2.7) == 1.0);
  CHECK(effective_sigma2(3.3, 5.0, 0.0) == 3.3);
  double prev = effective_sigma2(1.0, 0.0, 1.0);
  for (double beta : {0.3, 0.8, 1.5, 3.0}) {
    const double cur = effective_sigma2(1.0, beta, 1.0);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK_THROWS_AS(effective_sigma2(-1.0, 0.0, 1.0), validation_error);
}

TEST_CASE("balanced Rademacher product converges to the gaussian at rate 1/N") {
  for (double beta : {0.0, 1.0}) {
    auto sup_err = [beta](std::size_t n) {
      SamplerSpec sp;
      sp.count = n;
      sp.omega = 1.0;
      sp.c_total = 1.0;
      sp.distribution = CouplingDistribution::Rademacher;
      const ModelSpec m = ModelSpec::build(1.0, beta, sample_couplings(sp));
      double worst = 0.0;
      for (int i = 0; i <= 2000; ++i) {
        const double x = 10.0 * i / 2000.0;
        worst = std::max(worst, std::abs(phi_exact(m, x) -
                                         phi_gaussian(1.0, beta, 1.0, x)));
      }
      return worst;
    };
    const double e100 = sup_err(100);
    const double e400 = sup_err(400);
    CHECK(e400 / e100 > 0.15);
    CHECK(e400 / e100 < 0.35);
  }
}
