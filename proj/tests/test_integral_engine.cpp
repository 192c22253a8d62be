#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spinbath/config_sum.hpp"
#include "spinbath/integral_engine.hpp"
#include "spinbath/rng.hpp"
#include "test_helpers.hpp"

using namespace spinbath;
using testutil::random_model;

TEST_CASE("identity18 residuals") {
  // delta = 0 reduces to the elementary cosine integral
  CHECK(identity18_residual(0.0, 1.7, 3.0) < 1e-10);
  // omega = 0
  CHECK(identity18_residual(1.0, 0.0, 2.0) < 1e-8);
  CHECK(identity18_residual(1.0, 1.0, 2.0) < 1e-8);
  CHECK(identity18_residual(0.3, 4.2, 5.0) < 1e-8);
  CHECK(identity18_residual(1.0, 1.0, 0.0) == 0.0);
}

TEST_CASE("magnetization integral basics") {
  const ModelSpec m = random_model(1, 4, 0.7);
  const auto phi = CharacteristicFunction::exact_product(m);
  CHECK(magnetization_integral(phi, m.delta(), 0.0) ==
        doctest::Approx(1.0).epsilon(1e-9));

  // delta = 0: reduces to Re Phi(2t)
  const ModelSpec d0 = random_model(2, 5, 0.9);
  const auto phi0 = CharacteristicFunction::exact_product(d0);
  for (double t : {0.4, 1.3, 3.2})
    CHECK(magnetization_integral(phi0, 0.0, t) ==
          doctest::Approx(phi_exact(d0, 2 * t).real()).epsilon(1e-9));
}

TEST_CASE("magnetization integral agrees with the configuration sum") {
  const ModelSpec m = random_model(3, 4, 0.6);
  IntegralEngine engine(CharacteristicFunction::exact_product(m), m.delta(),
                        {}, 10.0);
  for (int i = 0; i < 20; ++i) {
    const double t = uniform_in(4, i, 0, 0.0, 10.0);
    CHECK(std::fabs(engine.magnetization(t) - magnetization_at(m, t)) < 1e-6);
  }
}

TEST_CASE("analytic Leibniz derivative matches finite differences of F") {
  const ModelSpec m = random_model(5, 3, 1.1);
  IntegralEngine engine(CharacteristicFunction::exact_product(m), m.delta(),
                        {}, 4.0);
  const double h = 1e-4;
  for (double eta : {0.8, 2.3, 5.6}) {
    const double fd =
        (engine.f_of(eta + h) - engine.f_of(eta - h)) / (2.0 * h);
    CHECK(std::fabs(engine.f_derivative(eta) - fd) < 1e-6);
  }
}

TEST_CASE("coherence integral: trivial zeros and the engine range check") {
  const ModelSpec m = random_model(6, 3, 0.8);
  const auto phi = CharacteristicFunction::exact_product(m);
  CHECK(std::abs(coherence_integral(phi, m.delta(), 0.0,
                                    CoherenceConvention::Reconciled)) == 0.0);

  const ModelSpec decoupled = ModelSpec::build(1.1, 0.7, {{1.0, 0.0}});
  const auto phid = CharacteristicFunction::exact_product(decoupled);
  for (double t : {0.5, 2.0})
    CHECK(std::abs(coherence_integral(phid, 1.1, t,
                                      CoherenceConvention::Reconciled)) == 0.0);

  IntegralEngine engine(phi, m.delta(), {}, 1.0);
  CHECK_THROWS_AS(engine.magnetization(2.0), validation_error);
  CHECK_THROWS_AS(engine.magnetization(-0.5), validation_error);
}

TEST_CASE("reconciled coherence matches the configuration sum; printed is 2x on the real part") {
  const ModelSpec m = random_model(7, 3, 0.9);
  IntegralEngine engine(CharacteristicFunction::exact_product(m), m.delta(),
                        {}, 2.0);
  for (double t : {0.5, 1.0, 2.0}) {
    const auto rec = engine.coherence(t, CoherenceConvention::Reconciled);
    const auto pri = engine.coherence(t, CoherenceConvention::Printed);
    CHECK(std::abs(rec - coherence_at(m, t)) < 1e-6);
    CHECK(pri.imag() == rec.imag());
    if (std::fabs(rec.real()) > 1e-8)
      CHECK(pri.real() / rec.real() == doctest::Approx(2.0).epsilon(1e-6));
  }
}

TEST_CASE("trajectory evaluation reuses tables and parallelizes deterministically") {
  const ModelSpec m = random_model(8, 4, 0.5);
  IntegralEngine engine(CharacteristicFunction::exact_product(m), m.delta(),
                        {}, 6.0);
  std::vector<double> grid;
  for (int i = 0; i <= 30; ++i) grid.push_back(0.2 * i);
  const Trajectory t1 = engine.time_series(grid, 1);
  const Trajectory t4 = engine.time_series(grid, 4);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(t1.points[i].sz == t4.points[i].sz);
    CHECK(t1.points[i].rho10 == t4.points[i].rho10);
    CHECK(std::fabs(t1.points[i].sz - magnetization_at(m, grid[i])) < 1e-6);
  }
}

TEST_CASE("tabulated-phi fast path reproduces direct evaluation") {
  // Padding with zero-coupling modes leaves Phi unchanged but pushes the
  // mode count over the tabulation threshold, so the same physics runs once
  // through direct products and once through the Chebyshev proxy.
  const ModelSpec small = random_model(11, 12, 0.8);
  std::vector<Mode> padded = small.modes();
  for (int k = 0; k < 60; ++k) padded.push_back({1.0, 0.0});
  const ModelSpec big =
      ModelSpec::build(small.delta(), small.beta(), padded);

  IntegralEngine direct(CharacteristicFunction::exact_product(small),
                        small.delta(), {}, 8.0);
  IntegralEngine proxied(CharacteristicFunction::exact_product(big),
                         small.delta(), {}, 8.0);
  for (double t : {0.5, 2.7, 8.0}) {
    CHECK(std::fabs(direct.magnetization(t) - proxied.magnetization(t)) <
          1e-8);
    CHECK(std::abs(direct.coherence(t, CoherenceConvention::Reconciled) -
                   proxied.coherence(t, CoherenceConvention::Reconciled)) <
          1e-8);
  }
}

TEST_CASE("gaussian-limit engine runs and stays within loose reach of exact N = 400") {
  SamplerSpec sp;
  sp.count = 400;
  sp.omega = 1.0;
  sp.c_total = 1.0;
  sp.distribution = CouplingDistribution::Rademacher;
  const ModelSpec m = ModelSpec::build(1.0, 0.0, sample_couplings(sp));

  IntegralEngine exact(CharacteristicFunction::exact_product(m), 1.0, {}, 5.0);
  IntegralEngine gauss(CharacteristicFunction::gaussian(1.0, 0.0, 1.0), 1.0,
                       {}, 5.0);
  for (double t : {0.5, 2.0, 5.0})
    CHECK(std::fabs(exact.magnetization(t) - gauss.magnetization(t)) < 5e-3);
}

TEST_CASE("stationary closed forms") {
  CHECK(stationary_paper(0.0, 1.0, 0.0, 1.0) == 0.0);
  CHECK_THROWS_AS(stationary_paper(1.0, 0.0, 0.0, 1.0), validation_error);

  // printed value at z = 1: sqrt(2) sqrt(pi/8) erfcx(1)
  const double erfcx1 = erfc_scaled(1.0);
  CHECK(stationary_paper(std::sqrt(2.0), 1.0, 0.0, 1.0) ==
        doctest::Approx(std::sqrt(2.0) * std::sqrt(M_PI / 8.0) * erfcx1)
            .epsilon(1e-13));
  // C -> 0 limit is 1/2
  CHECK(stationary_paper(1.0, 1e-12, 0.0, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-6));

  CHECK(stationary_oracle(0.0, 1.0) == 0.0);
  CHECK(stationary_oracle(1.0, 0.0) == 1.0);
  // closed form sqrt(pi) z erfcx(z) at z = 1
  const double gh = stationary_oracle(std::sqrt(2.0), 1.0);
  CHECK(gh == doctest::Approx(std::sqrt(M_PI) * erfcx1).epsilon(1e-12));
  CHECK(gh == doctest::Approx(0.7578721561).epsilon(1e-9));
  // node-count stability
  CHECK(std::fabs(stationary_oracle(std::sqrt(2.0), 1.0, 300) -
                  stationary_oracle(std::sqrt(2.0), 1.0, 600)) < 1e-10);
}

TEST_CASE("stationary report bundles the ratio") {
  const StationaryReport rep = stationary_report(std::sqrt(2.0), 1.0, 0.0, 1.0);
  CHECK(rep.ratio_defined);
  CHECK(rep.ratio == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(rep.z == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rep.sigma2 == doctest::Approx(1.0).epsilon(1e-14));

  const StationaryReport zero = stationary_report(0.0, 1.0, 0.5, 1.0);
  CHECK(!zero.ratio_defined);
  CHECK(zero.paper_value == 0.0);
  CHECK(zero.oracle_value == 0.0);

  for (int i = 0; i < 20; ++i) {
    const double d = uniform_in(40, i, 0, 0.0, 3.0);
    const double c = uniform_in(40, i, 1, 0.1, 3.0);
    const double b = uniform_in(40, i, 2, 0.0, 2.0);
    const StationaryReport r = stationary_report(d, c, b, 1.0);
    CHECK(r.oracle_value >= 0.0);
    CHECK(r.oracle_value <= 1.0);
    CHECK(r.z >= 0.0);
  }
}

TEST_CASE("loosened quadrature degrades the integral engine visibly") {
  const ModelSpec m = random_model(9, 4, 0.7);
  QuadratureSettings loose;
  loose.abs_tol = 1e-2;
  loose.rel_tol = 1e-2;
  IntegralEngine engine(CharacteristicFunction::exact_product(m), m.delta(),
                        loose, 8.0);
  double worst = 0.0;
  for (double t : {1.0, 3.0, 5.0, 7.0})
    worst = std::max(worst,
                     std::fabs(engine.magnetization(t) - magnetization_at(m, t)));
  CHECK(worst > 1e-6);
}
