#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spinbath/config_sum.hpp"
#include "spinbath/char_fn.hpp"
#include "spinbath/hilbert_oracle.hpp"
#include "spinbath/rng.hpp"
#include "test_helpers.hpp"

using namespace spinbath;
using testutil::random_model;

TEST_CASE("magnetization basics") {
  const ModelSpec m = random_model(1, 4, 0.7);
  CHECK(magnetization_at(m, 0.0) == doctest::Approx(1.0).epsilon(1e-14));

  const ModelSpec decoupled =
      ModelSpec::build(1.3, 0.5, {{1.0, 0.0}, {2.0, 0.0}});
  for (double t : {0.1, 1.0, 7.7})
    CHECK(magnetization_at(decoupled, t) == doctest::Approx(1.0).epsilon(1e-14));

  // N=1, delta=1, g=1: gamma = sqrt(2) in both configurations, so at
  // t = pi/(2 sqrt 2) the cos^2 vanishes and Omega^2 = delta^2 kills sin^2
  const ModelSpec one = ModelSpec::build(1.0, 0.9, {{1.0, 1.0}});
  const double t_zero = M_PI / (2.0 * std::sqrt(2.0));
  CHECK(std::fabs(magnetization_at(one, t_zero)) < 1e-13);
  CHECK(std::fabs(HilbertOracle(one).reduced_at(t_zero).sz()) < 1e-10);
}

TEST_CASE("magnetization is beta-independent for N = 1") {
  // Omega^2 = g^2 in both configurations, so the weights cannot matter.
  const ModelSpec base = ModelSpec::build(0.8, 0.0, {{1.2, 0.9}});
  const double ref = magnetization_at(base, 2.3);
  for (double beta : {1.0, 10.0}) {
    const ModelSpec m = ModelSpec::build(0.8, beta, {{1.2, 0.9}});
    CHECK(magnetization_at(m, 2.3) == doctest::Approx(ref).epsilon(1e-14));
  }
}

TEST_CASE("coherence basics") {
  const ModelSpec m = random_model(2, 4, 0.4);
  CHECK(std::abs(coherence_at(m, 0.0)) == 0.0);

  const ModelSpec decoupled = ModelSpec::build(1.0, 0.5, {{1.0, 0.0}});
  CHECK(std::abs(coherence_at(decoupled, 3.0)) == 0.0);

  // delta = 0: rho10(t) = (i/2) Im Phi(2t)
  const ModelSpec d0 = ModelSpec::build(0.0, 0.8, {{1.0, 0.7}, {0.4, -1.1}});
  for (double t : {0.3, 1.1, 4.0}) {
    const std::complex<double> c = coherence_at(d0, t);
    CHECK(c.real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(c.imag() ==
          doctest::Approx(0.5 * phi_exact(d0, 2.0 * t).imag()).epsilon(1e-12));
  }
  // cross-check against the oracle at N = 3
  const ModelSpec m3 = random_model(3, 3, 0.6);
  const HilbertOracle oracle(m3);
  for (double t : {0.5, 1.0, 2.0})
    CHECK(std::abs(coherence_at(m3, t) - oracle.reduced_at(t).rho10) < 1e-10);
}

TEST_CASE("reduced density matrix for general initial states") {
  const ModelSpec m = random_model(4, 3, 0.5).with_initial({1.1, 0.7});
  const ReducedState r0 = reduced_density_matrix_at(m, 0.0);
  const ReducedState proj = ReducedState::projector({1.1, 0.7});
  CHECK(std::abs(r0.rho11 - proj.rho11) < 1e-14);
  CHECK(std::abs(r0.rho10 - proj.rho10) < 1e-14);

  // initial |0> negates sz relative to initial |1>
  const ModelSpec up = random_model(5, 4, 0.8);
  const ModelSpec down = up.with_initial({M_PI, 0.0});
  for (double t : {0.7, 2.2, 6.0})
    CHECK(reduced_density_matrix_at(down, t).sz() ==
          doctest::Approx(-magnetization_at(up, t)).epsilon(1e-12));

  // against the oracle, entrywise
  const ModelSpec m4 = random_model(6, 4, 1.2);
  const ReducedState a = reduced_density_matrix_at(m4, 2.5);
  const ReducedState b = HilbertOracle(m4).reduced_at(2.5);
  CHECK(std::abs(a.rho11 - b.rho11) < 1e-10);
  CHECK(std::abs(a.rho00 - b.rho00) < 1e-10);
  CHECK(std::abs(a.rho10 - b.rho10) < 1e-10);

  // for initial |1> the matrix entries reproduce the scalar evaluators
  const ReducedState r = reduced_density_matrix_at(m4, 1.4);
  CHECK(r.sz() == doctest::Approx(magnetization_at(m4, 1.4)).epsilon(1e-12));
  CHECK(std::abs(r.rho10 - coherence_at(m4, 1.4)) < 1e-12);
}

TEST_CASE("time series invariants and symmetry") {
  const ModelSpec m = random_model(7, 5, 0.9);

  const Trajectory single = time_series(m, {0.0});
  CHECK(single.points.size() == 1);
  CHECK(single.points[0].sz == doctest::Approx(1.0).epsilon(1e-14));

  std::vector<double> sym;
  for (int i = -10; i <= 10; ++i) sym.push_back(0.37 * i);
  const Trajectory tr = time_series(m, sym);
  for (std::size_t i = 0; i < sym.size(); ++i) {
    const TrajectoryPoint& p = tr.points[i];
    const TrajectoryPoint& q = tr.points[sym.size() - 1 - i];
    CHECK(p.sz == doctest::Approx(q.sz).epsilon(1e-12));           // even
    CHECK(p.rho10.real() == doctest::Approx(q.rho10.real()).epsilon(1e-12));
    CHECK(p.rho10.imag() == doctest::Approx(-q.rho10.imag()).epsilon(1e-12));
    // trajectory invariants
    CHECK(p.state.rho11.real() + p.state.rho00.real() ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.sz == doctest::Approx(p.state.sz()).epsilon(1e-12));
    CHECK(std::abs(p.rho10) <= 0.5 + 1e-10);
    double lo, hi;
    p.state.eigenvalues(lo, hi);
    CHECK(lo >= -1e-10);
    CHECK(hi <= 1.0 + 1e-10);
  }

  const Trajectory again = time_series(m, sym);
  for (std::size_t i = 0; i < sym.size(); ++i) {
    CHECK(again.points[i].sz == tr.points[i].sz);
    CHECK(again.points[i].rho10 == tr.points[i].rho10);
  }

  CHECK_THROWS_AS(time_series(m, {}), validation_error);
  CHECK_THROWS_AS(time_series(m, {1.0, 1.0}), validation_error);
}

TEST_CASE("parallel kernel is bitwise thread-count independent and matches the serial reference") {
  const ModelSpec m = random_model(8, 14, 0.6);
  std::vector<double> grid;
  for (int i = 0; i <= 16; ++i) grid.push_back(0.61 * i);

  const Trajectory t1 = time_series(m, grid, 1);
  const Trajectory t8 = time_series(m, grid, 8);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(t1.points[i].sz == t8.points[i].sz);
    CHECK(t1.points[i].rho10 == t8.points[i].rho10);
  }

  for (double t : {0.61, 4.88}) {
    CHECK(std::fabs(serial_ref::magnetization_at(m, t) -
                    magnetization_at(m, t)) < 1e-14);
    CHECK(std::abs(serial_ref::coherence_at(m, t) - coherence_at(m, t)) <
          1e-14);
  }
}

TEST_CASE("zero temperature runs on the single all-down configuration") {
  const ModelSpec m =
      ModelSpec::build(0.9, 0.0, {{1.0, 0.4}, {0.7, -0.2}}, {}, true);
  const double omega_val = -(0.4 - 0.2);
  const double gamma = gamma_of(0.9, omega_val);
  const double t = 1.7;
  const double expect =
      (0.9 * 0.9 + omega_val * omega_val * std::cos(2 * gamma * t)) /
      (gamma * gamma);
  CHECK(magnetization_at(m, t) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("size cap points at the integral engine") {
  std::vector<Mode> modes(25, Mode{1.0, 0.1});
  const ModelSpec big = ModelSpec::build(1.0, 0.0, modes);
  try {
    magnetization_at(big, 1.0);
    CHECK(false);
  } catch (const validation_error& e) {
    CHECK(std::string(e.what()).find("integral") != std::string::npos);
  }
}

TEST_CASE("cross-engine agreement on random models up to N = 6") {
  for (std::uint64_t seed = 60; seed < 70; ++seed) {
    const int n = 1 + static_cast<int>(seed % 6);
    const double beta = (seed % 3 == 0) ? 0.0 : ((seed % 3 == 1) ? 0.5 : 2.0);
    const ModelSpec m = random_model(seed, n, beta);
    const HilbertOracle oracle(m);
    for (int i = 0; i < 5; ++i) {
      const double t = uniform_in(seed, 100 + i, 0, 0.0, 10.0);
      const ReducedState a = oracle.reduced_at(t);
      CHECK(std::fabs(a.sz() - magnetization_at(m, t)) < 1e-10);
      CHECK(std::abs(a.rho10 - coherence_at(m, t)) < 1e-10);
    }
  }
}

TEST_CASE("stationary time averages") {
  const ModelSpec decoupled = ModelSpec::build(1.0, 0.3, {{1.0, 0.0}});
  const auto d = stationary_time_average(decoupled, 10.0, 20.0, 200);
  CHECK(d.first == doctest::Approx(1.0).epsilon(1e-13));

  // N=1, delta=1, g=1: the time average of sz is delta^2/gamma^2 = 1/2
  const ModelSpec one = ModelSpec::build(1.0, 0.6, {{1.0, 1.0}});
  const auto a = stationary_time_average(one, 50.0, 150.0, 10000);
  CHECK(std::fabs(a.first - 0.5) < 0.01);

  // N=12, beta=0, Gaussian couplings: window average vs direct enumeration
  SamplerSpec sp;
  sp.count = 12;
  sp.omega = 1.0;
  sp.c_total = 1.0;
  sp.seed = 7;
  const ModelSpec m = ModelSpec::build(1.0, 0.0, sample_couplings(sp));
  const double exact = testutil::enumerate_weighted(m, [&](double om) {
    const double g2 = 1.0 + om * om;
    return 1.0 / g2;
  });
  const auto w = stationary_time_average(m, 200.0, 400.0, 20000);
  CHECK(std::fabs(w.first - exact) < 1e-3);

  CHECK_THROWS_AS(stationary_time_average(one, 0.0, 10.0, 1000),
                  validation_error);
  CHECK_THROWS_AS(stationary_time_average(one, 5.0, 10.0, 50),
                  validation_error);
}
