// Benchmark: serial reference vs the blocked OpenMP configuration-sum kernel,
// and the integral engine at bath sizes where enumeration is hopeless.
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spinbath/char_fn.hpp"
#include "spinbath/config_sum.hpp"
#include "spinbath/integral_engine.hpp"
#include "spinbath/threads.hpp"

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return 0.0;
#endif
}

}  // namespace

int main() {
  using namespace spinbath;

  const int threads = resolve_threads();
  std::printf("threads: %d\n\n", threads);

  std::printf("configuration sum, magnetization at t = 3.7:\n");
  std::printf("%4s %12s %12s %10s %12s\n", "N", "serial [s]", "parallel [s]",
              "speedup", "|diff|");
  for (int n : {14, 16, 18, 20}) {
    SamplerSpec sp;
    sp.count = static_cast<std::size_t>(n);
    sp.omega = 1.0;
    sp.c_total = 1.0;
    sp.seed = 42;
    const ModelSpec model = ModelSpec::build(1.0, 0.5, sample_couplings(sp));

    const double t0 = now();
    const double serial = serial_ref::magnetization_at(model, 3.7);
    const double t1 = now();
    const double parallel = magnetization_at(model, 3.7, threads);
    const double t2 = now();
    std::printf("%4d %12.4f %12.4f %9.2fx %12.3e\n", n, t1 - t0, t2 - t1,
                (t1 - t0) / std::max(t2 - t1, 1e-9),
                std::fabs(serial - parallel));
  }

  std::printf("\nintegral engine, 200-point trajectory, N = 10000 (1 thread):\n");
  SamplerSpec big;
  big.count = 10000;
  big.omega = 1.0;
  big.c_total = 1.0;
  big.seed = 123;
  const ModelSpec model = ModelSpec::build(1.0, 0.0, sample_couplings(big));
  std::vector<double> grid(200);
  for (int i = 0; i < 200; ++i) grid[i] = 10.0 * i / 199.0;

  const double t0 = now();
  IntegralEngine engine(CharacteristicFunction::exact_product(model),
                        model.delta(), {}, grid.back());
  const Trajectory traj = engine.time_series(grid, 1);
  const double t1 = now();
  std::printf("  %.2f s (sz at t=10: %.6f)\n", t1 - t0,
              traj.points.back().sz);
  return 0;
}
