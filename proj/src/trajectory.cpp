#include "spinbath/trajectory.hpp"

#include <cmath>

#include "spinbath/errors.hpp"

namespace spinbath {

void validate_grid(const std::vector<double>& times) {
  if (times.empty()) throw validation_error("grid", "time grid is empty");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]))
      throw validation_error("grid", "time grid contains a non-finite entry");
    if (i > 0 && !(times[i] > times[i - 1]))
      throw validation_error("grid", "time grid must be strictly increasing");
  }
}

std::vector<double> linspace_grid(double t_max, int steps) {
  if (!(t_max > 0.0)) throw validation_error("grid.t_max", "t_max must be > 0");
  if (steps < 2) throw validation_error("grid.steps", "steps must be >= 2");
  std::vector<double> t(steps);
  for (int i = 0; i < steps; ++i)
    t[i] = t_max * static_cast<double>(i) / (steps - 1);
  return t;
}

std::uint64_t run_fingerprint(const ModelSpec& model, std::uint64_t seed) {
  std::uint64_t h = model.fingerprint();
  h ^= seed + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace spinbath
