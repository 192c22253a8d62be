#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "spinbath/model.hpp"

namespace spinbath {

struct TrajectoryPoint {
  double t = 0.0;
  double sz = 0.0;
  std::complex<double> rho10{0.0, 0.0};
  ReducedState state;
};

// Time series of the reduced state with provenance.
struct Trajectory {
  std::string engine;
  std::uint64_t model_fingerprint = 0;
  std::vector<TrajectoryPoint> points;

  std::vector<double> times() const {
    std::vector<double> t;
    t.reserve(points.size());
    for (const auto& p : points) t.push_back(p.t);
    return t;
  }
};

// Validates a time grid: non-empty, finite, strictly increasing.
void validate_grid(const std::vector<double>& times);

// times = t_max * i/(steps-1), i = 0..steps-1.
std::vector<double> linspace_grid(double t_max, int steps);

// Combines the model fingerprint with a run seed.
std::uint64_t run_fingerprint(const ModelSpec& model, std::uint64_t seed);

}  // namespace spinbath
