#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinbath/integral_engine.hpp"
#include "spinbath/run_config.hpp"
#include "spinbath/trajectory.hpp"

namespace spinbath {

// Runs the requested engines on the config's grid.
std::vector<Trajectory> run_engines(const RunConfig& config, int threads = 0);

struct PairDeviation {
  std::string engine_a;
  std::string engine_b;
  double max_sz = 0.0;
  double max_rho10 = 0.0;
  double max_state_entry = 0.0;
  double tolerance = 0.0;  // 0 when not gated
  bool gated = false;
  bool pass = true;
};

struct ComparisonResult {
  std::vector<Trajectory> trajectories;
  std::vector<PairDeviation> pairs;
  // mean Re(printed)/Re(reconciled) coherence where the denominator is
  // resolvable; reported for adjudication, never gated
  std::optional<double> printed_over_reconciled;
  bool all_pass = true;
};

// Gates: oracle<->configsum at 1e-10 (entrywise), configsum<->integral and
// oracle<->integral at 1e-6; any pair involving the gaussian engine is
// reported but not gated.
ComparisonResult run_compare(const RunConfig& config, int threads = 0);

struct StationaryRunResult {
  StationaryReport report;
  double t_start = 0.0, t_end = 0.0;
  int samples = 0;
  double sz_average = 0.0;
  std::complex<double> rho10_average;
  double deviation_from_oracle = 0.0;  // |sz_average - oracle|/oracle
  double sz_average_ground = 0.0;      // same window, initial |0>
  double canonical_sz = 0.0;           // -tanh(beta delta), the Gibbs value
};

// Long-window averages plus the closed-form stationary report; runs both
// initial |1> and initial |0> to exhibit the initial-state dependence.
StationaryRunResult run_stationary(const RunConfig& config, int threads = 0);

struct IdentityCheckResult {
  int grid_points = 0;
  double grid_max = 0.0;
  double max_residual = 0.0;
  double gate = 1e-8;
  bool pass = true;
};

IdentityCheckResult run_identity_check(int grid_points, double grid_max,
                                       double gate,
                                       const QuadratureSettings& settings = {});

struct SweepRow {
  double delta = 0.0, c_total = 0.0, beta = 0.0, omega = 0.0;
  StationaryReport report;
};

std::vector<SweepRow> run_sweep(const RunConfig& config);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

// Summary-building helpers shared by the CLI and the acceptance suite.
nlohmann::ordered_json summary_base(const RunConfig& config);
nlohmann::ordered_json deviations_json(const ComparisonResult& result);
nlohmann::ordered_json stationary_json(const StationaryRunResult& result);

}  // namespace spinbath
