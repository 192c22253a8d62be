#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "spinbath/compare.hpp"
#include "spinbath/config_sum.hpp"
#include "spinbath/io.hpp"
#include "spinbath/run_config.hpp"
#include "spinbath/threads.hpp"

namespace {

using spinbath::ConfigOverrides;
using spinbath::RunConfig;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw spinbath::validation_error("config", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string engines;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double quad_abs_tol = 0.0;
  bool quad_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required = true) {
  auto* c = cmd->add_option("--config", opts.config_path, "JSON run config");
  if (config_required) c->required();
  cmd->add_option("--out-dir", opts.out_dir, "output directory");
  cmd->add_option("--seed", opts.seed, "run seed (overrides config)")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  cmd->add_option("--engines", opts.engines,
                  "comma-separated engine list (overrides config)");
  cmd->add_option("--quad-abs-tol", opts.quad_abs_tol,
                  "quadrature absolute tolerance (overrides config)")
      ->each([&opts](const std::string&) { opts.quad_set = true; });
}

RunConfig load(const CommonOpts& opts) {
  ConfigOverrides ov;
  if (opts.seed_set) ov.seed = opts.seed;
  if (opts.quad_set) ov.quad_abs_tol = opts.quad_abs_tol;
  if (!opts.out_dir.empty()) ov.out_dir = opts.out_dir;
  if (!opts.engines.empty()) {
    std::vector<std::string> names;
    std::stringstream ss(opts.engines);
    std::string item;
    while (std::getline(ss, item, ',')) names.push_back(item);
    ov.engines = names;
  }
  return spinbath::parse_config(read_file(opts.config_path), ov);
}

json error_record(const std::exception& e, const std::string& kind) {
  return json{{"error", kind}, {"what", e.what()}};
}

int do_simulate(const CommonOpts& opts) {
  const RunConfig config = load(opts);
  const int threads = spinbath::resolve_threads();
  const auto trajectories = spinbath::run_engines(config, threads);
  spinbath::write_csv(trajectories, config.out_dir + "/trajectory.csv");
  json summary = spinbath::summary_base(config);
  spinbath::write_summary(summary, config.out_dir + "/summary.json");
  std::printf("wrote %s/trajectory.csv (%zu points, %zu engines)\n",
              config.out_dir.c_str(), config.times.size(),
              trajectories.size());
  return kExitOk;
}

int do_compare(const CommonOpts& opts) {
  const RunConfig config = load(opts);
  const int threads = spinbath::resolve_threads();
  const auto result = spinbath::run_compare(config, threads);
  spinbath::write_csv(result.trajectories, config.out_dir + "/trajectory.csv");
  json summary = spinbath::summary_base(config);
  summary["deviations"] = spinbath::deviations_json(result);
  if (result.printed_over_reconciled)
    summary["printed_over_reconciled"] = *result.printed_over_reconciled;
  summary["gates_passed"] = result.all_pass;
  spinbath::write_summary(summary, config.out_dir + "/summary.json");
  for (const auto& p : result.pairs)
    std::printf("%s vs %s: max sz dev %.3e, max rho10 dev %.3e%s\n",
                p.engine_a.c_str(), p.engine_b.c_str(), p.max_sz, p.max_rho10,
                p.gated ? (p.pass ? " [pass]" : " [FAIL]") : " [reported]");
  return result.all_pass ? kExitOk : kExitComputation;
}

int do_stationary(const CommonOpts& opts) {
  const RunConfig config = load(opts);
  const int threads = spinbath::resolve_threads();
  const auto result = spinbath::run_stationary(config, threads);
  json summary = spinbath::summary_base(config);
  summary["stationary"] = spinbath::stationary_json(result);
  spinbath::write_summary(summary, config.out_dir + "/stationary.json");
  std::printf(
      "stationary: time-average sz %.6f, oracle %.6f, paper %.6f "
      "(ratio %.4f), ground-state run %.6f\n",
      result.sz_average, result.report.oracle_value, result.report.paper_value,
      result.report.ratio, result.sz_average_ground);
  return kExitOk;
}

int do_identity_check(const std::string& out_dir, int points, double max,
                      double gate, const CommonOpts& opts) {
  spinbath::QuadratureSettings settings;
  if (opts.quad_set) settings.abs_tol = opts.quad_abs_tol;
  const auto res = spinbath::run_identity_check(points, max, gate, settings);
  json summary;
  summary["version"] = spinbath::version_string();
  summary["grid_points"] = res.grid_points;
  summary["grid_max"] = res.grid_max;
  summary["max_residual"] = res.max_residual;
  summary["gate"] = res.gate;
  summary["pass"] = res.pass;
  spinbath::write_summary(summary, out_dir + "/identity.json");
  std::printf("identity check: max residual %.3e on a %dx%dx%d grid [%s]\n",
              res.max_residual, points, points, points,
              res.pass ? "pass" : "FAIL");
  return res.pass ? kExitOk : kExitComputation;
}

int do_sweep(const CommonOpts& opts) {
  const RunConfig config = load(opts);
  const auto rows = spinbath::run_sweep(config);
  spinbath::write_text_file(config.out_dir + "/sweep.csv",
                            spinbath::sweep_to_csv(rows));
  json summary = spinbath::summary_base(config);
  summary["rows"] = rows.size();
  spinbath::write_summary(summary, config.out_dir + "/summary.json");
  std::printf("wrote %s/sweep.csv (%zu rows)\n", config.out_dir.c_str(),
              rows.size());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "spinbath: exact reduced dynamics of a two-level system in a conserved "
      "spin bath"};
  app.require_subcommand(1);

  CommonOpts sim_opts, cmp_opts, sta_opts, swp_opts, idn_opts;
  auto* sim = app.add_subcommand("simulate", "run engines, write trajectory CSV");
  add_common(sim, sim_opts);
  auto* cmp = app.add_subcommand("compare",
                                 "run >= 2 engines and gate their agreement");
  add_common(cmp, cmp_opts);
  auto* sta = app.add_subcommand(
      "stationary", "long-window averages vs closed-form stationary values");
  add_common(sta, sta_opts);
  auto* swp = app.add_subcommand("sweep",
                                 "stationary reports over a parameter grid");
  add_common(swp, swp_opts);

  auto* idn = app.add_subcommand("identity-check",
                                 "residual of the Bessel-integral identity");
  int idn_points = 5;
  double idn_max = 5.0, idn_gate = 1e-8;
  std::string idn_out = "out";
  idn->add_option("--points", idn_points, "grid points per axis");
  idn->add_option("--max", idn_max, "grid upper bound per axis");
  idn->add_option("--gate", idn_gate, "pass threshold on the residual");
  idn->add_option("--out-dir", idn_out, "output directory");
  idn->add_option("--quad-abs-tol", idn_opts.quad_abs_tol,
                  "quadrature absolute tolerance")
      ->each([&idn_opts](const std::string&) { idn_opts.quad_set = true; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return do_simulate(sim_opts);
    if (cmp->parsed()) return do_compare(cmp_opts);
    if (sta->parsed()) return do_stationary(sta_opts);
    if (swp->parsed()) return do_sweep(swp_opts);
    if (idn->parsed())
      return do_identity_check(idn_out, idn_points, idn_max, idn_gate,
                               idn_opts);
  } catch (const spinbath::validation_error& e) {
    std::cerr << error_record(e, "validation").dump() << "\n";
    return kExitUsage;
  } catch (const spinbath::numeric_error& e) {
    std::cerr << error_record(e, "numeric").dump() << "\n";
    return kExitComputation;
  } catch (const std::exception& e) {
    std::cerr << error_record(e, "internal").dump() << "\n";
    return kExitComputation;
  }
  return kExitUsage;
}
