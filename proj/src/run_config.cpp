#include "spinbath/run_config.hpp"

#include <cmath>
#include <set>

#include "spinbath/hilbert_oracle.hpp"
#include "spinbath/trajectory.hpp"

namespace spinbath {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw validation_error(path, "config error at '" + path + "': " + msg);
}

void reject_unknown(const json& obj, const std::string& path,
                    const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      fail(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
  }
}

double need_number(const json& obj, const std::string& path,
                   const std::string& key) {
  if (!obj.contains(key)) fail(path + "." + key, "missing required field");
  if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
  return obj[key].get<double>();
}

double opt_number(const json& obj, const std::string& path,
                  const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
  return obj[key].get<double>();
}

long need_integer(const json& obj, const std::string& path,
                  const std::string& key, long fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) fail(path + "." + key, "missing required field");
    return fallback;
  }
  if (!obj[key].is_number_integer() && !obj[key].is_number_unsigned())
    fail(path + "." + key, "expected an integer");
  return obj[key].get<long>();
}

std::uint64_t need_u64(const json& obj, const std::string& path,
                       const std::string& key) {
  if (!obj[key].is_number_unsigned() && !obj[key].is_number_integer())
    fail(path + "." + key, "expected a non-negative integer");
  const auto v = obj[key].get<std::int64_t>();
  if (v < 0) fail(path + "." + key, "expected a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::Oracle: return "oracle";
    case Engine::ConfigSum: return "configsum";
    case Engine::Integral: return "integral";
    default: return "gaussian";
  }
}

Engine engine_from_name(const std::string& name) {
  if (name == "oracle") return Engine::Oracle;
  if (name == "configsum") return Engine::ConfigSum;
  if (name == "integral") return Engine::Integral;
  if (name == "gaussian") return Engine::Gaussian;
  throw validation_error("engines",
                         "unknown engine '" + name +
                             "' (expected oracle|configsum|integral|gaussian)");
}

RunConfig parse_config(const std::string& text,
                       const ConfigOverrides& overrides) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw validation_error("json", std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("", "top-level document must be an object");

  // apply overrides before validation so they are part of the canonical doc
  if (overrides.seed) doc["seed"] = *overrides.seed;
  if (overrides.engines) doc["engines"] = *overrides.engines;
  if (overrides.quad_abs_tol) {
    if (!doc.contains("quadrature")) doc["quadrature"] = json::object();
    doc["quadrature"]["abs_tol"] = *overrides.quad_abs_tol;
  }
  if (overrides.out_dir) doc["out_dir"] = *overrides.out_dir;

  reject_unknown(doc, "", {"model", "grid", "engines", "quadrature", "seed",
                           "stationary", "sweep", "out_dir"});

  RunConfig rc;

  // seed
  if (doc.contains("seed")) rc.seed = need_u64(doc, "", "seed");

  // model
  if (!doc.contains("model")) fail("model", "missing required field");
  const json& jm = doc["model"];
  if (!jm.is_object()) fail("model", "expected an object");
  reject_unknown(jm, "model",
                 {"delta", "beta", "zero_temperature", "modes", "sampler",
                  "initial"});
  const double delta = need_number(jm, "model", "delta");
  const double beta = opt_number(jm, "model", "beta", 0.0);
  bool zero_temp = false;
  if (jm.contains("zero_temperature")) {
    if (!jm["zero_temperature"].is_boolean())
      fail("model.zero_temperature", "expected a boolean");
    zero_temp = jm["zero_temperature"].get<bool>();
  }

  SystemState init;
  if (jm.contains("initial")) {
    const json& ji = jm["initial"];
    if (!ji.is_object()) fail("model.initial", "expected an object");
    reject_unknown(ji, "model.initial", {"theta", "phi"});
    init.theta = opt_number(ji, "model.initial", "theta", 0.0);
    init.phi = opt_number(ji, "model.initial", "phi", 0.0);
  }

  std::vector<Mode> modes;
  if (jm.contains("modes") && jm.contains("sampler"))
    fail("model", "give either 'modes' or 'sampler', not both");
  if (jm.contains("sampler")) {
    const json& js = jm["sampler"];
    if (!js.is_object()) fail("model.sampler", "expected an object");
    reject_unknown(js, "model.sampler",
                   {"count", "omega", "c_total", "distribution", "seed"});
    SamplerSpec sp;
    const long cnt = need_integer(js, "model.sampler", "count", 0, true);
    if (cnt < 0) fail("model.sampler.count", "expected a non-negative integer");
    sp.count = static_cast<std::size_t>(cnt);
    sp.omega = opt_number(js, "model.sampler", "omega", 1.0);
    sp.c_total = need_number(js, "model.sampler", "c_total");
    if (sp.c_total < 0) fail("model.sampler.c_total", "must be >= 0");
    sp.distribution = CouplingDistribution::Gaussian;
    if (js.contains("distribution")) {
      if (!js["distribution"].is_string())
        fail("model.sampler.distribution", "expected a string");
      const std::string d = js["distribution"].get<std::string>();
      if (d == "gaussian")
        sp.distribution = CouplingDistribution::Gaussian;
      else if (d == "rademacher")
        sp.distribution = CouplingDistribution::Rademacher;
      else
        fail("model.sampler.distribution", "expected gaussian|rademacher");
    }
    sp.seed =
        js.contains("seed") ? need_u64(js, "model.sampler", "seed") : rc.seed;
    rc.sampler = sp;
    modes = sample_couplings(sp);
  } else if (jm.contains("modes")) {
    const json& jmodes = jm["modes"];
    if (!jmodes.is_array()) fail("model.modes", "expected an array");
    for (std::size_t i = 0; i < jmodes.size(); ++i) {
      const json& pair = jmodes[i];
      const std::string p = "model.modes[" + std::to_string(i) + "]";
      if (!pair.is_array() || pair.size() != 2) fail(p, "expected [omega, g]");
      if (!pair[0].is_number() || !pair[1].is_number())
        fail(p, "expected numbers");
      modes.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
  } else {
    fail("model", "either 'modes' or 'sampler' is required");
  }

  try {
    rc.model = ModelSpec::build(delta, beta, modes, init, zero_temp);
  } catch (const validation_error& e) {
    fail(std::string("model.") + e.field(), e.what());
  }

  // grid
  std::optional<std::pair<double, int>> lin;
  if (doc.contains("grid")) {
    const json& jg = doc["grid"];
    if (!jg.is_object()) fail("grid", "expected an object");
    reject_unknown(jg, "grid", {"t_max", "steps", "times"});
    if (jg.contains("times")) {
      if (jg.contains("t_max") || jg.contains("steps"))
        fail("grid", "give either 'times' or 't_max'/'steps', not both");
      if (!jg["times"].is_array()) fail("grid.times", "expected an array");
      for (const auto& v : jg["times"]) {
        if (!v.is_number()) fail("grid.times", "expected numbers");
        rc.times.push_back(v.get<double>());
      }
    } else {
      lin = {opt_number(jg, "grid", "t_max", 10.0),
             static_cast<int>(need_integer(jg, "grid", "steps", 201))};
    }
  } else {
    lin = {10.0, 201};
  }
  if (lin) {
    try {
      rc.times = linspace_grid(lin->first, lin->second);
    } catch (const validation_error& e) {
      fail(e.field(), e.what());
    }
  }
  try {
    validate_grid(rc.times);
  } catch (const validation_error& e) {
    fail("grid.times", e.what());
  }

  // engines
  if (doc.contains("engines")) {
    const json& je = doc["engines"];
    if (!je.is_array() || je.empty())
      fail("engines", "expected a non-empty array of engine names");
    for (const auto& v : je) {
      if (!v.is_string()) fail("engines", "expected strings");
      try {
        rc.engines.push_back(engine_from_name(v.get<std::string>()));
      } catch (const validation_error& e) {
        fail("engines", e.what());
      }
    }
  } else {
    rc.engines = {Engine::ConfigSum};
  }

  // quadrature
  if (doc.contains("quadrature")) {
    const json& jq = doc["quadrature"];
    if (!jq.is_object()) fail("quadrature", "expected an object");
    reject_unknown(jq, "quadrature", {"abs_tol", "rel_tol", "max_subdivisions"});
    rc.quad.abs_tol = opt_number(jq, "quadrature", "abs_tol", rc.quad.abs_tol);
    rc.quad.rel_tol = opt_number(jq, "quadrature", "rel_tol", rc.quad.rel_tol);
    rc.quad.max_subdivisions = static_cast<int>(opt_number(
        jq, "quadrature", "max_subdivisions", rc.quad.max_subdivisions));
    if (!(rc.quad.abs_tol > 0)) fail("quadrature.abs_tol", "must be > 0");
    if (!(rc.quad.rel_tol > 0)) fail("quadrature.rel_tol", "must be > 0");
    if (rc.quad.max_subdivisions < 1)
      fail("quadrature.max_subdivisions", "must be >= 1");
  }

  // stationary window
  if (doc.contains("stationary")) {
    const json& js = doc["stationary"];
    if (!js.is_object()) fail("stationary", "expected an object");
    reject_unknown(js, "stationary", {"t_start", "t_end", "samples"});
    StationaryParams sp;
    sp.t_start = need_number(js, "stationary", "t_start");
    sp.t_end = need_number(js, "stationary", "t_end");
    sp.samples = static_cast<int>(opt_number(js, "stationary", "samples", 4001));
    if (!(sp.t_end > sp.t_start) || !(sp.t_start > 0))
      fail("stationary", "need t_end > t_start > 0");
    if (sp.samples < 100) fail("stationary.samples", "need samples >= 100");
    rc.stationary = sp;
  }

  // sweep
  if (doc.contains("sweep")) {
    const json& js = doc["sweep"];
    if (!js.is_object()) fail("sweep", "expected an object");
    reject_unknown(js, "sweep", {"delta", "c_total", "beta", "omega"});
    SweepSpec sw;
    auto list = [&](const char* key, std::vector<double>& out) {
      if (!js.contains(key))
        fail(std::string("sweep.") + key, "missing required field");
      if (!js[key].is_array() || js[key].empty())
        fail(std::string("sweep.") + key, "expected a non-empty array");
      for (const auto& v : js[key]) {
        if (!v.is_number()) fail(std::string("sweep.") + key, "expected numbers");
        out.push_back(v.get<double>());
      }
    };
    list("delta", sw.delta);
    list("c_total", sw.c_total);
    list("beta", sw.beta);
    sw.omega = opt_number(js, "sweep", "omega", 1.0);
    for (double c : sw.c_total)
      if (!(c > 0)) fail("sweep.c_total", "entries must be > 0");
    rc.sweep = sw;
  }

  if (doc.contains("out_dir")) {
    if (!doc["out_dir"].is_string()) fail("out_dir", "expected a string");
    rc.out_dir = doc["out_dir"].get<std::string>();
  }

  // cross-field checks
  const std::size_t n = rc.model.size();
  for (Engine e : rc.engines) {
    if (e == Engine::Oracle && n > static_cast<std::size_t>(kOracleCap))
      fail("engines",
           "oracle engine is capped at N <= " + std::to_string(kOracleCap) +
               " bath spins (got N = " + std::to_string(n) + ")");
    if ((e == Engine::Integral || e == Engine::Gaussian)) {
      if (!is_excited_state(rc.model.initial_system()))
        fail("engines", engine_name(e) +
                            " engine evaluates the closed-form expressions, "
                            "which assume the initial excited state |1>");
      if (rc.times.front() < 0.0)
        fail("grid.times",
             engine_name(e) + " engine requires t >= 0 on the grid");
    }
    if (e == Engine::Gaussian && !rc.sampler) {
      // need a common splitting to form the Gaussian limit
      for (std::size_t k = 1; k < n; ++k)
        if (rc.model.modes()[k].omega != rc.model.modes()[0].omega)
          fail("engines",
               "gaussian engine needs a common omega (use a sampler model or "
               "equal-omega modes)");
      if (n == 0) fail("engines", "gaussian engine needs at least one mode");
    }
  }

  // canonical normalized document
  json canon;
  json cm;
  cm["delta"] = delta;
  if (zero_temp)
    cm["zero_temperature"] = true;
  else
    cm["beta"] = beta;
  if (rc.sampler) {
    json cs;
    cs["count"] = rc.sampler->count;
    cs["omega"] = rc.sampler->omega;
    cs["c_total"] = rc.sampler->c_total;
    cs["distribution"] = distribution_name(rc.sampler->distribution);
    cs["seed"] = rc.sampler->seed;
    cm["sampler"] = cs;
  } else {
    json jmodes = json::array();
    for (const Mode& m : rc.model.modes())
      jmodes.push_back(json::array({m.omega, m.g}));
    cm["modes"] = jmodes;
  }
  if (!is_excited_state(init) || init.phi != 0.0)
    cm["initial"] = json{{"theta", init.theta}, {"phi", init.phi}};
  canon["model"] = cm;
  canon["grid"] = json{{"times", rc.times}};
  json ce = json::array();
  for (Engine e : rc.engines) ce.push_back(engine_name(e));
  canon["engines"] = ce;
  canon["quadrature"] = json{{"abs_tol", rc.quad.abs_tol},
                             {"rel_tol", rc.quad.rel_tol},
                             {"max_subdivisions", rc.quad.max_subdivisions}};
  canon["seed"] = rc.seed;
  if (rc.stationary)
    canon["stationary"] = json{{"t_start", rc.stationary->t_start},
                               {"t_end", rc.stationary->t_end},
                               {"samples", rc.stationary->samples}};
  if (rc.sweep)
    canon["sweep"] = json{{"delta", rc.sweep->delta},
                          {"c_total", rc.sweep->c_total},
                          {"beta", rc.sweep->beta},
                          {"omega", rc.sweep->omega}};
  canon["out_dir"] = rc.out_dir;
  rc.canonical = canon;
  return rc;
}

}  // namespace spinbath
