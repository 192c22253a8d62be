#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinbath/model.hpp"
#include "spinbath/numerics.hpp"

namespace spinbath {

enum class Engine { Oracle, ConfigSum, Integral, Gaussian };

std::string engine_name(Engine e);
Engine engine_from_name(const std::string& name);

struct StationaryParams {
  double t_start = 0.0;
  double t_end = 0.0;
  int samples = 4001;
};

struct SweepSpec {
  std::vector<double> delta;
  std::vector<double> c_total;
  std::vector<double> beta;
  double omega = 1.0;
};

// A fully validated and normalized run description. `canonical` is the
// normalized JSON document (defaults made explicit); parsing it again
// reproduces this RunConfig exactly.
struct RunConfig {
  ModelSpec model = ModelSpec::build(0.0, 0.0, {});
  std::optional<SamplerSpec> sampler;
  std::vector<Engine> engines;
  std::vector<double> times;
  QuadratureSettings quad;
  std::uint64_t seed = 0;
  std::optional<StationaryParams> stationary;
  std::optional<SweepSpec> sweep;
  std::string out_dir = "out";
  nlohmann::ordered_json canonical;
};

// Overrides applied on top of the config document before validation.
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<std::string>> engines;
  std::optional<double> quad_abs_tol;
  std::optional<std::string> out_dir;
};

RunConfig parse_config(const std::string& text,
                       const ConfigOverrides& overrides = {});

}  // namespace spinbath
