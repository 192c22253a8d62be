#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spinbath/trajectory.hpp"

namespace spinbath {

// CSV with columns, in engine order:
//   t, sz_<engine>..., re_rho10_<engine>..., im_rho10_<engine>...
// Values printed with 17 significant digits; all trajectories must share
// the same time grid.
std::string trajectories_to_csv(const std::vector<Trajectory>& trajectories);
void write_csv(const std::vector<Trajectory>& trajectories,
               const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
void write_summary(const nlohmann::ordered_json& summary,
                   const std::string& path);

std::string version_string();
std::string hex_fingerprint(std::uint64_t fp);

}  // namespace spinbath
