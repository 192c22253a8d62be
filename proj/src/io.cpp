#include "spinbath/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "spinbath/errors.hpp"

#ifndef SPINBATH_VERSION
#define SPINBATH_VERSION "v0.1.0"
#endif

namespace spinbath {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string trajectories_to_csv(const std::vector<Trajectory>& trajectories) {
  if (trajectories.empty())
    throw validation_error("trajectories", "nothing to write");
  const std::size_t npts = trajectories.front().points.size();
  for (const Trajectory& tr : trajectories) {
    if (tr.points.size() != npts)
      throw validation_error("trajectories", "inconsistent grids");
    for (std::size_t i = 0; i < npts; ++i)
      if (tr.points[i].t != trajectories.front().points[i].t)
        throw validation_error("trajectories", "inconsistent grids");
  }

  std::string out = "t";
  for (const Trajectory& tr : trajectories) out += ",sz_" + tr.engine;
  for (const Trajectory& tr : trajectories) out += ",re_rho10_" + tr.engine;
  for (const Trajectory& tr : trajectories) out += ",im_rho10_" + tr.engine;
  out += "\n";

  for (std::size_t i = 0; i < npts; ++i) {
    out += fmt17(trajectories.front().points[i].t);
    for (const Trajectory& tr : trajectories)
      out += "," + fmt17(tr.points[i].sz);
    for (const Trajectory& tr : trajectories)
      out += "," + fmt17(tr.points[i].rho10.real());
    for (const Trajectory& tr : trajectories)
      out += "," + fmt17(tr.points[i].rho10.imag());
    out += "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw numeric_error("cannot open '" + path + "' for writing");
  f << content;
  if (!f.good()) throw numeric_error("write to '" + path + "' failed");
}

void write_csv(const std::vector<Trajectory>& trajectories,
               const std::string& path) {
  write_text_file(path, trajectories_to_csv(trajectories));
}

void write_summary(const nlohmann::ordered_json& summary,
                   const std::string& path) {
  write_text_file(path, summary.dump(2) + "\n");
}

std::string version_string() { return SPINBATH_VERSION; }

std::string hex_fingerprint(std::uint64_t fp) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fp));
  return buf;
}

}  // namespace spinbath
