// Serialization: run configuration files, diagnostics/snapshot CSV series,
// and metadata JSON. All writes are atomic (temp file + rename).
#pragma once

#include "bpw/dynamics.hpp"
#include "bpw/harness.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace bpw {

/// Shortest round-trip decimal representation ("%.17g").
std::string format_g17(double v);

/// Writes `content` to `path` atomically: a sibling temp file is written,
/// flushed, and renamed over the target. Throws std::runtime_error on failure.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Full run configuration (scenario + overrides), parseable from a flat
/// key-value file: one `key = value` per line, `#` comments, no sections.
struct RunConfig {
  std::string scenario = "flat-gaussian";
  std::string system = "bpw";  // "bp" or "bpw"
  double L = 0.0;              // 0 means "use the scenario default"
  Eigen::Index M = 0;
  Params params;
  bool has_dt = false, has_t_end = false, has_eps = false, has_mu = false,
       has_beta = false, has_nu = false, has_h0 = false;
  std::string output_dir = "out";
  Eigen::Index stride = 1;
  std::vector<double> s_list = {1.0};
  std::uint64_t seed = 1;

  /// Parses a config file. Unknown keys or malformed values throw
  /// std::invalid_argument (mapped to exit code 2 by the CLI).
  static RunConfig parse_file(const std::filesystem::path& path);
  static RunConfig parse_text(const std::string& text);

  /// Applies the non-overridden defaults of a scenario.
  void apply_scenario_defaults(const Scenario& sc);

  /// Serializes back to the flat key-value format (provenance echo).
  std::string echo() const;
};

/// Writes diagnostics.csv, snapshots/t_<index>.csv, and meta.json under `dir`.
/// The diagnostics header is exactly
///   t,E_s...,entropy_H,orlicz,min_h,balance_residual,ineq_slack,sup_zeta,sup_u,sup_ux
/// with one E_s<value> column per configured s.
void write_series(const Trajectory& traj, const Grid& g, const Bathymetry& bath,
                  const Params& p, const RunConfig& cfg,
                  const std::filesystem::path& dir);

/// Reads a CSV written by write_series back into columns keyed by header name.
std::map<std::string, std::vector<double>> read_csv(const std::filesystem::path& path);

}  // namespace bpw
