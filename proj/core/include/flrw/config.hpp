#pragma once

// Run configuration shared by all subcommands of the command-line tool.
// JSON object; unknown keys are rejected and defaults are filled in.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "flrw/cosmology.hpp"

namespace flrw {

struct OdeSettings {
  double t_end = 10.0;
  double rtol = 1e-10;
  friend bool operator==(const OdeSettings&, const OdeSettings&) = default;
};

struct PdeSettings {
  double dr = 1.0 / 256.0;
  double t_end = 1.0;
  double r_max = 0.0;  ///< 0 selects r(t_end) + 16 dr
  double output_interval = 0.01;
  double support_threshold = 1e-4;
  friend bool operator==(const PdeSettings&, const PdeSettings&) = default;
};

struct ScalingSettings {
  std::vector<double> R;  ///< empty selects the default grid
  friend bool operator==(const ScalingSettings&, const ScalingSettings&) = default;
};

struct IdentitySettings {
  double R = 0.0;  ///< 0 selects 3 r0
  friend bool operator==(const IdentitySettings&, const IdentitySettings&) = default;
};

struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
  /// Linearly spaced values; count 1 yields min.
  std::vector<double> values() const;
  friend bool operator==(const SweepAxis&, const SweepAxis&) = default;
};

struct SweepSettings {
  SweepAxis axis1;
  SweepAxis axis2;
  bool run_ode = false;
  bool run_pde = false;
  friend bool operator==(const SweepSettings&, const SweepSettings&) = default;
};

struct RunConfig {
  CosmologyParams params;
  double lambda = 1.0;
  double p = 2.0;
  double theta = 0.5;
  double r0 = 1.0;
  double w0 = 1.0;
  std::optional<double> w1;  ///< unset: c N w0
  std::optional<double> N;   ///< only used when no closed-form case applies
  OdeSettings ode;
  PdeSettings pde;
  ScalingSettings scaling;
  IdentitySettings identity;
  std::optional<SweepSettings> sweep;

  // Derived at parse time, not serialized.
  std::string case_label;
  double p_upper = 0.0;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates. Throws ValidationError; JSON syntax errors carry
/// the line and column.
RunConfig parse_config_text(std::string_view text);
RunConfig parse_config(const std::filesystem::path& path);

/// Checks ranges and fills the derived fields.
void finalize_config(RunConfig& config);

nlohmann::json to_json(const RunConfig& config);

/// Names accepted as sweep axes.
const std::vector<std::string>& sweep_parameter_names();

/// Sets a scalar parameter by name (n is rounded to the nearest integer).
void set_parameter(RunConfig& config, std::string_view name, double value);

/// N used by the config: closed-form case, then the configured N, then the
/// minimal admissible value.
double effective_N(const RunConfig& config);
/// Configured w1 or c N w0.
double effective_w1(const RunConfig& config);

}  // namespace flrw
