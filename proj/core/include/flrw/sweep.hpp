#pragma once

// Two-axis parameter sweeps: one CSV row per grid point, computed by a
// bounded worker pool and written in grid order by a single collector.
// Existing complete rows are kept, so an interrupted sweep resumes.

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "flrw/config.hpp"

namespace flrw {

/// Column names of sweep.csv.
std::vector<std::string> sweep_header();

/// Row for one grid point; failures land in the trailing error column.
std::vector<std::string> evaluate_sweep_point(const RunConfig& base, double x1, double x2);

struct SweepOutcome {
  std::size_t points = 0;
  std::size_t computed = 0;
  std::size_t reused = 0;
  std::filesystem::path csv;
};

/// Writes out_dir/sweep.csv and out_dir/sweep.json. Throws ValidationError
/// when the config has no sweep section.
SweepOutcome run_sweep(const RunConfig& config, const std::filesystem::path& out_dir,
                       unsigned jobs = 1);

struct SweepReport {
  std::size_t points = 0;
  std::size_t admissible = 0;
  std::size_t errors = 0;
  std::string summary;  ///< contents of summary.txt
};

/// Reads out_dir/sweep.csv and writes summary.txt, boundary.csv (largest
/// admissible axis-2 value per axis-1 value) and blowup.csv.
SweepReport emit_report(const std::filesystem::path& out_dir);

}  // namespace flrw
