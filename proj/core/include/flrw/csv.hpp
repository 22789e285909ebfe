#pragma once

// Fixed CSV dialect: comma separator, '.' decimal, LF newlines, header row.
// Doubles use the shortest round-trip representation.

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "flrw/comparison_ode.hpp"
#include "flrw/field_solver.hpp"
#include "flrw/scaling.hpp"

namespace flrw {

/// Shortest representation that parses back to the same double; "inf",
/// "-inf" and "nan" for non-finite values.
std::string format_double(double x);

/// Parses what format_double writes.
double parse_double(std::string_view text);

/// Quotes a field when it contains a separator, quote or newline.
std::string csv_field(std::string_view text);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// Splits one CSV line, honouring quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
void write_diagnostics_csv(std::ostream& out, const Diagnostics& diagnostics);
void write_snapshot_csv(std::ostream& out, const FieldState& state);
void write_scaling_csv(std::ostream& out, const ScalingFit& fit);

}  // namespace flrw
