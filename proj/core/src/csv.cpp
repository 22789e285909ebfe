#include "flrw/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace flrw {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) throw std::runtime_error("cannot format double");
  return std::string(buf.data(), end);
}

double parse_double(std::string_view text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (const char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << '\n';
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  return fields;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  write_csv_row(out, {"t", "w", "wdot"});
  for (const OdeSample& s : trajectory.samples) {
    write_csv_row(out, {format_double(s.t), format_double(s.w), format_double(s.wdot)});
  }
}

void write_diagnostics_csv(std::ostream& out, const Diagnostics& diagnostics) {
  write_csv_row(out, {"t", "mean", "sup", "energy", "support_radius", "cone_radius", "mass_integral"});
  for (const DiagnosticSample& d : diagnostics.samples) {
    write_csv_row(out, {format_double(d.t), format_double(d.mean), format_double(d.sup),
                        format_double(d.energy), format_double(d.support_radius),
                        format_double(d.cone_radius), format_double(d.mass_integral)});
  }
}

void write_snapshot_csv(std::ostream& out, const FieldState& state) {
  write_csv_row(out, {"r", "u", "v"});
  for (std::size_t j = 0; j < state.size(); ++j) {
    write_csv_row(out, {format_double(state.r[j]), format_double(state.u[j]), format_double(state.v[j])});
  }
}

void write_scaling_csv(std::ostream& out, const ScalingFit& fit) {
  write_csv_row(out, {"R", "value", "log_value"});
  for (std::size_t i = 0; i < fit.R.size(); ++i) {
    write_csv_row(out, {format_double(fit.R[i]), format_double(std::exp(fit.log_values[i])),
                        format_double(fit.log_values[i])});
  }
}

}  // namespace flrw
