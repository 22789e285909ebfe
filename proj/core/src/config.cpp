#include "flrw/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "flrw/errors.hpp"
#include "flrw/thresholds.hpp"

namespace flrw {

namespace {

using nlohmann::json;

const std::set<std::string> kTopKeys = {"n",     "c",  "m_sq", "H",   "sigma", "a0",
                                        "lambda", "p", "theta", "r0", "w0",    "w1",
                                        "N",     "ode", "pde", "scaling", "identity", "sweep"};

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ValidationError("unknown key '" + where + key + "'");
    }
  }
}

double read_number(const json& obj, const std::string& key, const std::string& where, double fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw ValidationError("field '" + where + key + "' must be a number");
  return it->get<double>();
}

double require_number(const json& obj, const std::string& key) {
  if (!obj.contains(key)) throw ValidationError("missing required field '" + key + "'");
  return read_number(obj, key, "", 0.0);
}

std::optional<double> read_optional(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw ValidationError("field '" + key + "' must be a number or null");
  return it->get<double>();
}

bool read_bool(const json& obj, const std::string& key, const std::string& where, bool fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) throw ValidationError("field '" + where + key + "' must be true or false");
  return it->get<bool>();
}

const json& section(const json& root, const std::string& key, const json& empty) {
  const auto it = root.find(key);
  if (it == root.end()) return empty;
  if (!it->is_object()) throw ValidationError("field '" + key + "' must be an object");
  return *it;
}

SweepAxis read_axis(const json& obj, const std::string& key) {
  const std::string where = "sweep." + key;
  const auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError("missing required field '" + where + "'");
  if (!it->is_object()) throw ValidationError("field '" + where + "' must be an object");
  reject_unknown(*it, {"name", "min", "max", "count"}, where + ".");
  SweepAxis axis;
  if (!it->contains("name") || !(*it)["name"].is_string()) {
    throw ValidationError("field '" + where + ".name' must be a string");
  }
  axis.name = (*it)["name"].get<std::string>();
  axis.min = read_number(*it, "min", where + ".", 0.0);
  axis.max = read_number(*it, "max", where + ".", 0.0);
  const auto count = it->find("count");
  if (count == it->end() || !count->is_number_integer() || count->get<long long>() < 0) {
    throw ValidationError("field '" + where + ".count' must be a nonnegative integer");
  }
  axis.count = count->get<std::size_t>();
  return axis;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

bool finite_all(std::initializer_list<double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

std::vector<double> SweepAxis::values() const {
  std::vector<double> out;
  if (count == 0) return out;
  if (count == 1) return {min};
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back(i + 1 == count ? max : min + (max - min) * s);
  }
  return out;
}

const std::vector<std::string>& sweep_parameter_names() {
  static const std::vector<std::string> names = {"n",     "c",  "m_sq", "H",  "sigma", "a0", "lambda",
                                                 "p",     "theta", "r0", "w0", "w1",    "N"};
  return names;
}

void set_parameter(RunConfig& cfg, std::string_view name, double value) {
  if (name == "n") {
    cfg.params.n = static_cast<int>(std::lround(value));
  } else if (name == "c") {
    cfg.params.c = value;
  } else if (name == "m_sq") {
    cfg.params.m_sq = value;
  } else if (name == "H") {
    cfg.params.H = value;
  } else if (name == "sigma") {
    cfg.params.sigma = value;
  } else if (name == "a0") {
    cfg.params.a0 = value;
  } else if (name == "lambda") {
    cfg.lambda = value;
  } else if (name == "p") {
    cfg.p = value;
  } else if (name == "theta") {
    cfg.theta = value;
  } else if (name == "r0") {
    cfg.r0 = value;
  } else if (name == "w0") {
    cfg.w0 = value;
  } else if (name == "w1") {
    cfg.w1 = value;
  } else if (name == "N") {
    cfg.N = value;
  } else {
    throw ValidationError("unknown parameter '" + std::string(name) + "'");
  }
}

void finalize_config(RunConfig& cfg) {
  const CosmologyParams& q = cfg.params;
  require(q.n >= 1, "field 'n' must be a positive integer");
  require(finite_all({q.c, q.m_sq, q.H, q.sigma, q.a0, cfg.lambda, cfg.p, cfg.theta, cfg.r0, cfg.w0}),
          "all numeric fields must be finite");
  require(q.c > 0.0, "field 'c' must be positive");
  require(q.a0 > 0.0, "field 'a0' must be positive");
  require(cfg.lambda > 0.0, "field 'lambda' must be positive");
  require(cfg.p > 1.0, "field 'p' must exceed 1");
  require(cfg.theta > 0.0 && cfg.theta < 1.0, "theta ∉ (0,1)");
  require(cfg.r0 > 0.0, "field 'r0' must be positive");
  if (cfg.w1) require(std::isfinite(*cfg.w1), "field 'w1' must be finite");
  if (cfg.N) require(std::isfinite(*cfg.N) && *cfg.N >= 0.0, "field 'N' must be nonnegative");
  require(cfg.ode.t_end > 0.0 && std::isfinite(cfg.ode.t_end), "field 'ode.t_end' must be positive");
  require(cfg.ode.rtol > 0.0 && cfg.ode.rtol < 1.0, "field 'ode.rtol' must lie in (0,1)");
  require(cfg.pde.dr > 0.0, "field 'pde.dr' must be positive");
  require(cfg.pde.t_end > 0.0 && std::isfinite(cfg.pde.t_end), "field 'pde.t_end' must be positive");
  require(cfg.pde.r_max >= 0.0, "field 'pde.r_max' must be nonnegative");
  require(cfg.pde.output_interval >= 0.0, "field 'pde.output_interval' must be nonnegative");
  require(cfg.pde.support_threshold > 0.0 && cfg.pde.support_threshold < 1.0,
          "field 'pde.support_threshold' must lie in (0,1)");
  for (const double R : cfg.scaling.R) require(R > 0.0, "field 'scaling.R' entries must be positive");
  require(cfg.identity.R >= 0.0, "field 'identity.R' must be nonnegative");
  if (cfg.sweep) {
    const auto& names = sweep_parameter_names();
    for (const SweepAxis* axis : {&cfg.sweep->axis1, &cfg.sweep->axis2}) {
      require(std::find(names.begin(), names.end(), axis->name) != names.end(),
              "sweep axis '" + axis->name + "' is not a sweepable parameter");
      require(finite_all({axis->min, axis->max}), "sweep axis bounds must be finite");
      require(axis->count != 1 || axis->min == axis->max,
              "sweep axis '" + axis->name + "' with count 1 needs min == max");
    }
    require(cfg.sweep->axis1.name != cfg.sweep->axis2.name, "sweep axes must name distinct parameters");
  }

  try {
    const PRange range = admissible_p_range(cfg.params);
    cfg.case_label = std::string(to_string(range.blowup_case));
    cfg.p_upper = range.upper;
  } catch (const CaseMismatchError&) {
    cfg.case_label = std::string(to_string(BlowupCase::Theorem));
    cfg.p_upper = std::numeric_limits<double>::infinity();
  }
}

RunConfig parse_config_text(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ValidationError("parse error at line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ": " + e.what());
  }
  if (!root.is_object()) throw ValidationError("config must be a JSON object");
  reject_unknown(root, kTopKeys, "");

  RunConfig cfg;
  const auto n = root.find("n");
  if (n == root.end()) throw ValidationError("missing required field 'n'");
  if (!n->is_number_integer()) throw ValidationError("field 'n' must be a positive integer");
  cfg.params.n = n->get<int>();
  cfg.params.H = require_number(root, "H");
  cfg.params.sigma = require_number(root, "sigma");
  cfg.p = require_number(root, "p");
  cfg.params.c = read_number(root, "c", "", 1.0);
  cfg.params.m_sq = read_number(root, "m_sq", "", 0.0);
  cfg.params.a0 = read_number(root, "a0", "", 1.0);
  cfg.lambda = read_number(root, "lambda", "", 1.0);
  cfg.theta = read_number(root, "theta", "", 0.5);
  cfg.r0 = read_number(root, "r0", "", 1.0);
  cfg.w0 = read_number(root, "w0", "", 1.0);
  cfg.w1 = read_optional(root, "w1");
  cfg.N = read_optional(root, "N");

  const json empty = json::object();
  const json& ode = section(root, "ode", empty);
  reject_unknown(ode, {"t_end", "rtol"}, "ode.");
  cfg.ode.t_end = read_number(ode, "t_end", "ode.", cfg.ode.t_end);
  cfg.ode.rtol = read_number(ode, "rtol", "ode.", cfg.ode.rtol);

  const json& pde = section(root, "pde", empty);
  reject_unknown(pde, {"dr", "t_end", "r_max", "output_interval", "support_threshold"}, "pde.");
  cfg.pde.dr = read_number(pde, "dr", "pde.", cfg.pde.dr);
  cfg.pde.t_end = read_number(pde, "t_end", "pde.", cfg.pde.t_end);
  cfg.pde.r_max = read_number(pde, "r_max", "pde.", cfg.pde.r_max);
  cfg.pde.output_interval = read_number(pde, "output_interval", "pde.", cfg.pde.output_interval);
  cfg.pde.support_threshold = read_number(pde, "support_threshold", "pde.", cfg.pde.support_threshold);

  const json& scaling = section(root, "scaling", empty);
  reject_unknown(scaling, {"R"}, "scaling.");
  if (const auto it = scaling.find("R"); it != scaling.end()) {
    if (!it->is_array()) throw ValidationError("field 'scaling.R' must be an array of numbers");
    for (const json& v : *it) {
      if (!v.is_number()) throw ValidationError("field 'scaling.R' must be an array of numbers");
      cfg.scaling.R.push_back(v.get<double>());
    }
  }

  const json& identity = section(root, "identity", empty);
  reject_unknown(identity, {"R"}, "identity.");
  cfg.identity.R = read_number(identity, "R", "identity.", cfg.identity.R);

  if (root.contains("sweep")) {
    const json& sweep = section(root, "sweep", empty);
    reject_unknown(sweep, {"axis1", "axis2", "run_ode", "run_pde"}, "sweep.");
    SweepSettings s;
    s.axis1 = read_axis(sweep, "axis1");
    s.axis2 = read_axis(sweep, "axis2");
    s.run_ode = read_bool(sweep, "run_ode", "sweep.", false);
    s.run_pde = read_bool(sweep, "run_pde", "sweep.", false);
    cfg.sweep = s;
  }

  finalize_config(cfg);
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

nlohmann::json to_json(const RunConfig& cfg) {
  json out = {{"n", cfg.params.n},     {"c", cfg.params.c},         {"m_sq", cfg.params.m_sq},
              {"H", cfg.params.H},     {"sigma", cfg.params.sigma}, {"a0", cfg.params.a0},
              {"lambda", cfg.lambda},  {"p", cfg.p},                {"theta", cfg.theta},
              {"r0", cfg.r0},          {"w0", cfg.w0}};
  out["w1"] = cfg.w1 ? json(*cfg.w1) : json(nullptr);
  out["N"] = cfg.N ? json(*cfg.N) : json(nullptr);
  out["ode"] = {{"t_end", cfg.ode.t_end}, {"rtol", cfg.ode.rtol}};
  out["pde"] = {{"dr", cfg.pde.dr},
                {"t_end", cfg.pde.t_end},
                {"r_max", cfg.pde.r_max},
                {"output_interval", cfg.pde.output_interval},
                {"support_threshold", cfg.pde.support_threshold}};
  out["scaling"] = {{"R", cfg.scaling.R}};
  out["identity"] = {{"R", cfg.identity.R}};
  if (cfg.sweep) {
    const auto axis = [](const SweepAxis& a) {
      return json{{"name", a.name}, {"min", a.min}, {"max", a.max}, {"count", a.count}};
    };
    out["sweep"] = {{"axis1", axis(cfg.sweep->axis1)},
                    {"axis2", axis(cfg.sweep->axis2)},
                    {"run_ode", cfg.sweep->run_ode},
                    {"run_pde", cfg.sweep->run_pde}};
  }
  return out;
}

double effective_N(const RunConfig& cfg) {
  try {
    return damping_rate_N(cfg.params, cfg.N).N;
  } catch (const CaseMismatchError&) {
    return minimal_damping_rate(cfg.params);
  }
}

double effective_w1(const RunConfig& cfg) {
  if (cfg.w1) return *cfg.w1;
  return cfg.params.c * effective_N(cfg) * cfg.w0;
}

}  // namespace flrw
