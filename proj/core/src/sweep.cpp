#include "flrw/sweep.hpp"

#include <algorithm>
#include <condition_variable>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "flrw/csv.hpp"
#include "flrw/errors.hpp"
#include "flrw/runs.hpp"
#include "flrw/thresholds.hpp"

namespace flrw {

namespace {

constexpr const char* kVersion = "flrwkg 0.1.0";

std::string flag(bool b) { return b ? "1" : "0"; }

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string row_text(const std::vector<std::string>& fields) {
  std::ostringstream out;
  write_csv_row(out, fields);
  return out.str();
}

struct Grid {
  std::vector<double> x1;
  std::vector<double> x2;
  std::size_t size() const { return x1.size() * x2.size(); }
  std::pair<double, double> at(std::size_t k) const { return {x1[k / x2.size()], x2[k % x2.size()]}; }
};

// Complete rows of an earlier run that match this grid, in order.
std::vector<std::string> reusable_rows(const std::filesystem::path& csv, const Grid& grid) {
  std::vector<std::string> kept;
  std::ifstream in(csv, std::ios::binary);
  if (!in) return kept;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const std::string header = row_text(sweep_header());
  if (text.compare(0, header.size(), header) != 0) return kept;
  std::size_t pos = header.size();
  while (pos < text.size() && kept.size() < grid.size()) {
    const std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) break;  // truncated last line
    const std::string line = text.substr(pos, end - pos + 1);
    const auto fields = split_csv_line(std::string_view(line).substr(0, line.size() - 1));
    const auto [x1, x2] = grid.at(kept.size());
    if (fields.size() != sweep_header().size() || fields[0] != format_double(x1) ||
        fields[1] != format_double(x2)) {
      break;
    }
    kept.push_back(line);
    pos = end + 1;
  }
  return kept;
}

}  // namespace

std::vector<std::string> sweep_header() {
  return {"x1",         "x2",          "n",            "c",
          "m_sq",       "H",           "sigma",        "a0",
          "lambda",     "p",           "theta",        "r0",
          "w0",         "w1",          "N",            "S",
          "p_upper",    "case_label",  "verdict",      "reasons",
          "infinite_horizon", "mass_floor", "imaginary_mass", "S_finite",
          "w0_above_S", "w1_above_cNw0", "time_scaling", "space_scaling",
          "scaling_disagreement", "ode_status", "t_star", "pde_status",
          "pde_t_final", "pde_final_mean", "error"};
}

std::vector<std::string> evaluate_sweep_point(const RunConfig& base, double x1, double x2) {
  std::vector<std::string> row(sweep_header().size());
  row[0] = format_double(x1);
  row[1] = format_double(x2);
  RunConfig cfg = base;
  try {
    set_parameter(cfg, cfg.sweep->axis1.name, x1);
    set_parameter(cfg, cfg.sweep->axis2.name, x2);
    finalize_config(cfg);
    const double w1 = effective_w1(cfg);
    const ThresholdReport rep =
        check_hypotheses(cfg.params, {cfg.w0, w1, cfg.r0}, cfg.lambda, cfg.p, cfg.theta, cfg.N);
    const CosmologyParams& q = cfg.params;
    const std::vector<std::string> values = {
        std::to_string(q.n),        format_double(q.c),        format_double(q.m_sq),
        format_double(q.H),         format_double(q.sigma),    format_double(q.a0),
        format_double(cfg.lambda),  format_double(cfg.p),      format_double(cfg.theta),
        format_double(cfg.r0),      format_double(cfg.w0),     format_double(w1),
        format_double(rep.N),       format_double(rep.S),      format_double(rep.p_upper),
        std::string(to_string(rep.blowup_case)), rep.admissible ? "admissible" : "inadmissible",
        join(rep.reasons, ';'),     flag(rep.flags.infinite_horizon), flag(rep.flags.mass_floor),
        flag(rep.flags.imaginary_mass), flag(rep.flags.S_finite), flag(rep.flags.w0_above_S),
        flag(rep.flags.w1_above_cNw0), flag(rep.flags.time_scaling), flag(rep.flags.space_scaling),
        flag(rep.scaling.disagreement)};
    std::copy(values.begin(), values.end(), row.begin() + 2);
    std::size_t k = 2 + values.size();
    if (cfg.sweep->run_ode) {
      const Trajectory tr = integrate_comparison(ode_problem_from(cfg));
      row[k] = std::string(to_string(tr.status));
      row[k + 1] = tr.t_star ? format_double(*tr.t_star) : "";
    }
    k += 2;
    if (cfg.sweep->run_pde) {
      const PdeRun run = run_pde(cfg, cfg.pde.t_end, false, cfg.pde.output_interval);
      row[k] = run.diagnostics.stop_reason;
      row[k + 1] = format_double(run.diagnostics.t_final);
      row[k + 2] = format_double(run.diagnostics.samples.back().mean);
    }
  } catch (const std::exception& e) {
    row.back() = e.what();
  }
  return row;
}

SweepOutcome run_sweep(const RunConfig& config, const std::filesystem::path& out_dir, unsigned jobs) {
  if (!config.sweep) throw ValidationError("config has no 'sweep' section");
  std::filesystem::create_directories(out_dir);
  const Grid grid{config.sweep->axis1.values(), config.sweep->axis2.values()};

  SweepOutcome outcome;
  outcome.points = grid.size();
  outcome.csv = out_dir / "sweep.csv";
  const std::vector<std::string> kept = reusable_rows(outcome.csv, grid);
  outcome.reused = kept.size();

  {
    nlohmann::json meta = {{"version", kVersion},
                           {"axis1", config.sweep->axis1.name},
                           {"axis2", config.sweep->axis2.name},
                           {"points", grid.size()},
                           {"w1_default", config.w1 ? "configured" : "cNw0"},
                           {"config", to_json(config)}};
    std::ofstream side(out_dir / "sweep.json", std::ios::binary);
    side << meta.dump(2) << '\n';
  }

  std::ofstream out(outcome.csv, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + outcome.csv.string());
  out << row_text(sweep_header());
  for (const std::string& line : kept) out << line;
  out.flush();

  const std::size_t first = kept.size();
  const std::size_t total = grid.size();
  if (first == total) return outcome;

  std::vector<std::optional<std::string>> slots(total);
  std::mutex mutex;
  std::condition_variable ready;
  std::size_t next_task = first;

  const auto worker = [&] {
    for (;;) {
      std::size_t k;
      {
        std::lock_guard lock(mutex);
        if (next_task == total) return;
        k = next_task++;
      }
      const auto [x1, x2] = grid.at(k);
      std::string line = row_text(evaluate_sweep_point(config, x1, x2));
      {
        std::lock_guard lock(mutex);
        slots[k] = std::move(line);
      }
      ready.notify_one();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(total - first)));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);

  // Single collector: rows leave in grid order.
  for (std::size_t k = first; k < total; ++k) {
    std::string line;
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return slots[k].has_value(); });
      line = std::move(*slots[k]);
      slots[k].reset();
    }
    out << line;
    out.flush();
    ++outcome.computed;
  }
  for (std::thread& t : pool) t.join();
  return outcome;
}

SweepReport emit_report(const std::filesystem::path& out_dir) {
  std::ifstream in(out_dir / "sweep.csv", std::ios::binary);
  if (!in) throw std::runtime_error("no sweep.csv in " + out_dir.string());
  std::string axis1 = "x1";
  std::string axis2 = "x2";
  if (std::ifstream side(out_dir / "sweep.json"); side) {
    const auto meta = nlohmann::json::parse(side, nullptr, false);
    if (meta.is_object() && meta.contains("axis1")) {
      axis1 = meta["axis1"].get<std::string>();
      axis2 = meta["axis2"].get<std::string>();
    }
  }

  const std::vector<std::string> header = sweep_header();
  const auto column = [&](std::string_view name) {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
  };
  const std::size_t c_verdict = column("verdict"), c_reasons = column("reasons"),
                    c_error = column("error"), c_pupper = column("p_upper"),
                    c_ode = column("ode_status"), c_tstar = column("t_star"),
                    c_pde = column("pde_status"), c_pde_t = column("pde_t_final");

  std::string line;
  std::getline(in, line);
  SweepReport report;
  std::map<std::string, std::size_t> reason_counts;
  // Per axis-1 value, in first-seen order: largest admissible axis-2 value.
  std::vector<std::string> order;
  std::map<std::string, std::optional<double>> best;
  std::map<std::string, std::string> p_upper;
  std::ostringstream blowup;
  write_csv_row(blowup, {axis1, axis2, "ode_status", "t_star", "pde_status", "pde_t_final"});

  while (std::getline(in, line)) {
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) continue;
    ++report.points;
    if (!best.count(f[0])) {
      order.push_back(f[0]);
      best[f[0]] = std::nullopt;
      p_upper[f[0]] = f[c_pupper];
    }
    if (!f[c_error].empty()) {
      ++report.errors;
      continue;
    }
    if (f[c_verdict] == "admissible") {
      ++report.admissible;
      const double x2 = parse_double(f[1]);
      auto& slot = best[f[0]];
      if (!slot || x2 > *slot) slot = x2;
    }
    std::stringstream reasons(f[c_reasons]);
    for (std::string code; std::getline(reasons, code, ';');) {
      if (!code.empty()) ++reason_counts[code];
    }
    if (!f[c_ode].empty() || !f[c_pde].empty()) {
      write_csv_row(blowup, {f[0], f[1], f[c_ode], f[c_tstar], f[c_pde], f[c_pde_t]});
    }
  }

  std::ostringstream summary;
  const double fraction = report.points ? 100.0 * static_cast<double>(report.admissible) /
                                              static_cast<double>(report.points)
                                        : 0.0;
  std::ostringstream pct;
  pct.setf(std::ios::fixed);
  pct.precision(1);
  pct << fraction;
  summary << "points=" << report.points << " admissible=" << report.admissible << " (" << pct.str()
          << "%) errors=" << report.errors << '\n';
  if (report.points > 1) {
    summary << "axes: " << axis1 << " x " << axis2 << '\n';
    for (const auto& [code, count] : reason_counts) {
      summary << "reason " << code << ": " << count << '\n';
    }
  }
  report.summary = summary.str();
  std::ofstream(out_dir / "summary.txt", std::ios::binary) << report.summary;

  std::ofstream boundary(out_dir / "boundary.csv", std::ios::binary);
  write_csv_row(boundary, {axis1, axis2 + "_max_admissible", "p_upper"});
  for (const std::string& x1 : order) {
    const auto& b = best[x1];
    write_csv_row(boundary, {x1, b ? format_double(*b) : "", p_upper[x1]});
  }
  std::ofstream(out_dir / "blowup.csv", std::ios::binary) << blowup.str();
  return report;
}

}  // namespace flrw
