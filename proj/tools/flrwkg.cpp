// flrwkg: command-line front end for the FLRW Klein-Gordon blow-up lab.
//
// Every subcommand reads one JSON config (--config). Results go to --out;
// regime and threshold also print their JSON record on stdout.
// Exit codes: 0 success, 1 validation error, 2 runtime failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "flrw/config.hpp"
#include "flrw/csv.hpp"
#include "flrw/errors.hpp"
#include "flrw/runs.hpp"
#include "flrw/serialize.hpp"
#include "flrw/sweep.hpp"
#include "flrw/thresholds.hpp"
#include "flrw/weak_identity.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string config;
  std::string out;
  unsigned jobs = 1;
};

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

fs::path out_dir(const Options& o) {
  const fs::path dir = o.out.empty() ? fs::path("out") : fs::path(o.out);
  fs::create_directories(dir);
  return dir;
}

void emit(const Options& o, const std::string& name, const json& j) {
  std::cout << j.dump(2) << '\n';
  if (!o.out.empty()) write_json(out_dir(o) / name, j);
}

int cmd_regime(const Options& o) {
  const flrw::RunConfig cfg = flrw::parse_config(o.config);
  const flrw::ConeData cone{cfg.r0, cfg.params};
  json j;
  j["params"] = flrw::to_json(cfg.params);
  j["regime"] = std::string(flrw::to_string(flrw::classify_regime(cfg.params)));
  j["horizon_time"] = flrw::number_json(flrw::horizon_time(cfg.params));
  j["mass_bounds"] = flrw::to_json(flrw::curved_mass_bounds(cfg.params));
  if (const auto t = flrw::mass_sign_change_time(cfg.params)) {
    j["mass_sign_change_time"] = flrw::number_json(*t);
  } else {
    j["mass_sign_change_time"] = nullptr;
  }
  j["log_cone_branch"] = flrw::is_log_cone_branch(cfg.params);
  j["case_label"] = cfg.case_label;
  j["p_upper"] = flrw::number_json(cfg.p_upper);
  emit(o, "regime.json", j);
  return 0;
}

int cmd_threshold(const Options& o) {
  const flrw::RunConfig cfg = flrw::parse_config(o.config);
  const flrw::InitialDataSummary data{cfg.w0, flrw::effective_w1(cfg), cfg.r0};
  const flrw::ThresholdReport rep =
      flrw::check_hypotheses(cfg.params, data, cfg.lambda, cfg.p, cfg.theta, cfg.N);
  json j = flrw::to_json(rep);
  const flrw::PriorComparison prior =
      flrw::compare_prior_conditions(cfg.params, data, cfg.lambda, cfg.p, cfg.theta, cfg.N);
  j["prior_conditions"] = {{"current", prior.current},
                           {"prior", prior.prior},
                           {"prior_sup", flrw::number_json(prior.prior_sup)},
                           {"prior_w1", flrw::number_json(prior.prior_w1)}};
  emit(o, "threshold.json", j);
  return 0;
}

int cmd_ode(const Options& o) {
  const flrw::RunConfig cfg = flrw::parse_config(o.config);
  const flrw::OdeProblem problem = flrw::ode_problem_from(cfg);
  const flrw::Trajectory tr = flrw::integrate_comparison(problem);
  const fs::path dir = out_dir(o);
  {
    auto f = open_out(dir / "trajectory.csv");
    flrw::write_trajectory_csv(f, tr);
  }
  json meta = flrw::trajectory_metadata(tr, problem);
  try {
    meta["comparison_properties"] = flrw::to_json(flrw::verify_comparison_properties(tr, problem));
  } catch (const flrw::PreconditionError& e) {
    meta["comparison_properties"] = {{"skipped", e.clause()}};
  }
  if (tr.blowup) {
    const flrw::BlowupEstimate est = flrw::blowup_time_estimate(problem);
    meta["blowup_time"] = {{"t_star", flrw::number_json(est.t_star)},
                           {"error", flrw::number_json(est.error)}};
  }
  write_json(dir / "trajectory.json", meta);
  std::cout << to_string(tr.status) << ' '
            << (tr.t_star ? flrw::format_double(*tr.t_star) : std::string("-")) << '\n';
  return 0;
}

int cmd_pde(const Options& o) {
  const flrw::RunConfig cfg = flrw::parse_config(o.config);
  const flrw::PdeRun run = flrw::run_pde(cfg, cfg.pde.t_end, false, cfg.pde.output_interval);
  const fs::path dir = out_dir(o);
  {
    auto f = open_out(dir / "diagnostics.csv");
    flrw::write_diagnostics_csv(f, run.diagnostics);
  }
  {
    auto f = open_out(dir / "final_field.csv");
    flrw::write_snapshot_csv(f, run.state);
  }
  write_json(dir / "run.json", flrw::run_metadata(run.diagnostics));
  std::cout << run.diagnostics.stop_reason << ' ' << flrw::format_double(run.diagnostics.t_final)
            << '\n';
  return 0;
}

int cmd_scaling(const Options& o) {
  const flrw::RunConfig cfg = flrw::parse_config(o.config);
  const flrw::ConeData cone{cfg.r0, cfg.params};
  const flrw::ScalingVerdict v = flrw::scaling_hypotheses(cone, cfg.p, cfg.scaling.R);
  const fs::path dir = out_dir(o);
  {
    auto f = open_out(dir / "time_integral.csv");
    flrw::write_scaling_csv(f, v.time_fit);
  }
  {
    auto f = open_out(dir / "space_integral.csv");
    flrw::write_scaling_csv(f, v.space_fit);
  }
  const json j = flrw::to_json(v);
  write_json(dir / "scaling.json", j);
  std::cout << "time_decay=" << v.time_decay << " space_decay=" << v.space_decay
            << " disagreement=" << v.disagreement << '\n';
  return 0;
}

int cmd_sweep(const Options& o) {
  const flrw::RunConfig cfg = flrw::parse_config(o.config);
  const fs::path dir = out_dir(o);
  const flrw::SweepOutcome outcome = flrw::run_sweep(cfg, dir, std::max(1u, o.jobs));
  const flrw::SweepReport report = flrw::emit_report(dir);
  std::cerr << "computed " << outcome.computed << ", reused " << outcome.reused << " of "
            << outcome.points << '\n';
  std::cout << report.summary;
  return 0;
}

int cmd_identity(const Options& o) {
  const flrw::RunConfig cfg = flrw::parse_config(o.config);
  const double R = cfg.identity.R > 0.0 ? cfg.identity.R : 3.0 * cfg.r0;
  const flrw::PdeRun run = flrw::run_pde(cfg, R, true, cfg.pde.output_interval);
  const flrw::WeakIdentityTerms terms =
      flrw::weak_identity_terms(run.diagnostics, cfg.params, cfg.lambda, cfg.p, R);
  json j = flrw::to_json(terms);
  j["R"] = flrw::number_json(R);
  j["dr"] = flrw::number_json(cfg.pde.dr);
  write_json(out_dir(o) / "identity.json", j);
  std::cout << "residual " << flrw::format_double(terms.residual) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semilinear Klein-Gordon blow-up lab on flat FLRW backgrounds"};
  app.require_subcommand(1);
  Options opts;

  struct Entry {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Entry entries[] = {
      {"regime", "Classify the spacetime: regime, horizon, curved-mass bounds", cmd_regime},
      {"threshold", "Evaluate every blow-up hypothesis for one parameter point", cmd_threshold},
      {"ode", "Integrate the comparison ODE for the spatial mean", cmd_ode},
      {"pde", "Run the radial field solver", cmd_pde},
      {"scaling", "Fit the large-R growth of the cutoff integrals", cmd_scaling},
      {"sweep", "Two-axis parameter sweep with CSV output and report", cmd_sweep},
      {"identity", "Check the weak-solution identity on a field run", cmd_identity},
  };
  int (*selected)(const Options&) = nullptr;
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--config", opts.config, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out, "Output directory");
    if (std::string(e.name) == "sweep") {
      sub->add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
    }
    sub->callback([&selected, run = e.run] { selected = run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    return selected(opts);
  } catch (const flrw::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 1;
  } catch (const flrw::DomainError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 1;
  } catch (const flrw::CaseMismatchError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 1;
  } catch (const flrw::PreconditionError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
