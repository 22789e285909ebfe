#include "flrw/runs.hpp"

#include <cmath>

namespace flrw {

OdeProblem ode_problem_from(const RunConfig& cfg) {
  const ConeData cone{cfg.r0, cfg.params};
  OdeProblem problem = make_comparison_problem(cone, cfg.lambda, cfg.p, cfg.theta, effective_N(cfg),
                                               cfg.w0, effective_w1(cfg), cfg.ode.t_end);
  problem.rtol = cfg.ode.rtol;
  return problem;
}

PdeRun run_pde(const RunConfig& cfg, double t_end, bool keep_snapshots, double output_interval) {
  const ConeData cone{cfg.r0, cfg.params};
  const double T0 = horizon_time(cfg.params);
  const double t_reach = std::isfinite(T0) ? std::min(t_end, (1.0 - 1e-9) * T0) : t_end;
  GridSpec grid;
  grid.dr = cfg.pde.dr;
  grid.r_max = cfg.pde.r_max > 0.0 ? cfg.pde.r_max : cone_radius(cone, t_reach) + 16.0 * cfg.pde.dr;

  BumpSpec bump;
  bump.r0 = cfg.r0;
  bump.target_mean = cfg.w0;
  bump.velocity_ratio = cfg.w0 != 0.0 ? effective_w1(cfg) / cfg.w0 : 0.0;

  PdeRun run;
  run.state = init_field(bump, grid, cfg.params.n);
  RunOptions options;
  options.keep_snapshots = keep_snapshots;
  options.output_interval = output_interval;
  options.support_threshold = cfg.pde.support_threshold;
  run.diagnostics = run_until(cone, cfg.lambda, cfg.p, run.state, t_end, options);
  return run;
}

}  // namespace flrw
