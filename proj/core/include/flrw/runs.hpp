#pragma once

// Glue between a RunConfig and the solvers.

#include "flrw/comparison_ode.hpp"
#include "flrw/config.hpp"
#include "flrw/field_solver.hpp"

namespace flrw {

OdeProblem ode_problem_from(const RunConfig& config);

struct PdeRun {
  FieldState state;  ///< final state
  Diagnostics diagnostics;
};

/// Bump data with mean w0 and u1 = (w1/w0) u0 on a grid reaching
/// r(t_end) + 16 dr (or pde.r_max when set), advanced to t_end.
PdeRun run_pde(const RunConfig& config, double t_end, bool keep_snapshots,
               double output_interval);

}  // namespace flrw
