#pragma once

// Comparison ODE for the spatial mean w(t):
//
//   c^{-2} w'' + M^2(t) w - b(t) |w|^p = 0,   w(0) = w0, w'(0) = w1,
//
// integrated with an embedded Dormand-Prince 5(4) pair.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flrw/cosmology.hpp"

namespace flrw {

struct OdeProblem {
  double c = 1.0;
  double p = 2.0;
  double w0 = 1.0;
  double w1 = 0.0;
  double t_end = 1.0;
  std::function<double(double)> mass_sq;  ///< M^2(t)
  std::function<double(double)> weight;   ///< b(t)
  /// Damping rate and split parameter, used by verify_comparison_properties only.
  double N = 0.0;
  double theta = 0.5;
  double rtol = 1e-10;
  double atol = 1e-12;
};

/// Problem with M^2 and b taken from the spacetime. t_end is capped at
/// (1 - 1e-9) T0 when the horizon is finite.
OdeProblem make_comparison_problem(const ConeData& cone, double lambda, double p, double theta,
                                   double N, double w0, double w1, double t_end);

/// Constant coefficients M^2 = mass_sq, b = weight.
OdeProblem constant_problem(double c, double mass_sq, double weight, double p, double w0,
                            double w1, double t_end);

struct OdeSample {
  double t = 0.0;
  double w = 0.0;
  double wdot = 0.0;
};

enum class OdeStatus { Completed, BlowUp, StiffnessFailure };
std::string_view to_string(OdeStatus status) noexcept;

struct Trajectory {
  std::vector<OdeSample> samples;
  OdeStatus status = OdeStatus::Completed;
  bool blowup = false;
  std::optional<double> t_star;      ///< extrapolated divergence time
  double t_star_bracket = 0.0;       ///< width of the last accepted step
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  double final_dt = 0.0;
  /// Accumulated local error estimate for w, carried along with the
  /// solution's own growth.
  double error_estimate = 0.0;
};

/// Guard above which a collapsing step size is read as blow-up.
inline constexpr double kDivergenceGuard = 1e8;
/// Step size floor.
inline constexpr double kStepFloor = 1e-13;

Trajectory integrate_comparison(const OdeProblem& problem);

struct ComparisonReport {
  bool exponential_lower_bound = true;  ///< w >= w0 e^{cNt}
  bool mass_gap = true;                 ///< (1-theta) b w^{p-1} - M^2 > N^2
  bool differential_inequality = true;  ///< c^{-2} w'' - N^2 w - theta b w^p >= 0
  bool slope_bound = true;              ///< w' >= w1
  std::size_t samples_checked = 0;
  std::string first_failure;
  bool all() const noexcept {
    return exponential_lower_bound && mass_gap && differential_inequality && slope_bound;
  }
};

/// Checks the four comparison properties at every sample with tolerance
/// 1e-8 (1 + |w|). Throws PreconditionError naming the failing clause when
/// w0 does not exceed the threshold supremum on [0, t_end] or w1 < cNw0.
ComparisonReport verify_comparison_properties(const Trajectory& trajectory, const OdeProblem& problem);

struct BlowupEstimate {
  double t_star = 0.0;
  double error = 0.0;
};

/// Divergence time from a run at the problem tolerance and one at rtol/8;
/// the error bar covers the step bracket and the tolerance sensitivity.
/// Throws NoBlowupError when the run reaches t_end.
BlowupEstimate blowup_time_estimate(const OdeProblem& problem);

/// Exact solution for M^2 = 0, constant b and the energy-matched slope
/// w1 = c sqrt(2b/(p+1)) w0^{(p+1)/2}: w = w0 (1 - kappa t)^{-2/(p-1)}.
struct ClosedFormSolution {
  double p = 2.0;
  double w0 = 1.0;
  double w1 = 0.0;
  double kappa = 0.0;
  double t_star = 0.0;
  double w(double t) const;
  double wdot(double t) const;
};
ClosedFormSolution closed_form_oracle(double p, double b, double w0, double c);

}  // namespace flrw
