#pragma once

// Large-R behaviour of the two cutoff integrals that control the test
// function argument:
//
//   time integral   II'_R  = w_n int_{R/2}^{R} min(R, r(t))^n a(t)^{n/2} dt
//   space integral  III'_R = int_0^R a(t)^{n/2 - 2p'} |{R/2 < |x| < min(R, r(t))}| dt
//
// and the decision whether R^{-2} I_R^{1/p'} -> 0 for each of them.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "flrw/cosmology.hpp"

namespace flrw {

/// Integral value kept in log space; log_value = -inf encodes zero.
struct ScalingIntegral {
  double log_value = 0.0;
  bool truncated = false;  ///< window clipped at the horizon T0
  double value() const;
};

ScalingIntegral II_prime(const ConeData& cone, double R);
ScalingIntegral III_prime(const ConeData& cone, double R, double p);

enum class GrowthKind { PowerLaw, Exponential, Vanishing };
std::string_view to_string(GrowthKind kind) noexcept;

struct ScalingFit {
  std::vector<double> R;
  std::vector<double> log_values;
  double slope = 0.0;        ///< d log I / d log R (power-law model)
  double slope_error = 0.0;  ///< standard error of the slope
  double intercept = 0.0;
  double residual = 0.0;     ///< rms residual of the power-law model
  double log_power = 0.0;    ///< k in the model R^slope (log R)^k
  double exp_rate = 0.0;     ///< d log I / dR (exponential model)
  double exp_residual = 0.0;
  GrowthKind kind = GrowthKind::PowerLaw;
};

/// {2^k : k = 6..16} scaled by max(1, r0, 1/c).
std::vector<double> default_R_grid(double r0, double c);

/// Least-squares slope of log I against log R (with an optional known
/// (log R)^k factor), plus an exponential-in-R alternative. Needs at least
/// six points spanning three decades.
ScalingFit scaling_exponent(const std::function<double(double)>& log_integral,
                            std::span<const double> R_grid, double log_power = 0.0);

/// Decides lim R^{-2} I_R^{1/p'} = 0 from a fit. Power laws must clear the
/// exponent 2 by more than the fit uncertainty.
bool limit_vanishes(const ScalingFit& fit, double p_prime);

/// Closed-form asymptotics of both integrals per regime.
struct AnalyticLadder {
  bool applicable = false;   ///< false for finite-horizon regimes
  std::string label;
  GrowthKind time_kind = GrowthKind::PowerLaw;
  double time_exponent = 0.0;
  double time_log_power = 0.0;
  GrowthKind space_kind = GrowthKind::PowerLaw;
  double space_exponent = 0.0;
  double gamma = 0.0;        ///< (1 - 4p'/n)/(1+sigma), contracting regimes only
  bool time_decay = false;
  bool space_decay = false;
};
AnalyticLadder analytic_scaling_ladder(const CosmologyParams& params, double p);

struct ScalingVerdict {
  bool time_decay = false;   ///< R^{-2} (II'_R)^{1/p'} -> 0
  bool space_decay = false;  ///< R^{-2} (III'_R)^{1/p'} -> 0
  AnalyticLadder analytic;
  bool disagreement = false;
  bool truncated = false;
  ScalingFit time_fit;
  ScalingFit space_fit;
};

/// Numeric verdicts for both cutoff integrals next to the analytic ladder.
/// An empty grid selects default_R_grid.
ScalingVerdict scaling_hypotheses(const ConeData& cone, double p,
                                  std::span<const double> R_grid = {});

}  // namespace flrw
