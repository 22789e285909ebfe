#pragma once

// Blow-up thresholds: the nonlinearity weight b(t), the damping rate N, the
// supremum S, admissible exponent ranges (including the critical exponent
// p0 of contracting spacetimes) and a per-hypothesis verdict.

#include <boost/rational.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flrw/cosmology.hpp"
#include "flrw/errors.hpp"
#include "flrw/scaling.hpp"

namespace flrw {

/// pi^{n/2} / Gamma(n/2 + 1)
double unit_ball_volume(int n);

/// b(t) = lambda / (w_n^{p-1} (a r^2)^{n(p-1)/2}).
double nonlinearity_weight(const ConeData& cone, double lambda, double p, double t);
/// The same weight written as lambda (w_n^{2/n} a r^2)^{-n(p-1)/2}.
double nonlinearity_weight_scaled(const ConeData& cone, double lambda, double p, double t);
double log_nonlinearity_weight(const ConeData& cone, double lambda, double p, double t);

/// Which route to the blow-up statement a parameter point takes.
enum class BlowupCase {
  Static,       ///< H = 0, imaginary mass
  Expanding,    ///< H > 0, sigma > -1, imaginary mass
  Contracting,  ///< H < 0, sigma < -1 - 2/n, imaginary mass
  Theorem,      ///< no closed-form case; N supplied or minimal
};
std::string_view to_string(BlowupCase blowup_case) noexcept;

struct DampingRate {
  double N = 0.0;
  BlowupCase blowup_case = BlowupCase::Theorem;
};

/// N for the closed-form cases, or `user_N` for raw theorem use. Throws
/// CaseMismatchError when neither is available.
DampingRate damping_rate_N(const CosmologyParams& params, std::optional<double> user_N = {});

/// Smallest N with N^2 + inf M^2 >= 0; infinity when M^2 is unbounded below.
double minimal_damping_rate(const CosmologyParams& params);

struct SupremumResult {
  double value = 0.0;     ///< may be +inf
  double t_argmax = 0.0;
};

/// S = sup_t e^{-cNt} ((N^2 + M^2(t)) / ((1-theta) b(t)))^{1/(p-1)} over
/// (0, min(T0, t_max)). Declared infinite above 1e30 or when the sampled
/// values keep growing.
SupremumResult threshold_S_detail(const ConeData& cone, double lambda, double p, double theta,
                                  double N);
double threshold_S(const ConeData& cone, double lambda, double p, double theta, double N);

/// n{(n+1)(s+1)+1} / (n(n-1)(s+1)+n-4), unchecked.
template <class T>
T p0_formula(int n, const T& sigma) {
  const T nn(n);
  const T s1 = sigma + T(1);
  return nn * ((nn + T(1)) * s1 + T(1)) / (nn * (nn - T(1)) * s1 + nn - T(4));
}

/// Critical exponent of contracting spacetimes. Requires sigma < -1 - 2/n.
double critical_exponent_p0(int n, double sigma);
boost::rational<long long> critical_exponent_p0(int n, const boost::rational<long long>& sigma);

struct PRange {
  double lower = 1.0;
  double upper = 1.0;  ///< may be +inf
  BlowupCase blowup_case = BlowupCase::Theorem;
};

/// (1, p_upper) for the closed-form cases. Throws CaseMismatchError otherwise.
PRange admissible_p_range(const CosmologyParams& params);

struct InitialDataSummary {
  double w0 = 0.0;
  double w1 = 0.0;
  double r0 = 1.0;
};

struct HypothesisFlags {
  bool infinite_horizon = false;  ///< T0 = inf
  bool mass_floor = false;        ///< inf M^2 > -inf and N^2 + inf M^2 >= 0
  bool imaginary_mass = false;    ///< M^2(t) <= 0 throughout
  bool S_finite = false;
  bool w0_above_S = false;
  bool w1_above_cNw0 = false;
  bool time_scaling = false;      ///< R^{-2} (II'_R)^{1/p'} -> 0
  bool space_scaling = false;     ///< R^{-2} (III'_R)^{1/p'} -> 0
};

/// Integrability of M^2 u depends on the solution and is only monitored on
/// numerical runs.
inline constexpr std::string_view kMassIntegralStatus = "diagnostic-only";

struct ThresholdReport {
  CosmologyParams params;
  InitialDataSummary data;
  double lambda = 1.0;
  double p = 2.0;
  double theta = 0.5;
  double N = 0.0;
  double S = 0.0;
  double S_argmax = 0.0;
  double p_lower = 1.0;
  double p_upper = 1.0;
  BlowupCase blowup_case = BlowupCase::Theorem;
  HypothesisFlags flags;
  bool admissible = false;
  std::vector<std::string> reasons;
  ScalingVerdict scaling;
};

/// Evaluates every hypothesis for one parameter point. Never throws for
/// inadmissible points; the reasons list carries one code per failed flag.
ThresholdReport check_hypotheses(const CosmologyParams& params, const InitialDataSummary& data,
                                 double lambda, double p, double theta,
                                 std::optional<double> user_N = {});

struct PriorComparison {
  bool current = false;   ///< w1 >= cNw0 and w0 > S
  bool prior = false;
  double S = 0.0;         ///< supremum in the current conditions
  double prior_sup = 0.0; ///< supremum with the max{a0 r0^2, a r^2} weight
  double prior_w1 = 0.0;  ///< lower bound on w1 in the earlier conditions
};

/// Current conditions (w1 >= cNw0, w0 > S) next to the earlier, stronger set
/// with the extra w1 bound, the max-weighted supremum and, for H < 0 with
/// sigma <= -1, r0 <= 2c/(a0|H|).
PriorComparison compare_prior_conditions(const CosmologyParams& params,
                                         const InitialDataSummary& data, double lambda, double p,
                                         double theta, std::optional<double> user_N = {});

}  // namespace flrw
