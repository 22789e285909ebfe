#include "flrw/thresholds.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <functional>
#include <limits>

#include "flrw/quadrature.hpp"

namespace flrw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kSupGrid = 10000;
const double kLogOverflow = std::log(1e30);

void check_theta(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw DomainError("theta ∉ (0,1): got " + std::to_string(theta));
  }
}

void check_weight_inputs(double lambda, double p) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive");
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("p must be finite and > 1");
}

// log(N^2 + M^2(t)), with values lost in rounding treated as an exact zero.
double log_mass_gap(const CosmologyParams& params, double N, double t) {
  const double m2 = curved_mass_sq(params, t);
  const double gap = N * N + m2;
  const double scale = N * N + std::abs(m2);
  if (gap <= 64.0 * std::numeric_limits<double>::epsilon() * scale) return kNegInf;
  return std::log(gap);
}

// log of e^{-cNt} ((N^2+M^2)/((1-theta) lambda))^{1/(p-1)} w_n; the weight
// (a r^2)^{n/2} is added by the caller.
double log_base_term(const ConeData& cone, double lambda, double p, double theta, double N,
                     double t) {
  const double gap = log_mass_gap(cone.params, N, t);
  if (gap == kNegInf) return kNegInf;
  return -cone.params.c * N * t + (gap - std::log((1.0 - theta) * lambda)) / (p - 1.0) +
         std::log(unit_ball_volume(cone.params.n));
}

// (n/2) log(a(t) r(t)^2)
double log_volume_weight(const ConeData& cone, double t) {
  return 0.5 * cone.params.n * (log_scale_factor(cone.params, t) + 2.0 * std::log(cone_radius(cone, t)));
}

// Grid supremum of exp(log_f) on [0, t_max] (t_max capped just below T0)
// followed by a Brent refinement around the best grid point.
SupremumResult log_supremum(const std::function<double(double)>& log_f, const CosmologyParams& params,
                            double t_max) {
  const double T0 = horizon_time(params);
  const bool finite_horizon = std::isfinite(T0);
  const auto scan = [&](double hi, std::vector<double>& ts, std::vector<double>& vs) {
    ts.clear();
    vs.clear();
    ts.push_back(0.0);
    const auto grid = quad::log_spaced(hi * 1e-10, hi, kSupGrid);
    ts.insert(ts.end(), grid.begin(), grid.end());
    vs.reserve(ts.size());
    for (const double t : ts) vs.push_back(log_f(t));
    return static_cast<std::size_t>(std::max_element(vs.begin(), vs.end()) - vs.begin());
  };

  std::vector<double> ts, vs;
  double hi = finite_horizon ? std::min(t_max, (1.0 - 1e-12) * T0) : t_max;
  std::size_t k = scan(hi, ts, vs);
  // Maximum at the right end: push the window out while it keeps climbing.
  for (int extend = 0; !finite_horizon && k + 1 == ts.size() && extend < 20; ++extend) {
    if (vs[k] > kLogOverflow) break;
    hi *= 1e3;
    k = scan(hi, ts, vs);
  }
  SupremumResult out{kNegInf, ts[k]};
  double best = vs[k];
  if (best == kNegInf) return {0.0, 0.0};
  if (k + 1 == ts.size() && !finite_horizon && vs[k] - vs[k - 1] > 1e-9) return {kInf, ts[k]};

  const double lo = ts[k == 0 ? 0 : k - 1];
  const double up = ts[std::min(k + 1, ts.size() - 1)];
  if (up > lo) {
    const auto [t_ref, neg] = boost::math::tools::brent_find_minima(
        [&](double t) { return -log_f(t); }, lo, up, std::numeric_limits<double>::digits / 2);
    if (-neg > best) {
      best = -neg;
      out.t_argmax = t_ref;
    }
  }
  out.value = best > kLogOverflow ? kInf : std::exp(best);
  return out;
}

double default_sup_window(const CosmologyParams& params, double N) {
  return N > 0.0 ? 1e3 * std::max(1.0, 1.0 / (params.c * N)) : 1e3;
}

bool matches_imaginary_mass(const CosmologyParams& params) { return params.m_sq <= 0.0; }

}  // namespace

double unit_ball_volume(int n) {
  if (n < 1) throw DomainError("unit_ball_volume needs n >= 1");
  const double half = 0.5 * n;
  return std::exp(half * std::log(boost::math::constants::pi<double>()) - std::lgamma(half + 1.0));
}

double log_nonlinearity_weight(const ConeData& cone, double lambda, double p, double t) {
  check_weight_inputs(lambda, p);
  const int n = cone.params.n;
  return std::log(lambda) - (p - 1.0) * std::log(unit_ball_volume(n)) -
         (p - 1.0) * log_volume_weight(cone, t);
}

double nonlinearity_weight(const ConeData& cone, double lambda, double p, double t) {
  check_weight_inputs(lambda, p);
  const int n = cone.params.n;
  const double a = scale_factor(cone.params, t);
  const double r = cone_radius(cone, t);
  return lambda / (std::pow(unit_ball_volume(n), p - 1.0) * std::pow(a * r * r, 0.5 * n * (p - 1.0)));
}

double nonlinearity_weight_scaled(const ConeData& cone, double lambda, double p, double t) {
  check_weight_inputs(lambda, p);
  const int n = cone.params.n;
  const double a = scale_factor(cone.params, t);
  const double r = cone_radius(cone, t);
  const double base = std::pow(unit_ball_volume(n), 2.0 / n) * a * r * r;
  return lambda * std::pow(base, -0.5 * n * (p - 1.0));
}

std::string_view to_string(BlowupCase blowup_case) noexcept {
  switch (blowup_case) {
    case BlowupCase::Static: return "static";
    case BlowupCase::Expanding: return "expanding";
    case BlowupCase::Contracting: return "contracting";
    case BlowupCase::Theorem: return "theorem";
  }
  return "unknown";
}

DampingRate damping_rate_N(const CosmologyParams& params, std::optional<double> user_N) {
  params.validate();
  const double K = params.hubble_mass_sq();
  const double s = params.sigma;
  if (matches_imaginary_mass(params)) {
    if (params.H == 0.0) return {std::sqrt(-params.m_sq), BlowupCase::Static};
    if (params.H > 0.0 && s > -1.0) {
      if (s > 0.0) {
        // |m| >= sqrt(sigma) nH/2c, compared on squares
        if (-params.m_sq >= s * K * (1.0 - 1e-14)) {
          return {std::sqrt(-params.m_sq), BlowupCase::Expanding};
        }
      } else if (s == 0.0) {
        return {std::sqrt(-params.m_sq), BlowupCase::Expanding};
      } else {
        return {std::sqrt(-params.m_sq - s * K), BlowupCase::Expanding};
      }
    }
    if (params.H < 0.0 && s < -1.0 - 2.0 / params.n) {
      return {std::sqrt(-params.m_sq - s * K), BlowupCase::Contracting};
    }
  }
  if (user_N) {
    if (!(*user_N >= 0.0) || !std::isfinite(*user_N)) {
      throw DomainError("N must be finite and nonnegative");
    }
    return {*user_N, BlowupCase::Theorem};
  }
  throw CaseMismatchError("no closed-form blow-up case applies to H = " + std::to_string(params.H) +
                          ", sigma = " + std::to_string(s) + ", m_sq = " +
                          std::to_string(params.m_sq) + " and no N was supplied");
}

double minimal_damping_rate(const CosmologyParams& params) {
  const double inf = curved_mass_bounds(params).infimum;
  if (!std::isfinite(inf)) return kInf;
  return std::sqrt(std::max(0.0, -inf));
}

SupremumResult threshold_S_detail(const ConeData& cone, double lambda, double p, double theta,
                                  double N) {
  check_theta(theta);
  check_weight_inputs(lambda, p);
  if (!(N >= 0.0)) throw DomainError("N must be nonnegative");
  if (!std::isfinite(N)) return {kInf, 0.0};
  const auto log_f = [&](double t) {
    const double base = log_base_term(cone, lambda, p, theta, N, t);
    return base == kNegInf ? kNegInf : base + log_volume_weight(cone, t);
  };
  return log_supremum(log_f, cone.params, default_sup_window(cone.params, N));
}

double threshold_S(const ConeData& cone, double lambda, double p, double theta, double N) {
  return threshold_S_detail(cone, lambda, p, theta, N).value;
}

double critical_exponent_p0(int n, double sigma) {
  if (n < 1) throw DomainError("p0 needs n >= 1");
  if (!(sigma < -1.0 - 2.0 / n)) {
    throw DomainError("p0 is defined for sigma < -1 - 2/n, got sigma = " + std::to_string(sigma));
  }
  return p0_formula(n, sigma);
}

boost::rational<long long> critical_exponent_p0(int n, const boost::rational<long long>& sigma) {
  if (n < 1) throw DomainError("p0 needs n >= 1");
  if (!(sigma < boost::rational<long long>(-1) - boost::rational<long long>(2, n))) {
    throw DomainError("p0 is defined for sigma < -1 - 2/n");
  }
  return p0_formula(n, sigma);
}

PRange admissible_p_range(const CosmologyParams& params) {
  const DampingRate rate = damping_rate_N(params);
  const int n = params.n;
  const double s = params.sigma;
  PRange range;
  range.blowup_case = rate.blowup_case;
  switch (rate.blowup_case) {
    case BlowupCase::Static:
      range.upper = n == 1 ? kInf : (n + 1.0) / (n - 1.0);
      break;
    case BlowupCase::Expanding: {
      const double s1 = 1.0 + s;
      if (n == 1 && s >= 0.0) {
        range.upper = kInf;
      } else if (is_log_cone_branch(params)) {
        range.upper = n == 2 ? kInf : (n + 2.0) / (n - 2.0);
      } else if (s > -1.0 + 2.0 / n) {
        range.upper = ((n + 1.0) * s1 - 1.0) / ((n - 1.0) * s1 - 1.0);
      } else {
        range.upper = -(2.0 + s) / s;
      }
      break;
    }
    case BlowupCase::Contracting:
      range.upper = critical_exponent_p0(n, s);
      break;
    case BlowupCase::Theorem:
      break;
  }
  return range;
}

ThresholdReport check_hypotheses(const CosmologyParams& params, const InitialDataSummary& data,
                                 double lambda, double p, double theta,
                                 std::optional<double> user_N) {
  params.validate();
  check_theta(theta);
  check_weight_inputs(lambda, p);
  if (!(data.r0 > 0.0)) throw DomainError("r0 must be positive");

  ThresholdReport report;
  report.params = params;
  report.data = data;
  report.lambda = lambda;
  report.p = p;
  report.theta = theta;

  try {
    const DampingRate rate = damping_rate_N(params, user_N);
    report.N = rate.N;
    report.blowup_case = rate.blowup_case;
  } catch (const CaseMismatchError&) {
    report.N = minimal_damping_rate(params);
    report.blowup_case = BlowupCase::Theorem;
  }
  report.p_upper = report.blowup_case == BlowupCase::Theorem ? kInf : admissible_p_range(params).upper;

  const ConeData cone{data.r0, params};
  const MassBounds bounds = curved_mass_bounds(params);
  HypothesisFlags& f = report.flags;
  f.infinite_horizon = !std::isfinite(horizon_time(params));
  const double floor_tol = 1e-12 * std::max(1.0, std::abs(bounds.infimum));
  f.mass_floor = std::isfinite(bounds.infimum) && std::isfinite(report.N) &&
                 report.N * report.N + bounds.infimum >= -floor_tol;
  f.imaginary_mass = bounds.supremum <= 1e-12 * std::max(1.0, std::abs(params.m_sq));

  const SupremumResult S = threshold_S_detail(cone, lambda, p, theta, report.N);
  report.S = S.value;
  report.S_argmax = S.t_argmax;
  f.S_finite = std::isfinite(report.S);
  f.w0_above_S = f.S_finite && data.w0 > report.S;
  const double cNw0 = params.c * report.N * data.w0;
  f.w1_above_cNw0 = std::isfinite(cNw0) && data.w1 >= cNw0 - 1e-12 * std::abs(cNw0);

  report.scaling = scaling_hypotheses(cone, p);
  f.time_scaling = report.scaling.time_decay;
  f.space_scaling = report.scaling.space_decay;

  auto& why = report.reasons;
  if (!f.infinite_horizon) why.emplace_back("finite_horizon");
  if (!f.mass_floor) why.emplace_back("mass_floor_fails");
  if (!f.imaginary_mass) why.emplace_back("mass_not_imaginary");
  if (!f.S_finite) why.emplace_back("S_infinite");
  if (f.S_finite && !f.w0_above_S) why.emplace_back("w0_not_above_S");
  if (!f.w1_above_cNw0) why.emplace_back("w1_below_cNw0");
  if (!f.time_scaling) why.emplace_back("time_cutoff_scaling_fails");
  if (!f.space_scaling) why.emplace_back("space_cutoff_scaling_fails");
  if (!(p > report.p_lower && p < report.p_upper)) why.emplace_back("p_out_of_range");
  report.admissible = why.empty();
  return report;
}

PriorComparison compare_prior_conditions(const CosmologyParams& params,
                                         const InitialDataSummary& data, double lambda, double p,
                                         double theta, std::optional<double> user_N) {
  params.validate();
  check_theta(theta);
  check_weight_inputs(lambda, p);
  double N = 0.0;
  try {
    N = damping_rate_N(params, user_N).N;
  } catch (const CaseMismatchError&) {
    N = minimal_damping_rate(params);
  }
  const ConeData cone{data.r0, params};
  const int n = params.n;
  const double c = params.c;

  PriorComparison out;
  const SupremumResult S = threshold_S_detail(cone, lambda, p, theta, N);
  out.S = S.value;
  const double cNw0 = c * N * data.w0;
  out.current = std::isfinite(out.S) && data.w0 > out.S && data.w1 >= cNw0;

  // Earlier conditions: the weight (a r^2)^{n/2} is replaced by
  // max{(a0 r0^2)^{n/2}, (a r^2)^{n/2}}.
  const double log_initial = 0.5 * n * std::log(params.a0 * data.r0 * data.r0);
  const auto log_prior = [&](double t) {
    const double base = log_base_term(cone, lambda, p, theta, N, t);
    return base == kNegInf ? kNegInf : base + std::max(log_initial, log_volume_weight(cone, t));
  };
  if (std::isfinite(N)) {
    SupremumResult prior = log_supremum(log_prior, params, default_sup_window(params, N));
    double value = prior.value;
    if (std::isfinite(value)) {
      const double at_S = log_prior(S.t_argmax);
      if (at_S > kLogOverflow) {
        value = kInf;
      } else if (at_S != kNegInf) {
        value = std::max(value, std::exp(at_S));
      }
    }
    out.prior_sup = value;
  } else {
    out.prior_sup = kInf;
  }

  const double energy_bound = std::sqrt(2.0 * lambda * c * c * theta / (p + 1.0)) *
                              std::pow(data.w0, 0.5 * (p + 1.0)) /
                              std::pow(std::pow(unit_ball_volume(n), 2.0 / n) * params.a0 *
                                           data.r0 * data.r0,
                                       0.25 * n * (p - 1.0));
  out.prior_w1 = std::max(cNw0, energy_bound);
  bool radius_ok = true;
  if (params.H < 0.0 && params.sigma <= -1.0) {
    radius_ok = data.r0 <= 2.0 * c / (params.a0 * std::abs(params.H));
  }
  out.prior = std::isfinite(out.prior_sup) && data.w0 > out.prior_sup && data.w1 >= out.prior_w1 &&
              radius_ok;
  return out;
}

}  // namespace flrw
