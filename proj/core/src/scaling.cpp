#include "flrw/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "flrw/cutoff.hpp"
#include "flrw/errors.hpp"
#include "flrw/quadrature.hpp"
#include "flrw/thresholds.hpp"

namespace flrw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Window {
  double lo = 0.0;
  double hi = 0.0;
  bool truncated = false;
};

Window clip_to_horizon(const CosmologyParams& p, double lo, double hi) {
  Window w{lo, hi, false};
  const double T0 = horizon_time(p);
  if (std::isfinite(T0) && hi >= T0) {
    w.hi = (1.0 - 1e-12) * T0;
    w.truncated = true;
  }
  return w;
}

// Integrates exp(log_f) over [lo, hi], splitting at the interior points
// where the integrand has a kink.
double log_integrate_split(const std::function<double(double)>& log_f, double lo, double hi,
                           std::vector<double> kinks) {
  if (!(hi > lo)) return kNegInf;
  std::vector<double> cuts{lo};
  std::sort(kinks.begin(), kinks.end());
  for (const double k : kinks) {
    if (k > cuts.back() && k < hi) cuts.push_back(k);
  }
  cuts.push_back(hi);
  double total = kNegInf;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total = quad::log_add(total, quad::log_integrate(log_f, cuts[i], cuts[i + 1]));
  }
  return total;
}

// Time at which the cone reaches radius rho, if ever.
std::optional<double> reach_time(const ConeData& cone, double rho) {
  return cone_entry_time(cone, 2.0 * rho);
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
  double slope_error = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto m = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    rss += r * r;
  }
  fit.rms = std::sqrt(rss / m);
  fit.slope_error = x.size() > 2 ? std::sqrt(rss / (m - 2.0) / sxx) : 0.0;
  return fit;
}

}  // namespace

double ScalingIntegral::value() const { return std::exp(log_value); }

ScalingIntegral II_prime(const ConeData& cone, double R) {
  if (!(R > 0.0)) throw DomainError("II' needs R > 0");
  const CosmologyParams& p = cone.params;
  const Window w = clip_to_horizon(p, 0.5 * R, R);
  const double log_omega = std::log(unit_ball_volume(p.n));
  const double log_R = std::log(R);
  const auto log_f = [&](double t) {
    const double r = cone_radius(cone, t);
    return log_omega + p.n * std::min(log_R, std::log(r)) + 0.5 * p.n * log_scale_factor(p, t);
  };
  std::vector<double> kinks;
  if (const auto t_full = reach_time(cone, R)) kinks.push_back(*t_full);
  return {log_integrate_split(log_f, w.lo, w.hi, kinks), w.truncated};
}

ScalingIntegral III_prime(const ConeData& cone, double R, double p_exp) {
  if (!(R > 0.0)) throw DomainError("III' needs R > 0");
  const CosmologyParams& p = cone.params;
  const double pp = holder_conjugate(p_exp);
  const double a_power = 0.5 * p.n - 2.0 * pp;
  Window w = clip_to_horizon(p, 0.0, R);
  const auto t_enter = reach_time(cone, 0.5 * R);
  if (!t_enter || *t_enter >= w.hi) return {kNegInf, w.truncated};
  w.lo = *t_enter;
  const double log_omega = std::log(unit_ball_volume(p.n));
  const double log_R = std::log(R);
  const double log_half = std::log(0.5 * R);
  const auto log_f = [&](double t) {
    const double outer = std::min(log_R, std::log(cone_radius(cone, t)));
    if (!(outer > log_half)) return kNegInf;
    // log(outer^n - (R/2)^n)
    const double shell = p.n * outer + std::log(-std::expm1(p.n * (log_half - outer)));
    return log_omega + shell + a_power * log_scale_factor(p, t);
  };
  std::vector<double> kinks;
  if (const auto t_full = reach_time(cone, R)) kinks.push_back(*t_full);
  return {log_integrate_split(log_f, w.lo, w.hi, kinks), w.truncated};
}

std::string_view to_string(GrowthKind kind) noexcept {
  switch (kind) {
    case GrowthKind::PowerLaw: return "power-law";
    case GrowthKind::Exponential: return "exponential";
    case GrowthKind::Vanishing: return "vanishing";
  }
  return "unknown";
}

std::vector<double> default_R_grid(double r0, double c) {
  const double scale = std::max({1.0, r0, 1.0 / c});
  std::vector<double> grid;
  for (int k = 6; k <= 16; ++k) grid.push_back(scale * std::ldexp(1.0, k));
  return grid;
}

ScalingFit scaling_exponent(const std::function<double(double)>& log_integral,
                            std::span<const double> R_grid, double log_power) {
  if (R_grid.size() < 6) throw DomainError("scaling fit needs at least 6 R values");
  const auto [lo, hi] = std::minmax_element(R_grid.begin(), R_grid.end());
  if (!(*lo > 0.0) || *hi / *lo < 999.999) {
    throw DomainError("scaling fit needs R values spanning three decades");
  }
  ScalingFit fit;
  fit.log_power = log_power;
  fit.R.assign(R_grid.begin(), R_grid.end());
  fit.log_values.reserve(R_grid.size());
  for (const double R : R_grid) fit.log_values.push_back(log_integral(R));

  if (fit.log_values.back() == kNegInf) {
    fit.kind = GrowthKind::Vanishing;
    fit.slope = kNegInf;
    fit.exp_rate = kNegInf;
    return fit;
  }
  std::vector<double> xs_log, xs_lin, ys_pow, ys_lin;
  for (std::size_t i = 0; i < fit.R.size(); ++i) {
    if (!std::isfinite(fit.log_values[i])) continue;
    const double lr = std::log(fit.R[i]);
    xs_log.push_back(lr);
    xs_lin.push_back(fit.R[i]);
    ys_pow.push_back(fit.log_values[i] - log_power * std::log(lr));
    ys_lin.push_back(fit.log_values[i]);
  }
  if (xs_log.size() < 3) {
    fit.kind = GrowthKind::Vanishing;
    fit.slope = kNegInf;
    return fit;
  }
  const LineFit pow_fit = least_squares(xs_log, ys_pow);
  const LineFit exp_fit = least_squares(xs_lin, ys_lin);
  fit.slope = pow_fit.slope;
  fit.slope_error = pow_fit.slope_error;
  fit.intercept = pow_fit.intercept;
  fit.residual = pow_fit.rms;
  fit.exp_rate = exp_fit.slope;
  fit.exp_residual = exp_fit.rms;
  const bool exponential = fit.residual > 0.05 && fit.exp_residual < 0.5 * fit.residual;
  fit.kind = exponential ? GrowthKind::Exponential : GrowthKind::PowerLaw;
  return fit;
}

bool limit_vanishes(const ScalingFit& fit, double p_prime) {
  switch (fit.kind) {
    case GrowthKind::Vanishing: return true;
    case GrowthKind::Exponential: return fit.exp_rate < 0.0;
    case GrowthKind::PowerLaw: {
      const double margin = 0.02 + 2.0 * fit.slope_error;
      return fit.slope < 2.0 * p_prime - margin;
    }
  }
  return false;
}

AnalyticLadder analytic_scaling_ladder(const CosmologyParams& params, double p) {
  const double pp = holder_conjugate(p);
  const int n = params.n;
  const double s1 = 1.0 + params.sigma;
  AnalyticLadder ladder;
  ladder.applicable = true;
  const auto power_decays = [&](double exponent) { return exponent < 2.0 * pp; };

  switch (classify_regime(params)) {
    case Regime::Minkowski:
      ladder.label = "static";
      ladder.time_exponent = ladder.space_exponent = n + 1.0;
      ladder.time_decay = ladder.space_decay = power_decays(n + 1.0);
      return ladder;

    case Regime::ExpandingPolynomial:
      // The cone grows sublinearly, so the annulus is never reached.
      ladder.space_kind = GrowthKind::Vanishing;
      ladder.space_exponent = -kInf;
      ladder.space_decay = true;
      if (is_log_cone_branch(params)) {
        ladder.label = "expanding-log-cone";
        ladder.time_exponent = 1.0 + 1.0 / s1;
        ladder.time_log_power = n;
      } else if (params.sigma > -1.0 + 2.0 / n) {
        ladder.label = "expanding-growing-cone";
        ladder.time_exponent = 1.0 + n - 1.0 / s1;
      } else {
        ladder.label = "expanding-bounded-cone";
        ladder.time_exponent = 1.0 + 1.0 / s1;
      }
      ladder.time_decay = power_decays(ladder.time_exponent);
      return ladder;

    case Regime::DeSitterExpanding:
      ladder.label = "de-sitter-expanding";
      ladder.time_kind = GrowthKind::Exponential;
      ladder.time_exponent = kInf;
      ladder.time_decay = false;
      ladder.space_kind = GrowthKind::Vanishing;
      ladder.space_exponent = -kInf;
      ladder.space_decay = true;
      return ladder;

    case Regime::DeSitterContracting: {
      ladder.label = "de-sitter-contracting";
      ladder.time_kind = GrowthKind::Exponential;
      ladder.time_exponent = -kInf;
      ladder.time_decay = true;
      const double a_power = 0.5 * n - 2.0 * pp;
      if (a_power > 0.0) {
        ladder.space_exponent = 0.5 * n + 2.0 * pp;
      } else if (a_power == 0.0) {
        ladder.space_exponent = n + 1.0;
      } else {
        ladder.space_kind = GrowthKind::Exponential;
        ladder.space_exponent = kInf;
      }
      ladder.space_decay = false;
      return ladder;
    }

    case Regime::Contracting: {
      ladder.label = "contracting";
      // a(t) ~ t^{2/n(1+sigma)} decays, the cone grows superlinearly and
      // reaches R/2 at t_R ~ R^kappa with kappa = n(1+sigma)/(n(1+sigma)-2).
      const double kappa = n * s1 / (n * s1 - 2.0);
      ladder.time_exponent = n + 1.0 + 1.0 / s1;
      ladder.time_decay = power_decays(ladder.time_exponent);
      const double gamma = (1.0 - 4.0 * pp / n) / s1;
      ladder.gamma = gamma;
      if (std::abs(gamma + 1.0) < 1e-12) {
        ladder.space_exponent = n;
        ladder.space_decay = n < 2.0 * pp;  // R^n log R
      } else if (gamma > -1.0) {
        ladder.space_exponent = n + gamma + 1.0;
        ladder.space_decay = power_decays(ladder.space_exponent);
      } else {
        ladder.space_exponent = n + kappa * (gamma + 1.0);
        ladder.space_decay = power_decays(ladder.space_exponent);
      }
      return ladder;
    }

    case Regime::BigRip:
    case Regime::BigCrunch:
      ladder.applicable = false;
      ladder.label = "finite-horizon";
      return ladder;
  }
  return ladder;
}

ScalingVerdict scaling_hypotheses(const ConeData& cone, double p, std::span<const double> R_grid) {
  std::vector<double> grid(R_grid.begin(), R_grid.end());
  if (grid.empty()) grid = default_R_grid(cone.r0, cone.params.c);
  const double pp = holder_conjugate(p);

  ScalingVerdict verdict;
  verdict.analytic = analytic_scaling_ladder(cone.params, p);
  const double log_power = verdict.analytic.applicable ? verdict.analytic.time_log_power : 0.0;

  bool truncated = false;
  verdict.time_fit = scaling_exponent(
      [&](double R) {
        const ScalingIntegral v = II_prime(cone, R);
        truncated = truncated || v.truncated;
        return v.log_value;
      },
      grid, log_power);
  verdict.space_fit = scaling_exponent(
      [&](double R) {
        const ScalingIntegral v = III_prime(cone, R, p);
        truncated = truncated || v.truncated;
        return v.log_value;
      },
      grid);
  verdict.truncated = truncated;
  verdict.time_decay = limit_vanishes(verdict.time_fit, pp);
  verdict.space_decay = limit_vanishes(verdict.space_fit, pp);
  verdict.disagreement = verdict.analytic.applicable &&
                         (verdict.time_decay != verdict.analytic.time_decay ||
                          verdict.space_decay != verdict.analytic.space_decay);
  return verdict;
}

}  // namespace flrw
