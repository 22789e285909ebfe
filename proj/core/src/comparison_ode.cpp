#include "flrw/comparison_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "flrw/errors.hpp"
#include "flrw/quadrature.hpp"
#include "flrw/thresholds.hpp"

namespace flrw {

namespace {

using State = std::array<double, 2>;  // (w, w')

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

State rhs(const OdeProblem& pr, double t, const State& y) {
  const double c2sq = pr.c * pr.c;
  const double force = pr.weight(t) * std::pow(std::abs(y[0]), pr.p) - pr.mass_sq(t) * y[0];
  return {y[1], c2sq * force};
}

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
  State out = y;
  for (const auto& [coef, k] : terms) {
    out[0] += h * coef * (*k)[0];
    out[1] += h * coef * (*k)[1];
  }
  return out;
}

bool finite(const State& y) { return std::isfinite(y[0]) && std::isfinite(y[1]); }

double error_norm(const State& err, const State& y0, const State& y1, const OdeProblem& pr) {
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double scale = pr.atol + pr.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = err[i] / scale;
    sum += r * r;
  }
  return std::sqrt(0.5 * sum);
}

double initial_step(const OdeProblem& pr, const State& y, const State& f) {
  double d0 = 0.0;
  double d1 = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double scale = pr.atol + pr.rtol * std::abs(y[i]);
    d0 = std::max(d0, std::abs(y[i]) / scale);
    d1 = std::max(d1, std::abs(f[i]) / scale);
  }
  const double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  return std::min(h, pr.t_end);
}

void check_problem(const OdeProblem& pr) {
  if (!pr.mass_sq || !pr.weight) throw DomainError("ODE problem needs M^2 and b");
  if (!(pr.p > 1.0)) throw DomainError("ODE problem needs p > 1");
  if (!(pr.c > 0.0)) throw DomainError("ODE problem needs c > 0");
  if (!(pr.t_end > 0.0) || !std::isfinite(pr.t_end)) throw DomainError("t_end must be positive");
  if (!(pr.rtol > 0.0) || !(pr.atol > 0.0)) throw DomainError("tolerances must be positive");
}

}  // namespace

std::string_view to_string(OdeStatus status) noexcept {
  switch (status) {
    case OdeStatus::Completed: return "completed";
    case OdeStatus::BlowUp: return "blow-up";
    case OdeStatus::StiffnessFailure: return "stiffness-failure";
  }
  return "unknown";
}

OdeProblem make_comparison_problem(const ConeData& cone, double lambda, double p, double theta,
                                   double N, double w0, double w1, double t_end) {
  OdeProblem pr;
  pr.c = cone.params.c;
  pr.p = p;
  pr.w0 = w0;
  pr.w1 = w1;
  pr.N = N;
  pr.theta = theta;
  const double T0 = horizon_time(cone.params);
  pr.t_end = std::isfinite(T0) ? std::min(t_end, (1.0 - 1e-9) * T0) : t_end;
  pr.mass_sq = [params = cone.params](double t) { return curved_mass_sq(params, t); };
  pr.weight = [cone, lambda, p](double t) { return nonlinearity_weight(cone, lambda, p, t); };
  return pr;
}

OdeProblem constant_problem(double c, double mass_sq, double weight, double p, double w0,
                            double w1, double t_end) {
  OdeProblem pr;
  pr.c = c;
  pr.p = p;
  pr.w0 = w0;
  pr.w1 = w1;
  pr.t_end = t_end;
  pr.mass_sq = [mass_sq](double) { return mass_sq; };
  pr.weight = [weight](double) { return weight; };
  return pr;
}

namespace {

// A collapsing step reads as blow-up once w is past the guard, or once the
// power-law extrapolation puts the singularity within 1e-6 max(1, t) while
// w has grown well beyond its initial size (large p reaches the step floor
// before w reaches the guard).
bool near_singularity(const OdeProblem& pr, double t, const State& y) {
  if (std::abs(y[0]) > kDivergenceGuard) return true;
  if (!(y[0] * y[1] > 0.0) || std::abs(y[0]) < 1e3 * std::max(1.0, std::abs(pr.w0))) return false;
  const double remaining = 2.0 / (pr.p - 1.0) * y[0] / y[1];
  return remaining < 1e-6 * std::max(1.0, t);
}

}  // namespace

Trajectory integrate_comparison(const OdeProblem& pr) {
  check_problem(pr);
  Trajectory tr;
  double t = 0.0;
  State y{pr.w0, pr.w1};
  tr.samples.push_back({t, y[0], y[1]});
  State k1 = rhs(pr, t, y);
  double h = initial_step(pr, y, k1);
  double previous_t = 0.0;

  while (t < pr.t_end) {
    h = std::min(h, pr.t_end - t);
    const double floor = std::max(kStepFloor, 16.0 * std::numeric_limits<double>::epsilon() * t);
    if (h < floor) {
      tr.status = near_singularity(pr, t, y) ? OdeStatus::BlowUp : OdeStatus::StiffnessFailure;
      break;
    }
    const State k2 = rhs(pr, t + c2 * h, axpy(y, h, {{a21, &k1}}));
    const State k3 = rhs(pr, t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    const State k4 = rhs(pr, t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 =
        rhs(pr, t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = rhs(pr, t + h,
                         axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State y_new =
        axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State k7 = rhs(pr, t + h, y_new);
    State err{};
    for (int i = 0; i < 2; ++i) {
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    }

    if (!finite(y_new) || !finite(k7) || !finite(err)) {
      if (near_singularity(pr, t, y)) {
        tr.status = OdeStatus::BlowUp;
        break;
      }
      h *= kMinFactor;
      ++tr.rejected_steps;
      continue;
    }
    const double e = error_norm(err, y, y_new, pr);
    if (e <= 1.0) {
      const double growth = y[0] != 0.0 ? std::max(1.0, std::abs(y_new[0] / y[0])) : 1.0;
      tr.error_estimate = tr.error_estimate * growth + std::abs(err[0]);
      previous_t = t;
      t += h;
      y = y_new;
      k1 = k7;
      tr.samples.push_back({t, y[0], y[1]});
      ++tr.accepted_steps;
      tr.final_dt = h;
      const double factor = e == 0.0 ? kMaxFactor : kSafety * std::pow(e, -0.2);
      h *= std::clamp(factor, kMinFactor, kMaxFactor);
    } else {
      ++tr.rejected_steps;
      h *= std::max(kMinFactor, kSafety * std::pow(e, -0.2));
    }
  }

  if (tr.status == OdeStatus::BlowUp) {
    tr.blowup = true;
    const OdeSample& last = tr.samples.back();
    // Near a power-law singularity w ~ (t* - t)^{-2/(p-1)}, so
    // t* - t = (2/(p-1)) w / w'.
    double t_star = last.t;
    if (last.wdot != 0.0 && std::isfinite(last.wdot)) {
      t_star += std::max(0.0, 2.0 / (pr.p - 1.0) * last.w / last.wdot);
    }
    tr.t_star = t_star;
    tr.t_star_bracket = last.t - previous_t;
  }
  return tr;
}

ComparisonReport verify_comparison_properties(const Trajectory& tr, const OdeProblem& pr) {
  check_problem(pr);
  const double cN = pr.c * pr.N;
  const auto threshold = [&](double t) {
    const double gap = pr.N * pr.N + pr.mass_sq(t);
    if (!(gap > 0.0)) return 0.0;
    return std::exp(-cN * t) * std::pow(gap / ((1.0 - pr.theta) * pr.weight(t)), 1.0 / (pr.p - 1.0));
  };
  double sup = threshold(0.0);
  for (const double t : quad::log_spaced(pr.t_end * 1e-10, pr.t_end, 4096)) {
    sup = std::max(sup, threshold(t));
  }
  for (const OdeSample& s : tr.samples) sup = std::max(sup, threshold(s.t));
  if (!(pr.w0 > sup)) {
    throw PreconditionError("w0 > S", "w0 = " + std::to_string(pr.w0) +
                                          " does not exceed the threshold supremum " +
                                          std::to_string(sup));
  }
  const double cNw0 = cN * pr.w0;
  if (pr.w1 < cNw0 - 1e-12 * std::abs(cNw0)) {
    throw PreconditionError("w1 >= cNw0", "w1 = " + std::to_string(pr.w1) + " is below cNw0 = " +
                                              std::to_string(cNw0));
  }

  ComparisonReport report;
  const auto fail = [&](bool& flag, const char* name, const OdeSample& s) {
    if (flag) {
      flag = false;
      if (report.first_failure.empty()) {
        report.first_failure = std::string(name) + " at t = " + std::to_string(s.t);
      }
    }
  };
  const double N2 = pr.N * pr.N;
  for (const OdeSample& s : tr.samples) {
    if (!std::isfinite(s.w) || !std::isfinite(s.wdot)) continue;
    const double tol = 1e-8 * (1.0 + std::abs(s.w));
    const double b = pr.weight(s.t);
    const double m2 = pr.mass_sq(s.t);
    const double wp1 = std::pow(std::abs(s.w), pr.p - 1.0);
    if (s.w < pr.w0 * std::exp(cN * s.t) - tol) fail(report.exponential_lower_bound, "w >= w0 e^{cNt}", s);
    if (!((1.0 - pr.theta) * b * wp1 - m2 > N2 - tol)) fail(report.mass_gap, "mass gap", s);
    // c^{-2} w'' from the equation itself
    const double wdd_over_c2 = b * wp1 * std::abs(s.w) - m2 * s.w;
    const double lhs = wdd_over_c2 - N2 * s.w - pr.theta * b * wp1 * std::abs(s.w);
    if (lhs < -tol) fail(report.differential_inequality, "differential inequality", s);
    if (s.wdot < pr.w1 - tol) fail(report.slope_bound, "w' >= w1", s);
    ++report.samples_checked;
  }
  return report;
}

BlowupEstimate blowup_time_estimate(const OdeProblem& problem) {
  const Trajectory loose = integrate_comparison(problem);
  if (!loose.blowup) {
    throw NoBlowupError("the comparison ODE reached t_end = " + std::to_string(problem.t_end) +
                        " without blow-up");
  }
  OdeProblem tight = problem;
  tight.rtol /= 8.0;
  tight.atol /= 8.0;
  const Trajectory fine = integrate_comparison(tight);
  if (!fine.blowup) {
    throw NoBlowupError("the comparison ODE lost its blow-up under a tighter tolerance");
  }
  BlowupEstimate est;
  est.t_star = *fine.t_star;
  est.error = std::max({fine.t_star_bracket, loose.t_star_bracket, std::abs(*loose.t_star - *fine.t_star)});
  return est;
}

double ClosedFormSolution::w(double t) const {
  return w0 * std::pow(1.0 - kappa * t, -2.0 / (p - 1.0));
}

double ClosedFormSolution::wdot(double t) const {
  const double e = -2.0 / (p - 1.0);
  return -e * kappa * w0 * std::pow(1.0 - kappa * t, e - 1.0);
}

ClosedFormSolution closed_form_oracle(double p, double b, double w0, double c) {
  if (!(p > 1.0) || !(b > 0.0) || !(w0 > 0.0) || !(c > 0.0)) {
    throw DomainError("closed-form solution needs p > 1, b > 0, w0 > 0, c > 0");
  }
  ClosedFormSolution sol;
  sol.p = p;
  sol.w0 = w0;
  const double root = std::sqrt(2.0 * b / (p + 1.0));
  sol.kappa = c * 0.5 * (p - 1.0) * root * std::pow(w0, 0.5 * (p - 1.0));
  sol.t_star = 1.0 / sol.kappa;
  sol.w1 = c * root * std::pow(w0, 0.5 * (p + 1.0));
  return sol;
}

}  // namespace flrw
