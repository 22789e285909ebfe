#include "flrw/serialize.hpp"

#include <cmath>

namespace flrw {

using nlohmann::json;

json number_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json to_json(const CosmologyParams& p) {
  return {{"n", p.n},
          {"c", number_json(p.c)},
          {"m_sq", number_json(p.m_sq)},
          {"H", number_json(p.H)},
          {"sigma", number_json(p.sigma)},
          {"a0", number_json(p.a0)}};
}

json to_json(const MassBounds& b) {
  return {{"case", roman_label(b.label)},
          {"lower", number_json(b.lower)},
          {"upper", number_json(b.upper)},
          {"lower_attained", b.lower_attained},
          {"upper_attained", b.upper_attained},
          {"infimum", number_json(b.infimum)},
          {"supremum", number_json(b.supremum)}};
}

json to_json(const ScalingFit& f) {
  return {{"kind", to_string(f.kind)},
          {"slope", number_json(f.slope)},
          {"slope_error", number_json(f.slope_error)},
          {"intercept", number_json(f.intercept)},
          {"residual", number_json(f.residual)},
          {"log_power", number_json(f.log_power)},
          {"exp_rate", number_json(f.exp_rate)},
          {"exp_residual", number_json(f.exp_residual)},
          {"points", f.R.size()}};
}

json to_json(const AnalyticLadder& l) {
  return {{"applicable", l.applicable},
          {"label", l.label},
          {"time_kind", to_string(l.time_kind)},
          {"time_exponent", number_json(l.time_exponent)},
          {"time_log_power", number_json(l.time_log_power)},
          {"space_kind", to_string(l.space_kind)},
          {"space_exponent", number_json(l.space_exponent)},
          {"gamma", number_json(l.gamma)},
          {"time_decay", l.time_decay},
          {"space_decay", l.space_decay}};
}

json to_json(const ScalingVerdict& v) {
  return {{"time_decay", v.time_decay},
          {"space_decay", v.space_decay},
          {"disagreement", v.disagreement},
          {"truncated", v.truncated},
          {"analytic", to_json(v.analytic)},
          {"time_fit", to_json(v.time_fit)},
          {"space_fit", to_json(v.space_fit)}};
}

json to_json(const ThresholdReport& r) {
  json out = to_json(r.params);
  out["r0"] = number_json(r.data.r0);
  out["w0"] = number_json(r.data.w0);
  out["w1"] = number_json(r.data.w1);
  out["lambda"] = number_json(r.lambda);
  out["p"] = number_json(r.p);
  out["theta"] = number_json(r.theta);
  out["N"] = number_json(r.N);
  out["S"] = number_json(r.S);
  out["S_argmax"] = number_json(r.S_argmax);
  out["p_lower"] = number_json(r.p_lower);
  out["p_upper"] = number_json(r.p_upper);
  out["case_label"] = to_string(r.blowup_case);
  out["regime"] = to_string(classify_regime(r.params));
  const HypothesisFlags& f = r.flags;
  out["flags"] = {{"infinite_horizon", f.infinite_horizon},
                  {"mass_floor", f.mass_floor},
                  {"imaginary_mass", f.imaginary_mass},
                  {"S_finite", f.S_finite},
                  {"w0_above_S", f.w0_above_S},
                  {"w1_above_cNw0", f.w1_above_cNw0},
                  {"time_scaling", f.time_scaling},
                  {"space_scaling", f.space_scaling},
                  {"mass_integral", kMassIntegralStatus}};
  out["verdict"] = r.admissible ? "admissible" : "inadmissible";
  out["reasons"] = r.reasons;
  out["scaling"] = to_json(r.scaling);
  return out;
}

json to_json(const ComparisonReport& r) {
  return {{"exponential_lower_bound", r.exponential_lower_bound},
          {"mass_gap", r.mass_gap},
          {"differential_inequality", r.differential_inequality},
          {"slope_bound", r.slope_bound},
          {"samples_checked", r.samples_checked},
          {"first_failure", r.first_failure}};
}

json to_json(const WeakIdentityTerms& t) {
  return {{"I", number_json(t.I)},   {"II", number_json(t.II)}, {"III", number_json(t.III)},
          {"IV", number_json(t.IV)}, {"V", number_json(t.V)},   {"residual", number_json(t.residual)}};
}

json trajectory_metadata(const Trajectory& tr, const OdeProblem& pr) {
  json out = {{"status", to_string(tr.status)},
              {"blowup", tr.blowup},
              {"t_end", number_json(pr.t_end)},
              {"p", number_json(pr.p)},
              {"c", number_json(pr.c)},
              {"w0", number_json(pr.w0)},
              {"w1", number_json(pr.w1)},
              {"N", number_json(pr.N)},
              {"theta", number_json(pr.theta)},
              {"rtol", number_json(pr.rtol)},
              {"accepted_steps", tr.accepted_steps},
              {"rejected_steps", tr.rejected_steps},
              {"final_dt", number_json(tr.final_dt)},
              {"error_estimate", number_json(tr.error_estimate)},
              {"samples", tr.samples.size()}};
  out["t_star"] = tr.t_star ? number_json(*tr.t_star) : json(nullptr);
  out["t_star_bracket"] = number_json(tr.t_star_bracket);
  return out;
}

json run_metadata(const Diagnostics& d) {
  json out = {{"n", d.n},
              {"dr", number_json(d.dr)},
              {"r0", number_json(d.r0)},
              {"nodes", d.r.size()},
              {"steps", d.steps},
              {"t_final", number_json(d.t_final)},
              {"diverged", d.diverged},
              {"stop_reason", d.stop_reason},
              {"samples", d.samples.size()}};
  if (!d.samples.empty()) {
    const DiagnosticSample& last = d.samples.back();
    out["final_mean"] = number_json(last.mean);
    out["final_sup"] = number_json(last.sup);
    out["mass_integral"] = number_json(last.mass_integral);
  }
  return out;
}

}  // namespace flrw
