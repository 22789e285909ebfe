#include "flrw/field_solver.hpp"

#include <algorithm>
#include <cmath>

#include "flrw/errors.hpp"
#include "flrw/thresholds.hpp"

namespace flrw {

namespace {

constexpr std::size_t kMinNodesInBump = 32;

// Cell volumes V_j and face areas A_{j+1/2} of the radial finite-volume
// grid, both without the n w_n factor.
struct Geometry {
  std::vector<double> volume;
  std::vector<double> face;  // face[j] sits between nodes j and j+1
};

Geometry build_geometry(int n, double dr, std::size_t size) {
  Geometry g;
  g.volume.assign(size, 0.0);
  g.face.assign(size, 0.0);
  const auto power = [](double x, int k) { return k == 0 ? 1.0 : std::pow(x, k); };
  for (std::size_t j = 0; j + 1 < size; ++j) {
    const double rf = (static_cast<double>(j) + 0.5) * dr;
    g.face[j] = power(rf, n - 1);
    const double inner = j == 0 ? 0.0 : (static_cast<double>(j) - 0.5) * dr;
    g.volume[j] = (power(rf, n) - power(inner, n)) / n;
  }
  return g;
}

void laplacian_kernel(const Geometry& g, const std::vector<double>& u, double dr,
                      std::vector<double>& out) {
  const std::size_t size = u.size();
  out.assign(size, 0.0);
  if (size < 2) return;
  double flux_left = 0.0;  // A_{-1/2} = 0 by symmetry
  for (std::size_t j = 0; j + 1 < size; ++j) {
    const double flux_right = g.face[j] * (u[j + 1] - u[j]) / dr;
    out[j] = (flux_right - flux_left) / g.volume[j];
    flux_left = flux_right;
  }
}

// Method-of-lines right-hand side with buffers reused across steps.
class Stepper {
 public:
  Stepper(const CosmologyParams& params, double lambda, double p, const FieldState& state)
      : params_(params),
        lambda_(lambda),
        p_(p),
        geometry_(build_geometry(state.n, state.dr, state.size())) {
    const std::size_t m = state.size();
    for (auto* buf : {&lap_, &ku1_, &ku2_, &ku3_, &ku4_, &kv1_, &kv2_, &kv3_, &kv4_, &tu_, &tv_}) {
      buf->assign(m, 0.0);
    }
  }

  void advance(FieldState& s, double dt) {
    const double t = s.t;
    accel(t, s.u, kv1_, s.dr);
    ku1_ = s.v;
    stage(s, 0.5 * dt, ku1_, kv1_);
    accel(t + 0.5 * dt, tu_, kv2_, s.dr);
    ku2_ = tv_;
    stage(s, 0.5 * dt, ku2_, kv2_);
    accel(t + 0.5 * dt, tu_, kv3_, s.dr);
    ku3_ = tv_;
    stage(s, dt, ku3_, kv3_);
    accel(t + dt, tu_, kv4_, s.dr);
    ku4_ = tv_;
    const double w = dt / 6.0;
    const std::size_t last = s.size() - 1;
    for (std::size_t j = 0; j < last; ++j) {
      s.u[j] += w * (ku1_[j] + 2.0 * ku2_[j] + 2.0 * ku3_[j] + ku4_[j]);
      s.v[j] += w * (kv1_[j] + 2.0 * kv2_[j] + 2.0 * kv3_[j] + kv4_[j]);
    }
    s.u[last] = 0.0;
    s.v[last] = 0.0;
    s.t = t + dt;
  }

  const Geometry& geometry() const noexcept { return geometry_; }

 private:
  void stage(const FieldState& s, double h, const std::vector<double>& ku,
             const std::vector<double>& kv) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      tu_[j] = s.u[j] + h * ku[j];
      tv_[j] = s.v[j] + h * kv[j];
    }
    tu_.back() = 0.0;
    tv_.back() = 0.0;
  }

  void accel(double t, const std::vector<double>& u, std::vector<double>& out, double dr) {
    laplacian_kernel(geometry_, u, dr, lap_);
    const double log_a = log_scale_factor(params_, t);
    const double inv_a2 = std::exp(-2.0 * log_a);
    const double m2 = curved_mass_sq(params_, t);
    const double c2 = params_.c * params_.c;
    const double forcing = lambda_ == 0.0 ? 0.0 : lambda_ * std::exp(-0.5 * params_.n * (p_ - 1.0) * log_a);
    const std::size_t last = u.size() - 1;
    for (std::size_t j = 0; j < last; ++j) {
      double f = inv_a2 * lap_[j] - m2 * u[j];
      if (forcing != 0.0 && u[j] != 0.0) f += forcing * std::pow(std::abs(u[j]), p_);
      out[j] = c2 * f;
    }
    out[last] = 0.0;
  }

  CosmologyParams params_;
  double lambda_;
  double p_;
  Geometry geometry_;
  std::vector<double> lap_, ku1_, ku2_, ku3_, ku4_, kv1_, kv2_, kv3_, kv4_, tu_, tv_;
};

double sup_norm(const std::vector<double>& u) {
  double sup = 0.0;
  for (const double x : u) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
    sup = std::max(sup, std::abs(x));
  }
  return sup;
}

}  // namespace

FieldState make_field(int n, const GridSpec& grid) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (!(grid.dr > 0.0) || !(grid.r_max > grid.dr)) throw DomainError("grid needs 0 < dr < r_max");
  auto cells = static_cast<std::size_t>(std::ceil(grid.r_max / grid.dr - 1e-9));
  if (cells % 2 == 1) ++cells;
  FieldState s;
  s.n = n;
  s.dr = grid.dr;
  s.r.resize(cells + 1);
  for (std::size_t j = 0; j <= cells; ++j) s.r[j] = static_cast<double>(j) * grid.dr;
  s.u.assign(cells + 1, 0.0);
  s.v.assign(cells + 1, 0.0);
  return s;
}

double bump_shape(double r, double r0) {
  const double s = r / r0;
  if (!(s < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - s * s));
}

FieldState init_field(const BumpSpec& bump, const GridSpec& grid, int n) {
  if (!(bump.r0 > 0.0)) throw DomainError("r0 must be positive");
  FieldState s = make_field(n, grid);
  const auto inside = static_cast<std::size_t>(
      std::count_if(s.r.begin(), s.r.end(), [&](double r) { return r < bump.r0; }));
  if (inside < kMinNodesInBump) {
    throw ResolutionError("bump of radius " + std::to_string(bump.r0) + " covers " +
                          std::to_string(inside) + " nodes; at least 32 are needed");
  }
  if (s.r_max() <= bump.r0) throw ResolutionError("grid ends inside the bump");
  for (std::size_t j = 0; j < s.size(); ++j) s.u[j] = bump_shape(s.r[j], bump.r0);
  double amplitude = bump.amplitude;
  if (bump.target_mean) amplitude = *bump.target_mean / spatial_mean(s);
  for (std::size_t j = 0; j < s.size(); ++j) {
    s.u[j] *= amplitude;
    s.v[j] = bump.velocity_ratio * s.u[j];
  }
  return s;
}

void radial_laplacian(const std::vector<double>& u, int n, double dr, std::vector<double>& out) {
  laplacian_kernel(build_geometry(n, dr, u.size()), u, dr, out);
  if (!out.empty()) out.back() = 0.0;
}

std::vector<double> radial_laplacian(const FieldState& state) {
  std::vector<double> out;
  radial_laplacian(state.u, state.n, state.dr, out);
  return out;
}

double radial_integral(const std::vector<double>& f, int n, double dr) {
  const std::size_t size = f.size();
  if (size < 2) return 0.0;
  const auto g = [&](std::size_t j) {
    const double r = static_cast<double>(j) * dr;
    return n == 1 ? f[j] : f[j] * std::pow(r, n - 1);
  };
  const std::size_t cells = size - 1;
  const std::size_t even = cells - cells % 2;
  double sum = 0.0;
  for (std::size_t j = 0; j + 2 <= even; j += 2) sum += g(j) + 4.0 * g(j + 1) + g(j + 2);
  sum *= dr / 3.0;
  if (even != cells) sum += 0.5 * dr * (g(cells - 1) + g(cells));
  return n * unit_ball_volume(n) * sum;
}

double spatial_mean(const FieldState& state) { return radial_integral(state.u, state.n, state.dr); }

double cfl_dt(const CosmologyParams& params, const FieldState& state, double t_end, double safety) {
  const double dt = safety * state.dr * scale_factor(params, state.t) / params.c;
  return std::min(dt, std::max(0.0, t_end - state.t));
}

FieldState step(const CosmologyParams& params, double lambda, double p, const FieldState& state,
                double dt) {
  if (state.diverged) throw DomainError("cannot step a diverged state");
  FieldState next = state;
  Stepper stepper(params, lambda, p, state);
  stepper.advance(next, dt);
  if (!std::isfinite(sup_norm(next.u)) || sup_norm(next.u) > 1e8) next.diverged = true;
  return next;
}

double energy(const FieldState& state, const CosmologyParams& params, double lambda) {
  if (lambda != 0.0 || params.H != 0.0) {
    throw MisuseError("energy is only conserved for lambda = 0 and H = 0");
  }
  const Geometry g = build_geometry(state.n, state.dr, state.size());
  const double inv_c2 = 1.0 / (params.c * params.c);
  const double inv_a2 = 1.0 / (params.a0 * params.a0);
  double kinetic = 0.0;
  double gradient = 0.0;
  for (std::size_t j = 0; j + 1 < state.size(); ++j) {
    kinetic += g.volume[j] * (inv_c2 * state.v[j] * state.v[j] + params.m_sq * state.u[j] * state.u[j]);
    const double du = state.u[j + 1] - state.u[j];
    gradient += g.face[j] * du * du / state.dr;
  }
  return 0.5 * state.n * unit_ball_volume(state.n) * (kinetic + inv_a2 * gradient);
}

double support_radius(const FieldState& state, double rel_threshold) {
  const double sup = sup_norm(state.u);
  if (!(sup > 0.0)) return 0.0;
  const double level = rel_threshold * sup;
  for (std::size_t j = state.size(); j-- > 0;) {
    if (std::abs(state.u[j]) > level) return state.r[j];
  }
  return 0.0;
}

Diagnostics run_until(const ConeData& cone, double lambda, double p, FieldState& state,
                      double t_end, const RunOptions& options) {
  const CosmologyParams& params = cone.params;
  params.validate();
  const double T0 = horizon_time(params);
  bool capped = false;
  if (std::isfinite(T0) && t_end >= (1.0 - 1e-9) * T0) {
    t_end = (1.0 - 1e-9) * T0;
    capped = true;
  }
  if (!(t_end >= state.t)) throw DomainError("t_end lies before the current time");
  if (options.check_cone && state.r_max() < cone_radius(cone, t_end) + 10.0 * state.dr) {
    throw DomainError("grid radius " + std::to_string(state.r_max()) +
                      " does not contain the light cone r(t_end) + 10 dr = " +
                      std::to_string(cone_radius(cone, t_end) + 10.0 * state.dr));
  }

  Diagnostics diag;
  diag.n = state.n;
  diag.dr = state.dr;
  diag.r0 = cone.r0;
  diag.r = state.r;
  const bool conserved = lambda == 0.0 && params.H == 0.0;
  const int n = state.n;
  std::vector<double> abs_u(state.size());

  const auto mass_density = [&](const FieldState& s) {
    std::transform(s.u.begin(), s.u.end(), abs_u.begin(), [](double x) { return std::abs(x); });
    return std::abs(curved_mass_sq(params, s.t)) * radial_integral(abs_u, n, s.dr);
  };
  double accumulated = 0.0;
  double density = mass_density(state);

  const auto record = [&](const FieldState& s) {
    DiagnosticSample d;
    d.t = s.t;
    d.mean = spatial_mean(s);
    d.sup = sup_norm(s.u);
    if (conserved) d.energy = energy(s, params);
    d.support_radius = support_radius(s, options.support_threshold);
    d.cone_radius = cone_radius(cone, s.t);
    d.mass_integral = accumulated;
    if (options.check_cone && !s.diverged && d.support_radius > d.cone_radius + 2.0 * s.dr) {
      throw ConeViolationError("numerical support " + std::to_string(d.support_radius) +
                               " exceeds r(t) + 2 dr = " +
                               std::to_string(d.cone_radius + 2.0 * s.dr) + " at t = " +
                               std::to_string(s.t));
    }
    diag.samples.push_back(d);
  };
  const auto snapshot = [&](const FieldState& s) {
    if (options.keep_snapshots) diag.snapshots.push_back({s.t, s.u, s.v});
  };

  record(state);
  snapshot(state);
  Stepper stepper(params, lambda, p, state);
  double next_output = state.t + options.output_interval;
  diag.stop_reason = capped ? "horizon" : "t_end";

  while (state.t < t_end) {
    // Near a crunch the CFL step shrinks with a(t) and the conformal time
    // to T0 may diverge, so the run stops once the scale factor collapses.
    if (std::isfinite(T0) && scale_factor(params, state.t) < kCollapsedScale * params.a0) {
      diag.stop_reason = "horizon";
      break;
    }
    double dt = cfl_dt(params, state, t_end, options.safety);
    if (!(dt > 0.0)) break;
    const bool last = dt >= t_end - state.t;
    stepper.advance(state, dt);
    if (last) state.t = t_end;
    ++diag.steps;

    const double sup = sup_norm(state.u);
    if (!std::isfinite(sup) || sup > options.divergence_guard) {
      state.diverged = true;
      diag.diverged = true;
      diag.stop_reason = "divergence";
      record(state);
      break;
    }
    const double next_density = mass_density(state);
    accumulated += 0.5 * dt * (density + next_density);
    density = next_density;
    snapshot(state);
    if (options.output_interval <= 0.0 || state.t >= next_output || state.t >= t_end) {
      record(state);
      next_output += options.output_interval;
    }
  }
  diag.t_final = state.t;
  return diag;
}

}  // namespace flrw
