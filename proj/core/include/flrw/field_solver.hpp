#pragma once

// Radial method-of-lines solver for
//
//   c^{-2} u_tt - a^{-2}(t) Lap u + M^2(t) u - lambda a^{-n(p-1)/2} |u|^p = 0
//
// on nodes r_j = j dr, j = 0..J, with u(r_J) = 0. The Laplacian is the
// finite-volume form on the cells [r_j - dr/2, r_j + dr/2] (a half cell at
// the origin), which keeps the linear constant-a energy conserved by the
// semi-discrete flow and reduces to 2n(u_1 - u_0)/dr^2 at r = 0.

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "flrw/cosmology.hpp"

namespace flrw {

struct GridSpec {
  double dr = 1.0 / 256.0;
  double r_max = 4.0;  ///< rounded up to an even number of cells
};

struct FieldState {
  int n = 1;
  double dr = 0.0;
  double t = 0.0;
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> v;  ///< u_t
  bool diverged = false;

  std::size_t size() const noexcept { return r.size(); }
  double r_max() const noexcept { return r.empty() ? 0.0 : r.back(); }
};

/// Zero field on the grid.
FieldState make_field(int n, const GridSpec& grid);

/// u0 = A exp(-1/(1-(r/r0)^2)) inside r0, u1 = B u0.
struct BumpSpec {
  double r0 = 1.0;
  double amplitude = 1.0;
  /// When set, A is solved so that the spatial mean of u0 equals this value.
  std::optional<double> target_mean;
  double velocity_ratio = 0.0;  ///< B
};

/// Bump shape exp(-1/(1-s^2)) at s = r/r0, zero for s >= 1.
double bump_shape(double r, double r0);

/// Needs at least 32 nodes strictly inside r0 (ResolutionError otherwise).
FieldState init_field(const BumpSpec& bump, const GridSpec& grid, int n);

/// Lap u on every node; the Dirichlet node gets 0.
void radial_laplacian(const std::vector<double>& u, int n, double dr, std::vector<double>& out);
std::vector<double> radial_laplacian(const FieldState& state);

/// n w_n int_0^{r_max} f(r) r^{n-1} dr by composite Simpson.
double radial_integral(const std::vector<double>& f, int n, double dr);

/// w(t) = int u dx.
double spatial_mean(const FieldState& state);

/// safety dr a(t) / c, never past t_end.
double cfl_dt(const CosmologyParams& params, const FieldState& state,
              double t_end = std::numeric_limits<double>::infinity(), double safety = 0.4);

/// One classical RK4 step of (u, v).
FieldState step(const CosmologyParams& params, double lambda, double p, const FieldState& state,
                double dt);

/// Discrete energy of the linear constant-a flow,
/// (1/2) sum_j V_j (c^{-2} v_j^2 + m^2 u_j^2) + (1/2) a0^{-2} sum faces |face| (du/dr)^2 dr,
/// with V_j and |face| carrying the n w_n r^{n-1} measure. Throws MisuseError
/// for lambda != 0 or H != 0.
double energy(const FieldState& state, const CosmologyParams& params, double lambda = 0.0);

/// Largest r with |u| above rel_threshold * sup|u| (0 for the zero field).
double support_radius(const FieldState& state, double rel_threshold);

struct DiagnosticSample {
  double t = 0.0;
  double mean = 0.0;
  double sup = 0.0;
  double energy = std::numeric_limits<double>::quiet_NaN();  ///< linear constant-a runs only
  double support_radius = 0.0;
  double cone_radius = 0.0;
  double mass_integral = 0.0;  ///< int_0^t int |M^2 u| dx ds so far
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;
};

struct RunOptions {
  double output_interval = 0.0;    ///< 0 records every step
  bool keep_snapshots = false;     ///< every step, for the weak identity
  double support_threshold = 1e-4; ///< relative to sup|u|
  double divergence_guard = 1e8;
  bool check_cone = true;
  double safety = 0.4;
};

struct Diagnostics {
  int n = 1;
  double dr = 0.0;
  double r0 = 0.0;
  std::vector<double> r;
  std::vector<DiagnosticSample> samples;
  std::vector<Snapshot> snapshots;
  bool diverged = false;
  double t_final = 0.0;
  std::size_t steps = 0;
  std::string stop_reason;  ///< "t_end", "divergence" or "horizon"
};

/// a(t) / a0 below which a run toward a finite horizon stops.
inline constexpr double kCollapsedScale = 1e-3;

/// Advances `state` to t_end (capped at (1 - 1e-9) T0, and stopped with
/// reason "horizon" once a(t) < kCollapsedScale a0). With check_cone set, needs
/// r_max >= r(t_end) + 10 dr. Throws ConeViolationError when the numerical
/// support leaves r(t) + 2 dr.
Diagnostics run_until(const ConeData& cone, double lambda, double p, FieldState& state,
                      double t_end, const RunOptions& options = {});

}  // namespace flrw
