#include "flrw/weak_identity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "flrw/errors.hpp"

namespace flrw {

WeakIdentityTerms weak_identity_terms(const Diagnostics& run, const CosmologyParams& params,
                                      double lambda, double p, double R,
                                      const CutoffProfile& profile) {
  if (!(R > 2.0 * run.r0)) {
    throw CoverageError("the identity needs R > 2 r0 so that psi_R(0, .) = 1 on the data");
  }
  const auto& snaps = run.snapshots;
  if (snaps.empty() || snaps.front().t != 0.0) {
    throw CoverageError("snapshots must start at t = 0");
  }
  if (snaps.back().t < R * (1.0 - 1e-12)) {
    throw CoverageError("snapshots end at t = " + std::to_string(snaps.back().t) +
                        ", before R = " + std::to_string(R));
  }
  const double pp = holder_conjugate(p);
  const int n = run.n;
  const std::size_t size = run.r.size();

  // Spatial factor of psi_R^{p'} and its radial Laplacian, per node.
  std::vector<double> space(size);
  std::vector<double> space_lap(size);
  for (std::size_t j = 0; j < size; ++j) {
    const double r = run.r[j];
    const PowerProfile x = eta_pow(profile, r / R, pp);
    space[j] = x.value;
    double lap = x.d2 / (R * R);
    if (x.d1 != 0.0) lap += (n - 1) / r * x.d1 / R;
    space_lap[j] = lap;
  }

  WeakIdentityTerms terms;
  std::vector<double> f_I(size), f_II(size), f_III(size), f_IV(size);
  const auto slice = [&](const Snapshot& s, double out[4]) {
    const PowerProfile time = eta_pow(profile, s.t / R, pp);
    if (time.value == 0.0 && time.d2 == 0.0) {
      out[0] = out[1] = out[2] = out[3] = 0.0;
      return;
    }
    const double log_a = log_scale_factor(params, s.t);
    const double weight = std::exp(-0.5 * n * (p - 1.0) * log_a);
    const double inv_a2 = std::exp(-2.0 * log_a);
    const double m2 = curved_mass_sq(params, s.t);
    const double dt2 = time.d2 / (R * R);
    for (std::size_t j = 0; j < size; ++j) {
      const double u = s.u[j];
      const double psi = time.value * space[j];
      f_I[j] = weight * std::pow(std::abs(u), p) * psi;
      f_II[j] = u * dt2 * space[j];
      f_III[j] = u * inv_a2 * time.value * space_lap[j];
      f_IV[j] = u * m2 * psi;
    }
    out[0] = radial_integral(f_I, n, run.dr);
    out[1] = radial_integral(f_II, n, run.dr);
    out[2] = radial_integral(f_III, n, run.dr);
    out[3] = radial_integral(f_IV, n, run.dr);
  };

  double prev[4];
  slice(snaps.front(), prev);
  for (std::size_t k = 1; k < snaps.size() && snaps[k - 1].t < R; ++k) {
    double cur[4];
    slice(snaps[k], cur);
    const double h = snaps[k].t - snaps[k - 1].t;
    terms.I += 0.5 * h * (prev[0] + cur[0]);
    terms.II += 0.5 * h * (prev[1] + cur[1]);
    terms.III += 0.5 * h * (prev[2] + cur[2]);
    terms.IV += 0.5 * h * (prev[3] + cur[3]);
    std::copy(cur, cur + 4, prev);
  }

  std::vector<double> f_V(size);
  for (std::size_t j = 0; j < size; ++j) f_V[j] = snaps.front().v[j] * space[j];
  terms.V = radial_integral(f_V, n, run.dr);

  const double inv_c2 = 1.0 / (params.c * params.c);
  const double defect =
      lambda * terms.I + inv_c2 * terms.V - inv_c2 * terms.II + terms.III - terms.IV;
  const double scale = lambda * terms.I + std::abs(terms.V);
  if (scale > 0.0) {
    terms.residual = std::abs(defect) / scale;
  } else {
    terms.residual = defect == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return terms;
}

double weak_identity_residual(const Diagnostics& run, const CosmologyParams& params, double lambda,
                              double p, double R) {
  return weak_identity_terms(run, params, lambda, p, R).residual;
}

}  // namespace flrw
