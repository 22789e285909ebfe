#pragma once

// Space-time integrals of the weak formulation tested against psi_R^{p'}:
//
//   lambda I_R = -c^{-2} V_R + c^{-2} II_R - III_R + IV_R
//
//   I_R   = int int a^{-n(p-1)/2} |u|^p psi_R^{p'}
//   II_R  = int int u d_t^2 psi_R^{p'}
//   III_R = int int u a^{-2} Lap psi_R^{p'}
//   IV_R  = int int u M^2 psi_R^{p'}
//   V_R   = int u_1 psi_R^{p'}(0, .)
//
// evaluated on stored field snapshots (Simpson in r, trapezoid in t).

#include "flrw/cosmology.hpp"
#include "flrw/cutoff.hpp"
#include "flrw/field_solver.hpp"

namespace flrw {

struct WeakIdentityTerms {
  double I = 0.0;
  double II = 0.0;
  double III = 0.0;
  double IV = 0.0;
  double V = 0.0;
  /// |lambda I + c^{-2} V - c^{-2} II + III - IV| / (lambda I + |V|); 0 when
  /// every term vanishes.
  double residual = 0.0;
};

/// Needs snapshots from t = 0 through t = R and R > 2 r0 (CoverageError
/// otherwise).
WeakIdentityTerms weak_identity_terms(const Diagnostics& run, const CosmologyParams& params,
                                      double lambda, double p, double R,
                                      const CutoffProfile& profile = default_cutoff());

double weak_identity_residual(const Diagnostics& run, const CosmologyParams& params, double lambda,
                              double p, double R);

}  // namespace flrw
