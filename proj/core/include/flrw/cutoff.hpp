#pragma once

// Smooth cutoff eta: 1 on [0, 1/2], 0 on [1, inf), joined by the normalized
// integral of exp(-1/((s-1/2)(1-s))). The scaled test functions are
// psi_R(t, x) = eta(t/R) eta(|x|/R), used raised to the Hoelder conjugate p'.

#include <span>
#include <vector>

namespace flrw {

class CutoffProfile {
 public:
  CutoffProfile();

  /// Normalization (int_{1/2}^1 exp(-1/((s-1/2)(1-s))) ds)^{-1}.
  double eta0() const noexcept { return eta0_; }

  double eta(double s) const;
  double d1(double s) const;  ///< eta'
  double d2(double s) const;  ///< eta''
  /// |eta'|^2 / eta, evaluated without 0/0 at the edge of the support.
  double d1_sq_over_eta(double s) const;

 private:
  double partial(double from, double to) const;

  std::vector<double> head_;  // int_{1/2}^{s_k}
  std::vector<double> tail_;  // int_{s_k}^{1}
  double eta0_ = 0.0;
};

CutoffProfile build_cutoff();

/// Shared immutable instance; construction is thread-safe.
const CutoffProfile& default_cutoff();

/// p' = p/(p-1); 1 for p = inf.
double holder_conjugate(double p);

/// eta(s)^{p'} and its first two derivatives in s.
struct PowerProfile {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};
PowerProfile eta_pow(const CutoffProfile& profile, double s, double p_prime);

/// psi_R(t, x)^{p'} for a point at distance `radius` from the origin.
double psi_pow(const CutoffProfile& profile, double R, double p, double t, double radius);

struct PsiDerivatives {
  double value = 0.0;      ///< psi_R^{p'}
  double dt2 = 0.0;        ///< d^2/dt^2 psi_R^{p'}
  double laplacian = 0.0;  ///< spatial Laplacian in n dimensions
};
PsiDerivatives psi_pow_derivatives(const CutoffProfile& profile, double R, double p, int n,
                                   double t, double radius);

/// Measured constants C in |d_t^2 psi_R^{p'}| <= C R^{-2} psi_R^{p'-1} and
/// |Lap psi_R^{p'}| <= C R^{-2} psi_R^{p'-1}, one value per R.
struct CutoffBoundReport {
  std::vector<double> R;
  std::vector<double> time_constant;
  std::vector<double> laplacian_constant;
  double time_variation = 0.0;       ///< (max - min) / max over R
  double laplacian_variation = 0.0;
  double plateau_max = 0.0;          ///< largest derivative seen inside the plateau
};
CutoffBoundReport verify_cutoff_bounds(const CutoffProfile& profile, std::span<const double> R_list,
                                       double p, int n, std::size_t grid = 10000);

}  // namespace flrw
