#include "flrw/cutoff.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>

#include "flrw/errors.hpp"
#include "flrw/quadrature.hpp"

namespace flrw {

namespace {

constexpr std::size_t kPanels = 2048;
constexpr double kLeft = 0.5;
constexpr double kWidth = 0.5 / kPanels;

using Gauss = boost::math::quadrature::gauss<double, 20>;

double exponent(double s) noexcept { return 1.0 / ((s - 0.5) * (1.0 - s)); }

// exp(-1/((s-1/2)(1-s))) on (1/2, 1), zero elsewhere.
double kernel(double s) noexcept {
  if (!(s > 0.5 && s < 1.0)) return 0.0;
  return std::exp(-exponent(s));
}

}  // namespace

CutoffProfile::CutoffProfile() : head_(kPanels + 1, 0.0), tail_(kPanels + 1, 0.0) {
  eta0_ = 1.0 / quad::integrate(kernel, 0.5, 1.0, 1e-14, 1e-13).value;
  std::vector<double> panel(kPanels);
  for (std::size_t k = 0; k < kPanels; ++k) {
    const double a = kLeft + kWidth * static_cast<double>(k);
    panel[k] = Gauss::integrate(kernel, a, a + kWidth);
  }
  for (std::size_t k = 0; k < kPanels; ++k) head_[k + 1] = head_[k] + panel[k];
  for (std::size_t k = kPanels; k-- > 0;) tail_[k] = tail_[k + 1] + panel[k];
}

double CutoffProfile::partial(double from, double to) const {
  if (from == to) return 0.0;
  return Gauss::integrate(kernel, from, to);
}

double CutoffProfile::eta(double s) const {
  if (s <= 0.5) return 1.0;
  if (s >= 1.0) return 0.0;
  const auto k = std::min<std::size_t>(kPanels - 1, static_cast<std::size_t>((s - kLeft) / kWidth));
  const double node = kLeft + kWidth * static_cast<double>(k);
  if (s <= 0.75) return 1.0 - eta0_ * (head_[k] + partial(node, s));
  return eta0_ * (tail_[k + 1] + partial(s, node + kWidth));
}

double CutoffProfile::d1(double s) const { return -eta0_ * kernel(s); }

double CutoffProfile::d2(double s) const {
  if (!(s > 0.5 && s < 1.0)) return 0.0;
  const double u = s - 0.5;
  const double w = 1.0 - s;
  // exponent g = 1/(u w), g' = -(w - u)/(u w)^2
  const double dg = -(w - u) / (u * u * w * w);
  return eta0_ * dg * kernel(s);
}

double CutoffProfile::d1_sq_over_eta(double s) const {
  const double e = eta(s);
  if (!(e > 0.0)) return 0.0;
  const double d = d1(s);
  return d * d / e;
}

CutoffProfile build_cutoff() { return CutoffProfile{}; }

const CutoffProfile& default_cutoff() {
  static const CutoffProfile profile;
  return profile;
}

double holder_conjugate(double p) {
  if (std::isinf(p)) return 1.0;
  if (!(p > 1.0)) throw DomainError("Hoelder conjugate needs p > 1");
  return p / (p - 1.0);
}

PowerProfile eta_pow(const CutoffProfile& profile, double s, double p_prime) {
  if (s <= 0.5) return {1.0, 0.0, 0.0};
  if (s >= 1.0) return {0.0, 0.0, 0.0};
  const double e = profile.eta(s);
  if (!(e > 0.0)) return {0.0, 0.0, 0.0};
  const double de = profile.d1(s);
  const double lead = p_prime * std::pow(e, p_prime - 1.0);
  return {
      std::pow(e, p_prime),
      lead * de,
      lead * ((p_prime - 1.0) * de * de / e + profile.d2(s)),
  };
}

double psi_pow(const CutoffProfile& profile, double R, double p, double t, double radius) {
  const double pp = holder_conjugate(p);
  return eta_pow(profile, t / R, pp).value * eta_pow(profile, radius / R, pp).value;
}

PsiDerivatives psi_pow_derivatives(const CutoffProfile& profile, double R, double p, int n,
                                   double t, double radius) {
  const double pp = holder_conjugate(p);
  const PowerProfile time = eta_pow(profile, t / R, pp);
  const PowerProfile space = eta_pow(profile, radius / R, pp);
  const double inv_r2 = 1.0 / (R * R);
  double lap = space.d2 * inv_r2;
  // The first-derivative term lives on the annulus R/2 < |x| < R only.
  if (space.d1 != 0.0) lap += (n - 1) / radius * space.d1 / R;
  return {time.value * space.value, time.d2 * inv_r2 * space.value, time.value * lap};
}

CutoffBoundReport verify_cutoff_bounds(const CutoffProfile& profile, std::span<const double> R_list,
                                       double p, int n, std::size_t grid) {
  const double pp = holder_conjugate(p);
  CutoffBoundReport report;
  // Radii sampled inside the spatial plateau and across the annulus.
  constexpr int kRadial = 8;
  for (const double R : R_list) {
    double time_sup = 0.0;
    double lap_sup = 0.0;
    for (std::size_t i = 1; i < grid; ++i) {
      const double s = 0.5 + 0.5 * static_cast<double>(i) / static_cast<double>(grid);
      for (int j = 0; j <= kRadial; ++j) {
        const double rho = 0.5 * R * static_cast<double>(j) / kRadial;
        // time derivative: t in the transition layer, x anywhere in the ball
        {
          const PsiDerivatives d = psi_pow_derivatives(profile, R, p, n, s * R, rho);
          const double weight = std::pow(profile.eta(s) * profile.eta(rho / R), pp - 1.0);
          if (weight > 0.0) time_sup = std::max(time_sup, R * R * std::abs(d.dt2) / weight);
        }
        // Laplacian: x in the annulus, t in the plateau (the quotient is
        // largest there since it scales with eta(t/R))
        {
          const double t = 0.5 * R * static_cast<double>(j) / kRadial;
          const PsiDerivatives d = psi_pow_derivatives(profile, R, p, n, t, s * R);
          const double weight = std::pow(profile.eta(t / R) * profile.eta(s), pp - 1.0);
          if (weight > 0.0) lap_sup = std::max(lap_sup, R * R * std::abs(d.laplacian) / weight);
        }
      }
    }
    // Plateau: all derivatives vanish identically.
    for (int j = 0; j <= kRadial; ++j) {
      const double x = 0.5 * R * static_cast<double>(j) / kRadial;
      const PsiDerivatives d = psi_pow_derivatives(profile, R, p, n, x, x);
      report.plateau_max = std::max({report.plateau_max, std::abs(d.dt2), std::abs(d.laplacian)});
    }
    report.R.push_back(R);
    report.time_constant.push_back(time_sup);
    report.laplacian_constant.push_back(lap_sup);
  }
  const auto variation = [](const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;
  };
  report.time_variation = variation(report.time_constant);
  report.laplacian_variation = variation(report.laplacian_constant);
  return report;
}

}  // namespace flrw
