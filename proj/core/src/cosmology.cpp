#include "flrw/cosmology.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "flrw/errors.hpp"
#include "flrw/quadrature.hpp"

namespace flrw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHorizonClamp = 1e-12;
constexpr double kLogBranchTol = 1e-12;

bool is_de_sitter(const CosmologyParams& p) noexcept { return p.sigma == -1.0; }

// 1 + n(1+sigma)Ht/2
double polynomial_base(const CosmologyParams& p, double t) noexcept {
  return 1.0 + p.expansion_index() * p.H * t;
}

}  // namespace

void CosmologyParams::validate() const {
  if (n < 1) throw ValidationError("n must be a positive integer");
  if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("c must be positive and finite");
  if (!(a0 > 0.0) || !std::isfinite(a0)) throw ValidationError("a0 must be positive and finite");
  if (!std::isfinite(m_sq)) throw ValidationError("m_sq must be finite");
  if (!std::isfinite(H)) throw ValidationError("H must be finite");
  if (!std::isfinite(sigma)) throw ValidationError("sigma must be finite");
}

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::Minkowski: return "Minkowski";
    case Regime::DeSitterExpanding: return "DeSitterExpanding";
    case Regime::DeSitterContracting: return "DeSitterContracting";
    case Regime::ExpandingPolynomial: return "ExpandingPolynomial";
    case Regime::BigRip: return "BigRip";
    case Regime::Contracting: return "Contracting";
    case Regime::BigCrunch: return "BigCrunch";
  }
  return "unknown";
}

Regime classify_regime(const CosmologyParams& p) noexcept {
  if (p.H == 0.0) return Regime::Minkowski;
  if (is_de_sitter(p)) return p.H > 0.0 ? Regime::DeSitterExpanding : Regime::DeSitterContracting;
  if (p.H > 0.0) return p.sigma > -1.0 ? Regime::ExpandingPolynomial : Regime::BigRip;
  return p.sigma < -1.0 ? Regime::Contracting : Regime::BigCrunch;
}

double horizon_time(const CosmologyParams& p) noexcept {
  const double rate = (1.0 + p.sigma) * p.H;
  if (rate >= 0.0) return kInf;
  return -2.0 / (p.n * rate);
}

double checked_time(const CosmologyParams& p, double t) {
  if (!(t >= 0.0)) throw DomainError("time must be nonnegative, got " + std::to_string(t));
  const double T0 = horizon_time(p);
  if (std::isfinite(T0)) {
    if (t >= T0) {
      throw DomainError("time " + std::to_string(t) + " at or beyond the horizon T0 = " +
                        std::to_string(T0));
    }
    t = std::min(t, (1.0 - kHorizonClamp) * T0);
  }
  return t;
}

double log_scale_factor(const CosmologyParams& p, double t) {
  t = checked_time(p, t);
  if (p.H == 0.0) return std::log(p.a0);
  const double q = p.expansion_index();
  if (q == 0.0) return std::log(p.a0) + p.H * t;
  return std::log(p.a0) + std::log1p(q * p.H * t) / q;
}

double scale_factor(const CosmologyParams& p, double t) {
  return std::exp(log_scale_factor(p, t));
}

double hubble_rate(const CosmologyParams& p, double t) {
  t = checked_time(p, t);
  if (p.H == 0.0 || is_de_sitter(p)) return p.H;
  return p.H / polynomial_base(p, t);
}

double curved_mass_sq(const CosmologyParams& p, double t) {
  t = checked_time(p, t);
  if (p.H == 0.0 || p.sigma == 0.0) return p.m_sq;
  const double base = is_de_sitter(p) ? 1.0 : polynomial_base(p, t);
  return p.m_sq + p.sigma * p.hubble_mass_sq() / (base * base);
}

std::optional<double> mass_sign_change_time(const CosmologyParams& p) {
  const double rate = (1.0 + p.sigma) * p.H;
  if (!(rate < 0.0) || !(p.sigma < 0.0) || !(p.m_sq > 0.0)) return std::nullopt;
  const double m = std::sqrt(p.m_sq);
  const double threshold = std::sqrt(std::abs(p.sigma)) * p.n * std::abs(p.H) / (2.0 * p.c);
  if (!(m > threshold)) return std::nullopt;
  return -2.0 / (p.n * rate) * (1.0 - threshold / m);
}

bool is_log_cone_branch(const CosmologyParams& p) noexcept {
  return std::abs(p.n * (1.0 + p.sigma) - 2.0) < kLogBranchTol;
}

double cone_radius(const ConeData& cone, double t) {
  const CosmologyParams& p = cone.params;
  t = checked_time(p, t);
  const double scale = p.c / p.a0;
  if (p.H == 0.0) return cone.r0 + scale * t;
  if (is_de_sitter(p)) return cone.r0 - scale / p.H * std::expm1(-p.H * t);
  const double q = p.expansion_index();
  const double log_base = std::log1p(q * p.H * t);
  if (is_log_cone_branch(p)) return cone.r0 + scale / p.H * log_base;
  // int_0^t (1+qHs)^{-1/q} ds = ((1+qHt)^{1-1/q} - 1) / (H (q-1))
  const double e = 1.0 - 1.0 / q;
  return cone.r0 + scale * std::expm1(e * log_base) / (p.H * (q - 1.0));
}

double cone_radius_by_quadrature(const ConeData& cone, double t) {
  const CosmologyParams& p = cone.params;
  t = checked_time(p, t);
  const auto integrand = [&](double s) { return p.c * std::exp(-log_scale_factor(p, s)); };
  return cone.r0 + quad::integrate(integrand, 0.0, t, 1e-14, 1e-14).value;
}

std::optional<double> cone_entry_time(const ConeData& cone, double R) {
  if (!(R > 0.0)) throw DomainError("cone_entry_time needs R > 0");
  const double target = 0.5 * R;
  if (target < cone.r0) return std::nullopt;
  if (target == cone.r0) return 0.0;

  const CosmologyParams& p = cone.params;
  const double T0 = horizon_time(p);
  const double t_cap = std::isfinite(T0) ? (1.0 - kHorizonClamp) * T0 : 1e300;

  double lo = 0.0;
  double hi = std::min(t_cap, std::max(1e-6, (target - cone.r0) * p.a0 / p.c));
  while (cone_radius(cone, hi) < target) {
    if (hi >= t_cap) return std::nullopt;
    lo = hi;
    hi = std::min(t_cap, 2.0 * hi);
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (cone_radius(cone, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::string_view roman_label(MassCase c) noexcept {
  switch (c) {
    case MassCase::Constant: return "i";
    case MassCase::DeSitterConstant: return "ii";
    case MassCase::IncreasingBounded: return "iii";
    case MassCase::Decreasing: return "iv";
    case MassCase::DivergingUp: return "v";
    case MassCase::DivergingDown: return "vi";
  }
  return "?";
}

bool MassBounds::contains(double value, double tol) const noexcept {
  const bool above = lower_attained ? value >= lower - tol : value > lower - tol;
  const bool below = upper_attained ? value <= upper + tol : value < upper + tol;
  return above && below;
}

MassBounds curved_mass_bounds(const CosmologyParams& p) noexcept {
  const double m2 = p.m_sq;
  const double shifted = p.m_sq + p.sigma * p.hubble_mass_sq();
  if (p.H == 0.0 || p.sigma == 0.0) {
    return {MassCase::Constant, m2, m2, true, true, m2, m2};
  }
  if (is_de_sitter(p)) {
    const double v = m2 - p.hubble_mass_sq();
    return {MassCase::DeSitterConstant, v, v, true, true, v, v};
  }
  const double rate = (1.0 + p.sigma) * p.H;
  if (p.H > 0.0 && p.sigma > 0.0) {
    return {MassCase::IncreasingBounded, m2, shifted, false, true, m2, shifted};
  }
  if (rate > 0.0 && p.sigma < 0.0) {
    return {MassCase::Decreasing, shifted, m2, true, false, shifted, m2};
  }
  if (p.H < 0.0 && p.sigma > 0.0) {
    return {MassCase::DivergingUp, shifted, kInf, true, false, shifted, kInf};
  }
  // (1+sigma)H < 0, sigma < 0
  return {MassCase::DivergingDown, -kInf, shifted, false, true, -kInf, shifted};
}

}  // namespace flrw
