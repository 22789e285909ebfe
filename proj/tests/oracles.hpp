#pragma once

// Independent reference computations used by the unit tests and the
// acceptance runner. Nothing here calls into the library's own closed forms.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "flrw/cosmology.hpp"

namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// log a(t) straight from a(t) = a0 {1 + n(1+sigma)Ht/2}^{2/n(1+sigma)}.
inline double log_a(const flrw::CosmologyParams& q, double t) {
  const double k = 0.5 * q.n * (1.0 + q.sigma);
  if (q.H == 0.0) return std::log(q.a0);
  if (std::abs(k) < 1e-14) return std::log(q.a0) + q.H * t;
  return std::log(q.a0) + std::log1p(k * q.H * t) / k;
}

inline double a(const flrw::CosmologyParams& q, double t) { return std::exp(log_a(q, t)); }

inline double horizon(const flrw::CosmologyParams& q) {
  const double k = 0.5 * q.n * (1.0 + q.sigma);
  const double rate = k * q.H;
  return rate < 0.0 ? -1.0 / rate : kInf;
}

/// Time over which log a changes appreciably at t.
inline double local_time_scale(const flrw::CosmologyParams& q, double t) {
  if (q.H == 0.0) return 1.0;
  const double k = 0.5 * q.n * (1.0 + q.sigma);
  if (std::abs(k) < 1e-14) return 1.0 / std::abs(q.H);
  return std::abs(1.0 + k * q.H * t) / std::abs(k * q.H);
}

/// M^2 from the transformed equation, m^2 - n(n-2)/(4c^2) (a'/a)^2 - n/(2c^2) a''/a,
/// with derivatives of log a by fourth-order central differences.
struct FdMass {
  double value = 0.0;
  double scale = 0.0;  ///< sum of the absolute contributions
};
inline FdMass curved_mass_fd(const flrw::CosmologyParams& q, double t) {
  const double h = 1e-3 * std::min(local_time_scale(q, t), 1.0);
  const auto f = [&](double s) { return log_a(q, s); };
  // log a extends smoothly below t = 0, so the stencil is centred at t
  const double c0 = t;
  const double fm2 = f(c0 - 2 * h), fm1 = f(c0 - h), f0 = f(c0), fp1 = f(c0 + h), fp2 = f(c0 + 2 * h);
  const double d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
  const double d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h);
  const double rate = d1;
  const double accel = d2 + d1 * d1;  // a''/a
  const double n = q.n;
  const double c2 = q.c * q.c;
  const double t1 = n * (n - 2.0) / (4.0 * c2) * rate * rate;
  const double t2 = n / (2.0 * c2) * accel;
  return {q.m_sq - t1 - t2, std::abs(q.m_sq) + std::abs(t1) + std::abs(t2)};
}

/// r0 + int_0^t c / a(s) ds by 61-point Gauss-Kronrod.
inline double cone_quadrature(const flrw::CosmologyParams& q, double r0, double t) {
  if (t == 0.0) return r0;
  const auto integrand = [&](double s) { return q.c * std::exp(-log_a(q, s)); };
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, t,
                                                                               15, 1e-12, &err);
  return r0 + v;
}

/// Blow-up time of c^{-2} w'' = b w^p with the energy-matched slope
/// w' = c sqrt(2b/(p+1)) w^{(p+1)/2}, by separation of variables.
inline double separable_blowup_time(double p, double b, double w0, double c) {
  const double k = c * std::sqrt(2.0 * b / (p + 1.0));
  return 2.0 * std::pow(w0, -0.5 * (p - 1.0)) / (k * (p - 1.0));
}
inline double separable_slope(double p, double b, double w0, double c) {
  return c * std::sqrt(2.0 * b / (p + 1.0)) * std::pow(w0, 0.5 * (p + 1.0));
}

/// (n+1)/(n-1) style ratio of integers; infinity for a zero denominator.
inline double ratio(double num, double den) { return den == 0.0 ? kInf : num / den; }

/// Random spacetime drawn from one regime family.
enum class Family { Static, Expanding, Contracting, Any };

inline flrw::CosmologyParams random_params(std::mt19937_64& rng, Family family) {
  std::uniform_int_distribution<int> n_dist(1, 4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  flrw::CosmologyParams q;
  q.n = n_dist(rng);
  q.c = 0.5 + 1.5 * u(rng);
  q.a0 = 0.5 + 1.5 * u(rng);
  switch (family) {
    case Family::Static:
      q.H = 0.0;
      q.sigma = -4.0 + 8.0 * u(rng);
      q.m_sq = -(0.1 + 3.0 * u(rng));
      break;
    case Family::Expanding: {
      q.H = 0.1 + 1.5 * u(rng);
      q.sigma = -0.9 + 3.0 * u(rng);
      const double floor = std::max(0.0, q.sigma) * q.hubble_mass_sq();
      q.m_sq = -(floor + 0.1 + 2.0 * u(rng));
      break;
    }
    case Family::Contracting: {
      q.H = -(0.1 + 1.5 * u(rng));
      const double edge = -1.0 - 2.0 / q.n;
      q.sigma = edge - 0.2 - 4.0 * u(rng);
      q.m_sq = -(0.1 + 2.0 * u(rng));
      break;
    }
    case Family::Any:
      q.n = std::uniform_int_distribution<int>(1, 8)(rng);
      q.H = -2.0 + 4.0 * u(rng);
      q.sigma = -5.0 + 10.0 * u(rng);
      q.m_sq = -4.0 + 8.0 * u(rng);
      break;
  }
  return q;
}

}  // namespace oracle
