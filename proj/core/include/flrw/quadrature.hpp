#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace flrw::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive 15-point Gauss-Kronrod on [a, b]. Subdivides until the error
/// estimate falls below max(abs_tol, rel_tol * L1).
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-12);

/// log of int_a^b exp(log_f(t)) dt, evaluated without leaving log space so
/// that exponentially large or small integrands survive. Returns -inf for a
/// vanishing integral.
double log_integrate(const std::function<double(double)>& log_f, double a, double b,
                     double rel_tol = 1e-10);

/// `count` points geometrically spaced on [lo, hi], endpoints included.
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

/// log(exp(x) + exp(y))
inline double log_add(double x, double y) noexcept {
  if (x == -std::numeric_limits<double>::infinity()) return y;
  if (y == -std::numeric_limits<double>::infinity()) return x;
  const double hi = std::max(x, y);
  return hi + std::log1p(std::exp(std::min(x, y) - hi));
}

}  // namespace flrw::quad
