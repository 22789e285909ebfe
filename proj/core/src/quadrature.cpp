#include "flrw/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace flrw::quad {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
// 2^15 subintervals at most; tolerances below ~1e-13 are roundoff-limited
// and would otherwise drive the recursion to its full depth.
constexpr unsigned kMaxDepth = 15;
constexpr double kMinRelTol = 1e-13;

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 double rel_tol) {
  if (a == b) return {};
  // Boost's tolerance is relative to the L1 norm; a coarse pass gives the
  // norm so the absolute tolerance can be honoured as well.
  double l1 = 0.0;
  double error = 0.0;
  double value = Kronrod::integrate(f, a, b, 0, 1.0, &error, &l1);
  const double tol = std::max(kMinRelTol, l1 > 0.0 ? std::max(rel_tol, abs_tol / l1) : rel_tol);
  value = Kronrod::integrate(f, a, b, kMaxDepth, tol, &error, &l1);
  return {value, error};
}

double log_integrate(const std::function<double(double)>& log_f, double a, double b,
                     double rel_tol) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (!(b > a)) return kNegInf;
  // Reference level: the largest sampled log-integrand.
  double peak = kNegInf;
  constexpr int kSamples = 65;
  for (int k = 0; k <= kSamples; ++k) {
    const double t = a + (b - a) * k / kSamples;
    const double v = log_f(t);
    if (std::isfinite(v) || v == std::numeric_limits<double>::infinity()) peak = std::max(peak, v);
  }
  if (peak == kNegInf) return kNegInf;
  double error = 0.0;
  double l1 = 0.0;
  const double scaled = Kronrod::integrate(
      [&](double t) {
        const double v = log_f(t);
        return v == kNegInf ? 0.0 : std::exp(v - peak);
      },
      a, b, kMaxDepth, std::max(kMinRelTol, rel_tol), &error, &l1);
  if (!(scaled > 0.0)) return kNegInf;
  return peak + std::log(scaled);
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 0) return out;
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = std::exp(llo + (lhi - llo) * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace flrw::quad
