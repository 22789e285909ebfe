#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "flrw/cutoff.hpp"

using namespace flrw;

TEST(Cutoff, PlateauSupportAndMidpoint) {
  const CutoffProfile& eta = default_cutoff();
  EXPECT_EQ(eta.eta(0.0), 1.0);
  EXPECT_EQ(eta.eta(0.5), 1.0);
  EXPECT_EQ(eta.eta(1.0), 0.0);
  EXPECT_EQ(eta.eta(2.0), 0.0);
  // the bump exp(-1/((s-1/2)(1-s))) is symmetric about 3/4
  EXPECT_NEAR(eta.eta(0.75), 0.5, 1e-10);
}

TEST(Cutoff, MonotoneOnTransition) {
  const CutoffProfile& eta = default_cutoff();
  double previous = 1.0;
  for (int k = 0; k <= 1000; ++k) {
    const double s = 0.5 + 0.5 * k / 1000.0;
    const double v = eta.eta(s);
    EXPECT_LE(v, previous + 1e-15);
    EXPECT_LE(eta.d1(s), 1e-15);
    previous = v;
  }
}

TEST(Cutoff, DerivativesMatchFiniteDifferences) {
  const CutoffProfile& eta = default_cutoff();
  const double h = 1e-5;
  for (int k = 1; k < 50; ++k) {
    const double s = 0.5 + 0.5 * k / 50.0;
    const double d1 = (eta.eta(s + h) - eta.eta(s - h)) / (2 * h);
    const double d2 = (eta.d1(s + h) - eta.d1(s - h)) / (2 * h);
    EXPECT_NEAR(eta.d1(s), d1, 1e-6);
    EXPECT_NEAR(eta.d2(s), d2, 1e-5 * (1.0 + std::abs(d2)));
  }
}

TEST(Cutoff, SquaredSlopeOverValueStaysFinite) {
  const CutoffProfile& eta = default_cutoff();
  for (const double s : {0.5, 0.75, 0.99, 0.999999, 1.0}) {
    EXPECT_TRUE(std::isfinite(eta.d1_sq_over_eta(s)));
  }
}

TEST(TestFunction, Examples) {
  const CutoffProfile& eta = default_cutoff();
  const double R = 10.0;
  EXPECT_NEAR(psi_pow(eta, R, 2.0, 0.0, 0.4 * R), 1.0, 1e-15);
  EXPECT_EQ(psi_pow(eta, R, 2.0, 2.0 * R, 0.0), 0.0);
  // p' = 2: (1/2)^2 (1/2)^2
  EXPECT_NEAR(psi_pow(eta, R, 2.0, 0.75 * R, 0.75 * R), 1.0 / 16.0, 1e-9);
}

TEST(TestFunction, DerivativesMatchFiniteDifferences) {
  const CutoffProfile& eta = default_cutoff();
  const double R = 3.0;
  const double p = 2.5;
  const int n = 3;
  const double h = 1e-4;
  for (const double t : {0.5 * R + 0.3, 0.8 * R}) {
    for (const double r : {0.2 * R, 0.6 * R, 0.85 * R}) {
      const PsiDerivatives d = psi_pow_derivatives(eta, R, p, n, t, r);
      const auto f = [&](double tt, double rr) { return psi_pow(eta, R, p, tt, rr); };
      const double dtt = (f(t + h, r) - 2 * f(t, r) + f(t - h, r)) / (h * h);
      const double drr = (f(t, r + h) - 2 * f(t, r) + f(t, r - h)) / (h * h);
      const double dr = (f(t, r + h) - f(t, r - h)) / (2 * h);
      EXPECT_NEAR(d.value, f(t, r), 1e-14);
      EXPECT_NEAR(d.dt2, dtt, 1e-4 * (1.0 + std::abs(dtt)));
      EXPECT_NEAR(d.laplacian, drr + (n - 1) / r * dr, 1e-4 * (1.0 + std::abs(drr)));
    }
  }
}

TEST(TestFunction, DerivativeBoundsScaleLikeInverseSquare) {
  const std::vector<double> Rs = {1.0, 2.0, 8.0, 64.0};
  const CutoffBoundReport rep = verify_cutoff_bounds(default_cutoff(), Rs, 2.0, 3);
  ASSERT_EQ(rep.time_constant.size(), Rs.size());
  EXPECT_LT(rep.time_variation, 0.01);
  EXPECT_LT(rep.laplacian_variation, 0.01);
  EXPECT_EQ(rep.plateau_max, 0.0);
  const CutoffBoundReport p3 = verify_cutoff_bounds(default_cutoff(), Rs, 3.0, 1);
  for (const double c : p3.time_constant) EXPECT_TRUE(std::isfinite(c));
}

TEST(HolderConjugate, Values) {
  EXPECT_DOUBLE_EQ(holder_conjugate(2.0), 2.0);
  EXPECT_DOUBLE_EQ(holder_conjugate(3.0), 1.5);
  EXPECT_DOUBLE_EQ(holder_conjugate(std::numeric_limits<double>::infinity()), 1.0);
}
