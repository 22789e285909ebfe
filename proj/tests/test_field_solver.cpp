#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "flrw/errors.hpp"
#include "flrw/field_solver.hpp"
#include "flrw/thresholds.hpp"

using namespace flrw;

namespace {

CosmologyParams flat(int n, double m_sq) {
  CosmologyParams q;
  q.n = n;
  q.m_sq = m_sq;
  return q;
}

GridSpec grid_of(double dr, double r_max) {
  GridSpec g;
  g.dr = dr;
  g.r_max = r_max;
  return g;
}

}  // namespace

TEST(Laplacian, QuadraticAndConstant) {
  for (int n = 1; n <= 4; ++n) {
    const double dr = 0.01;
    const FieldState s = make_field(n, grid_of(dr, 1.0));
    std::vector<double> sq(s.size()), one(s.size(), 1.0), out;
    for (std::size_t j = 0; j < s.size(); ++j) sq[j] = s.r[j] * s.r[j];
    radial_laplacian(sq, n, dr, out);
    for (std::size_t j = 0; j + 1 < s.size(); ++j) EXPECT_NEAR(out[j], 2.0 * n, 1e-8) << "j=" << j;
    EXPECT_EQ(out.back(), 0.0);
    radial_laplacian(one, n, dr, out);
    for (std::size_t j = 0; j + 1 < s.size(); ++j) EXPECT_NEAR(out[j], 0.0, 1e-9);
  }
}

TEST(Laplacian, SphericalWaveConvergesAtSecondOrder) {
  // Lap sin(kr)/(kr) = -k^2 sin(kr)/(kr) for n = 3
  const double k = 3.0;
  double previous = 0.0;
  for (const double dr : {0.02, 0.01}) {
    const FieldState s = make_field(3, grid_of(dr, 2.0));
    std::vector<double> f(s.size()), out;
    for (std::size_t j = 0; j < s.size(); ++j) {
      f[j] = s.r[j] == 0.0 ? 1.0 : std::sin(k * s.r[j]) / (k * s.r[j]);
    }
    radial_laplacian(f, 3, dr, out);
    double err = 0.0;
    for (std::size_t j = 0; j + 1 < s.size(); ++j) err = std::max(err, std::abs(out[j] + k * k * f[j]));
    EXPECT_LT(err, 0.05 * k * k);
    if (previous > 0.0) EXPECT_LT(err / previous, 0.3);
    previous = err;
  }
}

TEST(RadialIntegral, BallVolumes) {
  const double R = 1.5;
  for (int n = 1; n <= 4; ++n) {
    const FieldState s = make_field(n, grid_of(1.0 / 64.0, R));
    const std::vector<double> one(s.size(), 1.0);
    const double omega = std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
    EXPECT_NEAR(radial_integral(one, n, s.dr), omega * std::pow(s.r_max(), n), 1e-12);
  }
}

TEST(InitField, HitsTargetMeanAndVelocityRatio) {
  BumpSpec bump;
  bump.r0 = 1.0;
  bump.target_mean = 10.0;
  bump.velocity_ratio = 0.7;
  const FieldState s = init_field(bump, grid_of(1.0 / 128.0, 2.0), 3);
  EXPECT_NEAR(spatial_mean(s), 10.0, 1e-10);
  EXPECT_NEAR(radial_integral(s.v, 3, s.dr), 7.0, 1e-9);
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s.r[j] >= 1.0) EXPECT_EQ(s.u[j], 0.0);
  }
  EXPECT_EQ(bump_shape(0.0, 1.0), std::exp(-1.0));
  EXPECT_EQ(bump_shape(1.0, 1.0), 0.0);
}

TEST(InitField, RejectsUnderResolvedBump) {
  BumpSpec bump;
  bump.r0 = 0.1;
  EXPECT_THROW(init_field(bump, grid_of(0.01, 1.0), 2), ResolutionError);
  bump.r0 = 2.0;
  EXPECT_THROW(init_field(bump, grid_of(0.01, 1.0), 2), ResolutionError);
}

TEST(Cfl, StepFollowsScaleFactor) {
  const FieldState s = make_field(1, grid_of(0.01, 1.0));
  EXPECT_NEAR(cfl_dt(flat(1, 0.0), s), 0.004, 1e-15);
  EXPECT_NEAR(cfl_dt(flat(1, 0.0), s, 0.001), 0.001, 1e-15);
  CosmologyParams ds = flat(1, 0.0);
  ds.H = 1.0;
  ds.sigma = -1.0;
  FieldState later = s;
  later.t = 1.0;
  EXPECT_NEAR(cfl_dt(ds, later), 0.004 * std::numbers::e, 1e-12);
}

TEST(Step, ZeroFieldStaysZero) {
  FieldState s = make_field(2, grid_of(0.01, 1.0));
  for (int k = 0; k < 10; ++k) s = step(flat(2, -1.0), 1.0, 2.0, s, 0.004);
  for (std::size_t j = 0; j < s.size(); ++j) {
    EXPECT_EQ(s.u[j], 0.0);
    EXPECT_EQ(s.v[j], 0.0);
  }
  EXPECT_NEAR(s.t, 0.04, 1e-15);
}

TEST(Energy, QuadraticInAmplitudeAndMisuse) {
  BumpSpec bump;
  bump.r0 = 0.5;
  bump.amplitude = 1.0;
  bump.velocity_ratio = 0.3;
  const GridSpec g = grid_of(1.0 / 128.0, 1.0);
  const FieldState s1 = init_field(bump, g, 3);
  bump.amplitude = 2.0;
  const FieldState s2 = init_field(bump, g, 3);
  const CosmologyParams q = flat(3, 1.0);
  EXPECT_NEAR(energy(s2, q), 4.0 * energy(s1, q), 1e-12 * energy(s2, q));
  EXPECT_THROW(energy(s1, q, 1.0), MisuseError);
  CosmologyParams ex = q;
  ex.H = 0.5;
  EXPECT_THROW(energy(s1, ex), MisuseError);
}

TEST(RunUntil, StandingModeFrequency) {
  // n = 1, u(1) = 0: cos(pi r / 2) oscillates at pi/2 when m = 0
  const double dr = 1.0 / 128.0;
  FieldState s = make_field(1, grid_of(dr, 1.0));
  const double k = 0.5 * std::numbers::pi;
  for (std::size_t j = 0; j < s.size(); ++j) s.u[j] = std::cos(k * s.r[j]);
  RunOptions opt;
  opt.check_cone = false;
  opt.output_interval = 0.5;
  const double T = 2.0 * std::numbers::pi / k;  // one period
  run_until(ConeData{1.0, flat(1, 0.0)}, 0.0, 2.0, s, 0.5 * T, opt);
  for (std::size_t j = 0; j < s.size(); ++j) EXPECT_NEAR(s.u[j], -std::cos(k * s.r[j]), 1e-3);
}

TEST(RunUntil, SupportStaysInsideCone) {
  const CosmologyParams q = flat(3, 1.0);
  const ConeData cone{0.5, q};
  const double dr = 1.0 / 128.0;
  BumpSpec bump;
  bump.r0 = 0.5;
  FieldState s = init_field(bump, grid_of(dr, cone_radius(cone, 1.0) + 16.0 * dr), 3);
  RunOptions opt;
  opt.output_interval = 0.0;
  const Diagnostics d = run_until(cone, 0.0, 2.0, s, 1.0, opt);
  EXPECT_EQ(d.stop_reason, "t_end");
  EXPECT_FALSE(d.diverged);
  EXPECT_DOUBLE_EQ(d.t_final, 1.0);
  for (const DiagnosticSample& x : d.samples) {
    EXPECT_LE(x.support_radius, x.cone_radius + 2.0 * dr) << "t=" << x.t;
    EXPECT_TRUE(std::isfinite(x.energy));
  }
  // RK4 dissipation is O(dr^4): about 4e-6 relative at dr = 1/128
  EXPECT_NEAR(d.samples.back().energy, d.samples.front().energy, 1e-5 * d.samples.front().energy);
}

TEST(RunUntil, NeedsRoomForTheCone) {
  const ConeData cone{0.5, flat(1, 0.0)};
  BumpSpec bump;
  bump.r0 = 0.5;
  FieldState s = init_field(bump, grid_of(1.0 / 128.0, 1.0), 1);
  EXPECT_THROW(run_until(cone, 0.0, 2.0, s, 2.0), DomainError);
}

TEST(RunUntil, AdmissibleDataDiverges) {
  const CosmologyParams q = flat(1, -1.0);
  const ConeData cone{0.5, q};
  const double dr = 1.0 / 128.0;
  const double N = damping_rate_N(q).N;
  BumpSpec bump;
  bump.r0 = 0.5;
  bump.target_mean = 1.0;
  bump.velocity_ratio = q.c * N;
  FieldState s = init_field(bump, grid_of(dr, cone_radius(cone, 4.0) + 16.0 * dr), 1);
  RunOptions opt;
  opt.output_interval = 0.0;
  opt.check_cone = false;
  const Diagnostics d = run_until(cone, 1.0, 2.0, s, 4.0, opt);
  EXPECT_TRUE(d.diverged);
  EXPECT_EQ(d.stop_reason, "divergence");
  EXPECT_LT(d.t_final, 4.0);
  EXPECT_GT(d.samples.back().mean, 1e3);
}

TEST(RunUntil, StopsAtTheHorizon) {
  CosmologyParams q = flat(1, -1.0);
  q.H = -1.0;  // T0 = 2 / (n H) = 2
  const ConeData cone{0.5, q};
  const double dr = 1.0 / 64.0;
  BumpSpec bump;
  bump.r0 = 0.5;
  bump.amplitude = 1e-3;
  FieldState s = init_field(bump, grid_of(dr, 4.0), 1);
  RunOptions opt;
  opt.check_cone = false;
  opt.output_interval = 0.1;
  const Diagnostics d = run_until(cone, 0.0, 2.0, s, 3.0, opt);
  EXPECT_EQ(d.stop_reason, "horizon");
  // a = (1 - t/2)^2 reaches 1e-3 at t = 2 - 2 sqrt(1e-3)
  EXPECT_LT(d.t_final, 2.0);
  EXPECT_NEAR(d.t_final, 2.0 - 2.0 * std::sqrt(kCollapsedScale), 0.01);
}
