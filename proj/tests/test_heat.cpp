#include <gtest/gtest.h>

#include <cmath>

#include "eqlef/heat.hpp"

using namespace eqlef;

TEST(Heat, KernelBasics) {
  for (double t : {1e-1, 1e-2, 1e-3}) {
    EXPECT_DOUBLE_EQ(heat_kernel(t, {0.3, -0.2}, {0.3, -0.2}, 1), 1 / (std::numbers::pi * t));
    EXPECT_DOUBLE_EQ(heat_kernel(t, {0.1, 0.2}, {0.05, -0.1}, 1), heat_kernel(t, {0.05, -0.1}, {0.1, 0.2}, 1));
  }
  EXPECT_THROW(heat_kernel(0, {0, 0}, {0, 0}, 1), Error);
  EXPECT_THROW(heat_kernel(1, {0, 0}, {0, 0, 0, 0}, 1), Error);
}

// Gaussian integral oracle: the kernel has unit mass.
TEST(HeatOracle, KernelHasUnitMass) {
  for (double t : {1e-2, 1e-3}) {
    const auto cfg = HeatConfig::for_schedule(1, {t}, Cutoff::ball(0.1, 0.2));
    EXPECT_NEAR(kernel_mass(t, cfg.quadrature), 1.0, 1e-8) << t;
  }
}

TEST(Heat, GuardsRejectUnderResolvedGrids) {
  auto cfg = default_heat_config();
  EXPECT_THROW(twisted_supertrace({std::numbers::pi}, 1e-4, cfg), Error);
  cfg.quadrature.points_per_axis = 50;
  EXPECT_THROW(cfg.validate(), Error);
  EXPECT_THROW(twisted_supertrace({0.0}, 1e-3, default_heat_config()), Error);
  EXPECT_THROW(HeatConfig::for_schedule(1, {1e-3, 1e-2}, Cutoff::ball(0.1, 0.2)), Error);
}

TEST(Heat, SupertraceSpotValues) {
  const auto cfg = default_heat_config();
  const Complex a = twisted_supertrace({std::numbers::pi}, 1e-3, cfg);
  EXPECT_NEAR(a.real(), 0.5, 1e-6);
  EXPECT_NEAR(a.imag(), 0.0, 1e-6);
  const Complex b = twisted_supertrace({std::numbers::pi / 2}, 1e-3, cfg);
  EXPECT_NEAR(b.real(), 0.5, 1e-6);
  EXPECT_NEAR(b.imag(), -0.5, 1e-6);
}

TEST(Heat, SmallTimeLimitsMatchDetFactor) {
  const auto cfg = default_heat_config();
  for (const auto& g : {DiagonalAction(2, {1}), DiagonalAction(3, {1}), DiagonalAction(4, {1}), DiagonalAction(6, {5})}) {
    const auto r = smalltime_limit(g, cfg);
    EXPECT_TRUE(r.pass) << g.order();
    EXPECT_TRUE(r.monotone);
    EXPECT_GE(r.observed_order, 1.0);
    EXPECT_LE(r.error_at_min_t, 1e-6);
    for (std::size_t i = 0; i < r.t.size(); ++i) EXPECT_LE(r.errors[i], r.constant * r.t[i] + 1e-15);
  }
}

TEST(Heat, TwoDimensionalModel) {
  const auto cfg = default_heat_config(2);
  const DiagonalAction g(4, {1, 3});
  const auto r = smalltime_limit(g, cfg);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(std::abs(r.values.back() - to_complex(det_factor(g))), 0.0, 1e-6);
}

TEST(Heat, AwayFromFixedPointVanishes) {
  const auto cfg = away_heat_config();
  for (double theta : {std::numbers::pi, 2 * std::numbers::pi / 3, std::numbers::pi / 2}) {
    EXPECT_LE(std::abs(twisted_supertrace({theta}, 1e-4, cfg)), 1e-8);
    const auto r = smalltime_limit({theta}, cfg, Complex(0, 0), 1e-8);
    EXPECT_TRUE(r.pass);
  }
}

TEST(Heat, GridHalvingIsStable) {
  const auto cfg = default_heat_config();
  for (double theta : {std::numbers::pi, std::numbers::pi / 2}) EXPECT_LT(grid_halving_change({theta}, cfg), 1e-8);
}

TEST(Heat, NonMonotoneConvergenceIsReportedNotThrown) {
  // a cutoff hole around the fixed point makes the error grow as t decreases
  const auto cfg = HeatConfig::for_schedule(1, {4e-2, 1e-2, 4e-3, 1e-3}, Cutoff::annulus(0.02, 0.05, 0.3, 0.6), 1.6);
  const auto r = smalltime_limit({std::numbers::pi}, cfg, Complex(0.5, 0));
  EXPECT_FALSE(r.pass);
}
