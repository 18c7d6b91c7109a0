#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "wrinkle/effective.hpp"
#include "wrinkle/errors.hpp"
#include "wrinkle/grid.hpp"
#include "wrinkle/relaxed.hpp"

using namespace wrinkle;

namespace {
const SheetParams kRef{1e-4, 0.5, 1.0, 1e-3};
}  // namespace

TEST(Effective, EnergyOfZeroDisplacement) {
  auto grid = make_grid(kRef, 200, Refinement::uniform);
  const RadialProfile zero(grid, std::vector<double>(grid->size(), 0.0));
  EXPECT_NEAR(f0_energy(zero, kRef), std::pow(0.5, 6) / 24.0, 1e-15);
  SheetParams p = kRef;
  p.R = 2.0;
  EXPECT_NEAR(f0_energy(zero, p), std::pow(0.5, 6) / 24.0 / 16.0, 1e-16);
}

TEST(Effective, ClosedFormValues) {
  EXPECT_NEAR(v0_explicit(0.5, kRef), -0.016012376324572, 1e-14);
  EXPECT_NEAR(v0_explicit(1e-9, kRef) / 1e-9, 0.014811916252095842, 1e-12);
  EXPECT_NEAR(f0_reference_minimum(kRef), 3.929042991238601628e-05, 1e-16);
}

TEST(Effective, ContinuouslyDifferentiableAtOnset) {
  const double r_w = onset_radius(kRef);
  const double lo = std::nextafter(r_w, 0.0), hi = std::nextafter(r_w, 1.0);
  EXPECT_NEAR(v0_explicit(lo, kRef), v0_explicit(hi, kRef), 1e-14);
  EXPECT_NEAR(v0_explicit_derivative(lo, kRef), v0_explicit_derivative(hi, kRef), 1e-12);
  // hoop strain sits exactly on the branch point there
  EXPECT_NEAR(v0_explicit(r_w, kRef) / r_w, -2.0 * std::sqrt(kRef.alpha_s), 1e-14);
}

TEST(Effective, StressNonnegativeAndFreeAtEdge) {
  EXPECT_NEAR(sigma0_explicit(kRef.r0, kRef), 0.0, 1e-15);
  for (int i = 1; i <= 1000; ++i) EXPECT_GE(sigma0_explicit(0.5 * i / 1000.0, kRef), -1e-15);
}

TEST(Effective, OuterStressMatchesClosedForm) {
  const double lo = (2.0 * onset_radius(kRef) + kRef.r0) / 3.0;
  for (int i = 1; i <= 100; ++i) {
    const double r = lo + (kRef.r0 - lo) * i / 100.0;
    EXPECT_NEAR(sigma0_explicit(r, kRef), sigma_h_outer(r, kRef), 1e-10);
    EXPECT_NEAR(sigma_h_outer_literal(r, kRef), 2.0 * sigma_h_outer(r, kRef), 1e-15);
  }
  EXPECT_THROW(sigma_h_outer(lo, kRef), ValidationError);
  EXPECT_THROW(sigma_h_outer(0.6, kRef), ValidationError);
}

TEST(Effective, RegimeGuards) {
  SheetParams p = kRef;
  p.alpha_s = 1e-2;
  EXPECT_THROW(v0_explicit(0.2, p), ValidationError);
  EXPECT_THROW(v0_single_branch(0.2, kRef), ValidationError);
  EXPECT_NEAR(v0_single_branch(0.5, p), -3.0 / 128 + 1.0 / 128, 1e-16);
}

TEST(Effective, DiscreteFunctionalIsMidpointConvex) {
  auto grid = make_grid(kRef, 64, Refinement::uniform);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.03, 0.03);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(grid->size()), b(grid->size()), m(grid->size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      a[j] = u(rng);
      b[j] = u(rng);
      m[j] = 0.5 * (a[j] + b[j]);
    }
    const double fa = f0_energy(RadialProfile(grid, a), kRef);
    const double fb = f0_energy(RadialProfile(grid, b), kRef);
    const double fm = f0_energy(RadialProfile(grid, m), kRef);
    EXPECT_LE(fm, 0.5 * (fa + fb) + 1e-15);
  }
}

TEST(Effective, NumericMinimizerMatchesClosedForm) {
  auto grid = make_grid(kRef, 400, Refinement::uniform);
  const EffectiveSolution sol = f0_minimize_numeric(kRef, grid);
  const RadialProfile exact = sample_minimizer(grid, kRef);
  EXPECT_LT(l2_distance(sol.v, exact), 1e-3 * kRef.r0);
  EXPECT_LE(f0_energy(exact, kRef), sol.energy + 1e-8 * std::abs(sol.energy));
  EXPECT_NEAR(sol.energy, f0_reference_minimum(kRef), 1e-3 * f0_reference_minimum(kRef));
}

TEST(Effective, TensionOnlyMinimizer) {
  SheetParams p = kRef;
  p.alpha_s = 1e-2;
  auto grid = make_grid(p, 400, Refinement::uniform);
  const EffectiveSolution sol = f0_minimize_numeric(p, grid);
  EXPECT_LT(l2_distance(sol.v, sample_minimizer(grid, p)), 1e-3 * p.r0);
}

TEST(Effective, EulerLagrangeResidualSmallAtClosedForm) {
  auto g1 = make_grid(kRef, 500, Refinement::uniform);
  auto g2 = make_grid(kRef, 1000, Refinement::uniform);
  const double r1 = euler_lagrange_residual(sample_minimizer(g1, kRef), kRef);
  const double r2 = euler_lagrange_residual(sample_minimizer(g2, kRef), kRef);
  EXPECT_LT(r2, r1);
  EXPECT_GT(std::log2(r1 / r2), 1.8);
}
