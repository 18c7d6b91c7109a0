#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "wrinkle/effective.hpp"
#include "wrinkle/energy.hpp"
#include "wrinkle/errors.hpp"
#include "wrinkle/fh_solver.hpp"

using namespace wrinkle;

namespace {

const SheetParams kP{1e-4, 0.5, 1.0, 1e-2};

FourierField random_field(const GridPtr& g, Parity parity, int k_max, double scale,
                          std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<std::vector<Mode>> modes(g->size());
  std::vector<int> ks{0};
  for (int k = 1; k <= k_max; ++k)
    if (k == k_max || rng() % 4 == 0) ks.push_back(k);
  for (std::size_t j = 0; j < g->size(); ++j) {
    const double r = (*g)[j];
    for (int k : ks) {
      if (parity == Parity::sine && k == 0) continue;
      // vanish like r^2 at the origin so 1/r terms stay bounded
      const double c = parity == Parity::sine ? 0.0 : r * r * u(rng);
      const double s = parity == Parity::cosine || k == 0 ? 0.0 : r * r * u(rng);
      modes[j].push_back(Mode{k, c, s});
    }
  }
  return FourierField(g, parity, std::move(modes), false);
}

Deformation random_deformation(const GridPtr& g, int k_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  FourierField ur = random_field(g, Parity::mixed, k_max, 1e-2, rng);
  FourierField ut = random_field(g, Parity::mixed, k_max, 1e-2, rng);
  FourierField xi = random_field(g, Parity::mixed, k_max, 1e-2, rng);
  return Deformation::from_xi(std::move(ur), std::move(ut), xi, kP);
}

RadialProfile profile(const GridPtr& g, auto f) {
  std::vector<double> v(g->size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f((*g)[j]);
  return RadialProfile(g, std::move(v));
}

}  // namespace

TEST(Energy, RequiredSamples) {
  EXPECT_EQ(required_samples(0), 2u);
  EXPECT_EQ(required_samples(1), 8u);
  EXPECT_EQ(required_samples(56), 256u);
  EXPECT_EQ(required_samples(64), 512u);
}

TEST(Energy, FlatSheetOnSphere) {
  auto g = make_grid(kP, 400, Refinement::uniform);
  const auto zero = profile(g, [](double) { return 0.0; });
  const EnergyBreakdown b = full_energy(Deformation::radial(zero, zero), kP);
  EXPECT_NEAR(b.membrane_radial, std::pow(0.5, 6) / 24.0, 1e-9 * std::pow(0.5, 6) / 24.0);
  EXPECT_NEAR(b.bending_radial, kP.h * kP.h * 0.125, 1e-15);
  EXPECT_EQ(b.membrane_hoop, 0.0);
  EXPECT_EQ(b.substrate, 0.0);
  EXPECT_EQ(b.shear, 0.0);
}

TEST(Energy, ConformingSheet) {
  auto g = make_grid(kP, 400, Refinement::uniform);
  const FourierField none = FourierField::zero(g, Parity::cosine);
  const Deformation d =
      Deformation::from_xi(none, FourierField::zero(g, Parity::sine), none, kP);
  const EnergyBreakdown b = full_energy(d, kP);
  const double sub = kP.alpha_s / (kP.h * kP.h) * std::pow(0.5, 6) / 24.0;
  EXPECT_NEAR(b.substrate, sub, 1e-9 * sub);
  EXPECT_EQ(b.membrane_radial, 0.0);
  EXPECT_EQ(b.bending(), 0.0);
}

TEST(Energy, AxisymmetricMatchesRadialFunctional) {
  SheetParams p = kP;
  p.alpha_s = 1e-2;  // tension only, so W_rel is the hoop strain squared
  auto g = make_grid(p, 800, Refinement::uniform);
  const RadialProfile v = sample_minimizer(g, p);
  const auto w = profile(g, [](double r) { return 0.3 * r * r; });
  const Decomposition dec = decomposed_energy(Deformation::radial(v, w), p);
  const double fh = fh_energy(v, w, p);
  EXPECT_NEAR(dec.full.total, fh, 1e-4 * fh);
  for (double b : dec.B.values()) EXPECT_EQ(b, 0.0);
  EXPECT_EQ(dec.full.remainder_sum(), 0.0);
}

TEST(Energy, DecompositionOnRandomDeformations) {
  auto g = make_grid(kP, 24, Refinement::uniform);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Deformation d = random_deformation(g, 8 + static_cast<int>(seed) * 3, seed);
    const Decomposition dec = decomposed_energy(d, kP);
    EXPECT_LE(dec.relative_error, 1e-10);
    const EnergyBreakdown& b = dec.full;
    for (double x : {b.membrane_radial, b.membrane_hoop, b.shear, b.bending_azimuthal,
                     b.bending_radial, b.bending_twist, b.substrate})
      EXPECT_GE(x, 0.0);
    for (double t : b.remainder) EXPECT_GE(t, 0.0);
    EXPECT_NEAR(b.total, b.parts_sum(), 1e-14 * b.total);
  }
}

TEST(Energy, RotationInvariance) {
  auto g = make_grid(kP, 24, Refinement::uniform);
  const Deformation d = random_deformation(g, 30, 42);
  const Deformation r{d.u_r.rotated(0.7), d.u_theta.rotated(0.7), d.w.rotated(0.7)};
  const double a = full_energy(d, kP).total, b = full_energy(r, kP).total;
  EXPECT_NEAR(a, b, 1e-12 * a);
}

TEST(Energy, SampleCountConverged) {
  auto g = make_grid(kP, 24, Refinement::uniform);
  const Deformation d = random_deformation(g, 40, 5);
  const std::size_t M = required_samples(d.k_max());
  const double a = full_energy(d, kP, {.M = M}).total;
  const double b = full_energy(d, kP, {.M = 2 * M}).total;
  EXPECT_NEAR(a, b, 1e-13 * a);
}

TEST(Energy, SerialReferenceAgrees) {
  auto g = make_grid(kP, 32, Refinement::uniform);
  const Deformation d = random_deformation(g, 25, 8);
  const EnergyBreakdown a = full_energy(d, kP, {.backend = Backend::parallel});
  const EnergyBreakdown b = full_energy(d, kP, {.backend = Backend::serial_reference});
  EXPECT_NEAR(a.total, b.total, 1e-13 * a.total);
  for (std::size_t i = 0; i < 5; ++i)
    EXPECT_NEAR(a.remainder[i], b.remainder[i], 1e-12 * a.total + 1e-13 * b.remainder[i]);
}

TEST(Energy, RejectsAliasingSampleCount) {
  auto g = make_grid(kP, 16, Refinement::uniform);
  const Deformation d = random_deformation(g, 10, 1);
  try {
    full_energy(d, kP, {.M = 40});
    FAIL() << "expected energy.samples";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.code(), "energy.samples");
  }
  EXPECT_NO_THROW(full_energy(d, kP, {.M = 41}));
}

TEST(Energy, ExcessIsDifference) {
  auto g = make_grid(kP, 24, Refinement::uniform);
  const Deformation d = random_deformation(g, 12, 3);
  EXPECT_DOUBLE_EQ(excess_energy(d, kP, 1e-3), full_energy(d, kP).total - 1e-3);
  EXPECT_EQ(to_string(Reference::min_f0), "min-F0");
  EXPECT_EQ(to_string(Reference::min_fh), "min-Fh");
}
