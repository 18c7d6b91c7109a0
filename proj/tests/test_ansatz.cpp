#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "wrinkle/ansatz.hpp"
#include "wrinkle/errors.hpp"
#include "wrinkle/mask.hpp"

using namespace wrinkle;

namespace {

const SheetParams kP{1e-4, 0.5, 1.0, 2.5e-3};

struct Fixture {
  FhSolution sol;
  AnsatzParams ap;
  AnsatzField field;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    Fixture out;
    auto grid = make_grid(kP, default_node_count(kP), Refinement::uniform);
    out.sol = fh_minimize(kP, grid);
    out.ap = choose_parameters(kP.h);
    out.field = build_ansatz(out.sol, kP, out.ap);
    return out;
  }();
  return f;
}

}  // namespace

TEST(Mask, ValuesAndSupport) {
  EXPECT_DOUBLE_EQ(mask(0.0), std::exp(-1.0));
  EXPECT_EQ(mask(0.5), 0.0);
  EXPECT_EQ(mask(-0.7), 0.0);
  EXPECT_DOUBLE_EQ(mask(0.2), mask(-0.2));
  for (double t : {-0.4, -0.1, 0.05, 0.3, 0.45}) {
    const double e = 1e-6;
    EXPECT_NEAR(mask_d1(t), (mask(t + e) - mask(t - e)) / (2 * e), 1e-7);
    EXPECT_NEAR(mask_d2(t), (mask_d1(t + e) - mask_d1(t - e)) / (2 * e), 1e-6);
  }
}

TEST(Mask, SquareIntegral) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  const Big text(kMaskSquareIntegralText);
  EXPECT_EQ(static_cast<double>(text), kMaskSquareIntegral);
  // t sum m^2(tk) converges to the integral faster than any power of t
  const Big t = Big(1) / 256;
  EXPECT_LT(abs(riemann_defect(t, Big(0), text)), Big(1e-18));
}

TEST(Mask, RiemannDefectValues) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  const Big integral(kMaskSquareIntegralText);
  EXPECT_NEAR(static_cast<double>(riemann_defect(Big(0.25), Big(0), integral)), 2.032485998e-3, 1e-12);
  EXPECT_NEAR(static_cast<double>(riemann_defect(Big(0.125), Big(0), integral)), -5.903665961e-5, 1e-14);
  EXPECT_NEAR(static_cast<double>(riemann_defect(Big(0.0625), Big(0), integral)), 9.282304616e-7, 1e-16);
}

TEST(Cutoff, StepShape) {
  EXPECT_EQ(cutoff(0.5).value, 0.0);
  EXPECT_EQ(cutoff(1.0).value, 0.0);
  EXPECT_EQ(cutoff(2.0).value, 1.0);
  EXPECT_EQ(cutoff(3.0).d1, 0.0);
  EXPECT_NEAR(cutoff(1.5).value, 0.5, 1e-14);
  EXPECT_NEAR(cutoff(1.3).value, 0.1871277656887677860756801, 1e-13);
  EXPECT_NEAR(cutoff(1.3).value + cutoff(1.7).value, 1.0, 1e-14);
  for (double t : {1.1, 1.4, 1.8}) {
    const double e = 1e-6;
    EXPECT_NEAR(cutoff(t).d1, (cutoff(t + e).value - cutoff(t - e).value) / (2 * e), 1e-7);
    EXPECT_NEAR(cutoff(t).d2, (cutoff(t + e).d1 - cutoff(t - e).d1) / (2 * e), 1e-5);
  }
}

TEST(Ansatz, ParameterChoice) {
  const AnsatzParams ap = choose_parameters(std::exp(-9.0));
  EXPECT_NEAR(ap.delta, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(ap.N_exact, std::exp(1.5), 1e-12);
  EXPECT_EQ(ap.N, 4);
  EXPECT_TRUE(ap.near_integer);
  EXPECT_NEAR(ap.tau, 4.0 * std::exp(-4.5), 1e-15);
  EXPECT_NEAR(choose_parameters(0.01, 0.25).N_exact, std::pow(0.01, -0.25), 1e-12);
  EXPECT_THROW(choose_parameters(0.0), ValidationError);
  EXPECT_THROW(choose_parameters(0.01, -1.0), ValidationError);
}

TEST(Ansatz, ActiveModesSitAroundOptimalWavenumber) {
  SheetParams p = kP;
  p.h = 1e-3;
  const AnsatzParams ap = choose_parameters(p.h);
  for (int i = 0; i <= 50; ++i) {
    const double r = 0.44 + 0.06 * i / 50.0;
    const auto ks = active_modes(r, p, ap);
    ASSERT_FALSE(ks.empty());
    EXPECT_LE(ks.size(), ap.window() + 1.0);
    const double k_opt = std::pow(p.alpha_s, 0.25) * r / p.h;
    for (int k : ks) {
      EXPECT_GE(k * ap.N, k_opt / 2.0);
      EXPECT_LT(std::abs(ap.tau * k - k_opt * std::sqrt(p.h)), 0.5);
    }
  }
}

TEST(Ansatz, AmplitudeVanishesInsideOnset) {
  const Fixture& f = fixture();
  const RadialGrid& g = f.sol.v.grid();
  double a_max = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (g[j] <= f.sol.onset + kP.h) {
      EXPECT_EQ(f.field.A[j], 0.0);
    }
    EXPECT_GE(f.field.A[j], 0.0);
    a_max = std::max(a_max, f.field.A[j]);
  }
  // A^2 int m^2 = -2 (v/r + 2 alpha^{1/2}) <= -2 v(r0)/r0 - 4 alpha^{1/2}
  const double bound = std::sqrt((-2.0 * f.sol.v[g.size() - 1] / kP.r0) / kMaskSquareIntegral);
  EXPECT_GT(a_max, 0.0);
  EXPECT_LE(a_max, bound);
}

TEST(Ansatz, QuadraticHoopTermsCancel) {
  const Fixture& f = fixture();
  const RadialGrid& g = f.sol.v.grid();
  const std::size_t M = 512;
  int checked = 0;
  for (std::size_t j = 0; j < g.size(); j += 37) {
    if (f.field.A[j] == 0.0) continue;
    const double r = g[j];
    const AngularSamples ut = f.field.u_theta.sample(j, M);
    const AngularSamples w = f.field.w.sample(j, M);
    double mean = 0.0, var = 0.0;
    std::vector<double> q(M);
    for (std::size_t m = 0; m < M; ++m) {
      q[m] = ut.f_t[m] / r + w.f_t[m] * w.f_t[m] / (2.0 * r * r);
      mean += q[m] / M;
    }
    for (double x : q) var += (x - mean) * (x - mean) / M;
    EXPECT_LE(std::sqrt(var), 1e-10 * mean) << "r=" << r;
    EXPECT_NEAR(mean, 0.5 * f.field.sigma[j], 1e-12);
    EXPECT_EQ(f.field.u_theta.mean(j), 0.0);
    ++checked;
  }
  EXPECT_GT(checked, 5);
}

TEST(Ansatz, WavenumbersOnLattice) {
  const Fixture& f = fixture();
  for (std::size_t j = 0; j < f.field.w.size(); ++j) {
    for (const Mode& m : f.field.w.modes(j)) EXPECT_EQ(m.k % f.ap.N, 0);
    for (const Mode& m : f.field.u_theta.modes(j)) {
      EXPECT_EQ(m.k % f.ap.N, 0);
      EXPECT_GT(m.k, 0);
      EXPECT_EQ(m.c, 0.0);
    }
  }
}

TEST(Ansatz, SingleModeLimit) {
  // delta -> 0 gives tau = 1: one lattice mode per radius
  SheetParams p = kP;
  p.h = 1e-4;
  const AnsatzParams ap = choose_parameters(p.h, 1e-9);
  EXPECT_NEAR(ap.tau, 1.0, 1e-7);
  for (double r : {0.44, 0.47, 0.499}) EXPECT_LE(active_modes(r, p, ap).size(), 1u);
}

TEST(Ansatz, WastedArclengthTracksTarget) {
  const Fixture& f = fixture();
  double worst = 0.0;
  for (std::size_t j = 0; j < f.field.sigma.size(); ++j) {
    if (f.field.sigma_tilde[j] <= 0.0) continue;
    EXPECT_NEAR(f.field.sigma[j], f.field.w.mean_square_slope(j) / std::pow(f.sol.v.grid()[j], 2) -
                                      0.0, 1e-12);
    worst = std::max(worst, std::abs(f.field.sigma[j] / f.field.sigma_tilde[j] - 1.0));
  }
  EXPECT_LT(worst, 2e-3);
}

TEST(Ansatz, AnalyticDerivativesMatchFiniteDifferences) {
  const Fixture& f = fixture();
  const FourierField fd = f.field.w.with_fd_derivatives();
  const RadialGrid& g = f.field.w.grid();
  double worst = 0.0, scale = 0.0;
  for (std::size_t j = 1; j + 1 < g.size(); ++j) {
    if (g[j] < f.sol.onset + 3.0 * kP.h) continue;
    const auto a = f.field.w.modes(j);
    const auto b = fd.modes(j);
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      if (a[i].k != b[i].k || a[i].k == 0) continue;
      worst = std::max(worst, std::abs(a[i].c_r - b[i].c_r));
      scale = std::max(scale, std::abs(a[i].c_r));
    }
  }
  ASSERT_GT(scale, 0.0);
  EXPECT_LT(worst, 1e-2 * scale);
}
