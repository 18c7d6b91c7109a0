#include "wrinkle/effective.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <string>

#include "wrinkle/errors.hpp"
#include "wrinkle/relaxed.hpp"
#include "wrinkle/staggered.hpp"

namespace wrinkle {

namespace {

void require_wrinkling(const SheetParams& p) {
  if (!wrinkling_regime(p))
    throw ValidationError("effective.regime",
                          "closed-form minimizer needs the wrinkling regime alpha_s < 2^-8 (r0/R)^4; "
                          "use v0_single_branch for tension-only parameters");
}

double inner_slope(const SheetParams& p, double r_w) {
  return 2.0 * std::sqrt(p.alpha_s) * (p.r0 / r_w - 1.0) + r_w * r_w / (16.0 * p.R * p.R);
}

}  // namespace

double v0_explicit(double r, const SheetParams& p) {
  require_wrinkling(p);
  const double r_w = onset_radius(p);
  const double sa = std::sqrt(p.alpha_s);
  const double R2 = p.R * p.R;
  if (r <= r_w) return -3.0 * r * r * r / (16.0 * R2) + inner_slope(p, r_w) * r;
  return -2.0 * sa * r - (r * r * r - r_w * r_w * r_w) / (6.0 * R2) +
         2.0 * sa * p.r0 * std::log(r / r_w);
}

double v0_explicit_derivative(double r, const SheetParams& p) {
  require_wrinkling(p);
  const double r_w = onset_radius(p);
  const double sa = std::sqrt(p.alpha_s);
  const double R2 = p.R * p.R;
  if (r <= r_w) return -9.0 * r * r / (16.0 * R2) + inner_slope(p, r_w);
  return -2.0 * sa - r * r / (2.0 * R2) + 2.0 * sa * p.r0 / r;
}

double sigma0_explicit(double r, const SheetParams& p) {
  return v0_explicit_derivative(r, p) + r * r / (2.0 * p.R * p.R);
}

double v0_single_branch(double r, const SheetParams& p) {
  if (wrinkling_regime(p))
    throw ValidationError("effective.regime",
                          "single-branch minimizer only applies in the tension-only regime");
  const double R2 = p.R * p.R;
  return -3.0 * r * r * r / (16.0 * R2) + p.r0 * p.r0 * r / (16.0 * R2);
}

namespace {

void check_outer(double r, const SheetParams& p) {
  require_wrinkling(p);
  const double lo = (2.0 * onset_radius(p) + p.r0) / 3.0;
  if (!(r > lo && r <= p.r0))
    throw ValidationError("effective.outer",
                          "closed-form stress only holds on ((2 r_w + r0)/3, r0]; got r=" +
                              std::to_string(r));
}

}  // namespace

double sigma_h_outer(double r, const SheetParams& p) {
  check_outer(r, p);
  return 2.0 * std::sqrt(p.alpha_s) * (p.r0 / r - 1.0);
}

double sigma_h_outer_literal(double r, const SheetParams& p) {
  check_outer(r, p);
  return 4.0 * std::sqrt(p.alpha_s) * (p.r0 / r - 1.0);
}

double f0_energy(const RadialProfile& v, const SheetParams& p) {
  const StaggeredForm form(v.grid_ptr(), p);
  return form.evaluate(v.values(), {}, false).total();
}

double f0_reference_minimum(const SheetParams& p) {
  using boost::math::quadrature::gauss;
  const double R2 = p.R * p.R;
  if (!wrinkling_regime(p)) {
    auto f = [&](double r) {
      const double sig = -9.0 * r * r / (16.0 * R2) + p.r0 * p.r0 / (16.0 * R2) + r * r / (2.0 * R2);
      const double eta = v0_single_branch(r, p) / r;
      return (sig * sig + w_rel(eta, p.alpha_s)) * r;
    };
    return gauss<double, 30>::integrate(f, 0.0, p.r0);
  }
  auto f = [&](double r) {
    const double sig = sigma0_explicit(r, p);
    return (sig * sig + w_rel(v0_explicit(r, p) / r, p.alpha_s)) * r;
  };
  const double r_w = onset_radius(p);
  // The outer piece carries a logarithm; split it to stay at machine precision.
  double outer = 0.0;
  const int pieces = 8;
  for (int i = 0; i < pieces; ++i) {
    const double a = r_w + (p.r0 - r_w) * i / pieces;
    const double b = r_w + (p.r0 - r_w) * (i + 1) / pieces;
    outer += gauss<double, 30>::integrate(f, a, b);
  }
  return gauss<double, 30>::integrate(f, 0.0, r_w) + outer;
}

EffectiveSolution f0_minimize_numeric(const SheetParams& p, const GridPtr& grid,
                                      const DescentOptions& options) {
  validate_params(p);
  const StaggeredForm form(grid, p);
  DescentProblem problem;
  problem.eval = [&](std::span<const double> x, std::span<double> g) {
    return form.evaluate(x, {}, false, g, {}).total();
  };
  problem.metric = [&](std::span<const double>) { return form.metric_f0(); };
  const DescentResult res = minimize_accelerated(problem, std::vector<double>(grid->size(), 0.0), options);

  EffectiveSolution sol;
  sol.v = RadialProfile(grid, res.x);
  sol.sigma = RadialProfile(grid, form.nodal_stress(res.x, {}));
  sol.energy = res.energy;
  sol.r_w = onset_radius(p);
  sol.iterations = res.iterations;
  sol.grad_norm = res.grad_norm;
  return sol;
}

double euler_lagrange_residual(const RadialProfile& v, const SheetParams& p) {
  using boost::math::quadrature::gauss;
  const RadialGrid& g = v.grid();
  const std::size_t n = g.size();
  const StaggeredForm form(v.grid_ptr(), p);
  const auto sigma = form.cell_stress(v.values(), {});
  const auto mid = form.cell_mid();
  const auto mass = form.cell_mass();

  // Integral of W_rel'(v/s) over [a, b] inside cell c, v linear there.
  auto piece = [&](std::size_t c, double a, double b) {
    const double x0 = c == 0 ? 0.0 : g[c - 1];
    const double f0 = c == 0 ? 0.0 : v[c - 1];
    const double slope = (v[c] - f0) / (g[c] - x0);
    auto f = [&](double s) { return w_rel_prime((f0 + slope * (s - x0)) / s, p.alpha_s); };
    return gauss<double, 7>::integrate(f, a, b);
  };

  std::vector<double> tail(n + 1, 0.0);  // tail[c] = int_{rho_c}^{r0}
  double running = 0.0;
  for (std::size_t c = n; c-- > 0;) {
    running += piece(c, mid[c], g[c]);
    tail[c] = running;
    running += piece(c, c == 0 ? 0.0 : g[c - 1], mid[c]);
  }
  double sum = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    const double res = 2.0 * sigma[c] * mid[c] + tail[c];
    sum += mass[c] * res * res;
  }
  return std::sqrt(sum);
}

RadialProfile sample_minimizer(const GridPtr& grid, const SheetParams& p) {
  std::vector<double> v(grid->size());
  const bool wr = wrinkling_regime(p);
  for (std::size_t j = 0; j < v.size(); ++j)
    v[j] = wr ? v0_explicit((*grid)[j], p) : v0_single_branch((*grid)[j], p);
  return RadialProfile(grid, std::move(v));
}

}  // namespace wrinkle
