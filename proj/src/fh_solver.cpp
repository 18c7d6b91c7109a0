#include "wrinkle/fh_solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "wrinkle/effective.hpp"
#include "wrinkle/errors.hpp"

namespace wrinkle {

double fh_energy(const RadialProfile& v, const RadialProfile& w, const SheetParams& p) {
  const StaggeredForm form(v.grid_ptr(), p);
  return form.evaluate(v.values(), w.values(), false).total();
}

namespace {

void check_resolution(const SheetParams& p, const RadialGrid& grid) {
  const double r_w = onset_radius(p);
  if (r_w >= p.r0) return;
  const double gap = grid.max_gap_in(r_w - 2.0 * p.h, r_w + 2.0 * p.h);
  if (gap > 0.25 * p.h) {
    std::ostringstream os;
    os << "grid spacing " << gap << " near r_w exceeds h/4 = " << 0.25 * p.h;
    throw ValidationError("fh.resolution", os.str());
  }
}

}  // namespace

FhSolution fh_minimize(const SheetParams& p, const GridPtr& grid, const FhOptions& options) {
  validate_params(p);
  check_resolution(p, *grid);
  const std::size_t n = grid->size();
  const StaggeredForm form(grid, p);

  const RadialProfile v0 = sample_minimizer(grid, p);
  std::vector<double> x(2 * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) x[2 * j] = v0[j];
  if (options.seed) {
    std::mt19937_64 rng(*options.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(v0[j]));
    scale *= options.perturbation;
    for (std::size_t j = 0; j < n; ++j) {
      const double r = (*grid)[j] / p.r0;
      x[2 * j] += scale * unit(rng) * r;
      x[2 * j + 1] += scale * p.h * unit(rng);
    }
  }

  std::vector<double> v(n), w(n), gv(n), gw(n);
  auto split = [&](std::span<const double> xs) {
    for (std::size_t j = 0; j < n; ++j) {
      v[j] = xs[2 * j];
      w[j] = xs[2 * j + 1];
    }
  };
  DescentProblem problem;
  problem.eval = [&](std::span<const double> xs, std::span<double> g) {
    split(xs);
    if (g.empty()) return form.evaluate(v, w, true).total();
    const double e = form.evaluate(v, w, true, gv, gw).total();
    for (std::size_t j = 0; j < n; ++j) {
      g[2 * j] = gv[j];
      g[2 * j + 1] = gw[j];
    }
    return e;
  };
  problem.metric = [&](std::span<const double> xs) {
    split(xs);
    return form.metric_fh(v, w);
  };
  const DescentResult res = minimize_accelerated(problem, std::move(x), options.descent);
  split(res.x);

  FhSolution sol;
  sol.min_stress = form.min_stress(v, w);
  if (sol.min_stress < options.stress_floor) {
    std::ostringstream os;
    os << "positive part active at convergence: min radial stress " << sol.min_stress
       << " < " << options.stress_floor;
    throw NumericalError("fh.positive_part", os.str());
  }
  sol.terms = form.evaluate(v, w, false);
  sol.energy = sol.terms.total();
  sol.sigma = RadialProfile(grid, form.nodal_stress(v, w));
  sol.v = RadialProfile(grid, v);
  sol.w = RadialProfile(grid, w);
  sol.iterations = res.iterations;
  sol.grad_norm = res.grad_norm;
  sol.history = res.history;
  sol.diagnostics = prop1_diagnostics(sol.v, sol.w, p);
  sol.onset = wrinkled_onset(sol.v, p);
  return sol;
}

double membrane_taylor_remainder(double x, double y, double a, double b) {
  const double s = x + 0.5 * y * y, s0 = a + 0.5 * b * b;
  return s * s - s0 * s0 - 2.0 * s0 * (x - a) - 2.0 * s0 * b * (y - b);
}

double membrane_taylor_remainder_closed(double x, double y, double a, double b) {
  const double s = x + 0.5 * y * y, s0 = a + 0.5 * b * b;
  return (s - s0) * (s - s0) + s0 * (y - b) * (y - b);
}

double wrinkled_onset(const RadialProfile& v, const SheetParams& p) {
  const RadialGrid& g = v.grid();
  const double r_w = onset_radius(p), floor = -2.0 * std::sqrt(p.alpha_s);
  auto q = [&](std::size_t j) { return -2.0 * (v[j] / g[j] - floor); };
  std::size_t j = g.size();
  while (j > 0 && q(j - 1) > 0.0) --j;
  if (j == g.size()) return g.r0();
  if (j == 0) return r_w;
  // q(j - 1) <= 0 < q(j): linear crossing
  const double a = q(j - 1), b = q(j);
  const double cross = g[j - 1] + (g[j] - g[j - 1]) * (-a) / (b - a);
  return std::max(r_w, cross);
}

Prop1Diagnostics prop1_diagnostics(const RadialProfile& v, const RadialProfile& w,
                                   const SheetParams& p) {
  const RadialGrid& g = v.grid();
  const std::size_t n = g.size();
  const RadialProfile v0 = sample_minimizer(v.grid_ptr(), p);
  std::vector<double> w2(n), dv2(n);
  for (std::size_t j = 0; j < n; ++j) {
    w2[j] = w[j] * w[j];
    dv2[j] = (v[j] - v0[j]) * (v[j] - v0[j]);
  }
  Prop1Diagnostics d;
  d.w_sq = g.integrate(w2);
  d.v_gap_sq = g.integrate(dv2);
  // w is piecewise linear in the solver's discretization, so w' is constant
  // per cell and its square integrates exactly against the cell mass.
  for (std::size_t c = 1; c < n; ++c) {
    const double a = g[c - 1], b = g[c];
    const double slope = (w[c] - w[c - 1]) / (b - a);
    d.w_prime_sq += slope * slope * 0.5 * (b * b - a * a);
  }
  return d;
}

Prop1Diagnostics prop1_diagnostics(const FhSolution& sol, const SheetParams& p) {
  return prop1_diagnostics(sol.v, sol.w, p);
}

}  // namespace wrinkle
