#include "wrinkle/lemma1.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wrinkle/relaxed.hpp"

namespace wrinkle {

namespace {

std::size_t nearest_node(const RadialGrid& g, double r) {
  std::size_t j = g.locate(r);
  if (j + 1 < g.size() && std::abs(g[j + 1] - r) < std::abs(g[j] - r)) ++j;
  return j;
}

}  // namespace

std::optional<Lemma1Case> lemma1_check(const Decomposition& dec, std::size_t j0, std::size_t j1,
                                       const SheetParams& p) {
  const RadialGrid& g = dec.W_r.grid();
  if (!(j0 < j1 && j1 < g.size())) return std::nullopt;
  const double rho0 = g[j0], rho1 = g[j1];
  if (!(rho1 < std::sqrt(2.0) * rho0) || !(rho1 < p.r0)) return std::nullopt;

  const double floor = -2.0 * std::sqrt(p.alpha_s);
  const double delta = std::min(floor - dec.eta[j0], floor - dec.eta[j1]);
  if (!(delta > 0.0)) return std::nullopt;

  Lemma1Case c;
  c.rho0 = rho0;
  c.rho1 = rho1;
  c.delta_param = delta;
  for (std::size_t j : {j0, j1}) c.lhs += dec.W_r[j] - w_rel(dec.eta[j], p.alpha_s);
  // mean of B over (rho0, rho1), trapezoid in r
  double integral = 0.0;
  for (std::size_t j = j0; j < j1; ++j)
    integral += 0.5 * (dec.B[j] + dec.B[j + 1]) * (g[j + 1] - g[j]);
  const double l = rho1 - rho0;
  c.lhs += integral / l;

  const double sa = std::sqrt(p.alpha_s);
  const double t1 = delta * delta / 4.0;
  const double t2 = delta / 8.0 * (l / rho0) * (l / rho0) * sa;
  const double t3 =
      delta / 2.0 / (32.0 / sa * (rho0 / l) * (rho0 / l) + 8.0 * sa * (l / p.h) * (l / p.h));
  c.rhs = std::min({t1, t2, t3});
  c.holds = c.lhs >= c.rhs - 1e-12;
  return c;
}

std::vector<Lemma1Case> lemma1_sample(const Decomposition& dec, const SheetParams& p,
                                      std::size_t count, std::uint64_t seed) {
  const RadialGrid& g = dec.W_r.grid();
  const double r_w = onset_radius(p);
  const double a = (2.0 * r_w + p.r0) / 3.0, b = (r_w + 2.0 * p.r0) / 3.0;
  const double l_max = std::pow(p.alpha_s, -0.25) * std::sqrt(r_w * p.h);

  std::mt19937_64 rng(seed);
  std::vector<Lemma1Case> cases;
  for (std::size_t tries = 0; cases.size() < count && tries < 20 * count; ++tries) {
    const double rho0 = std::uniform_real_distribution<double>(a, b)(rng);
    const double top = std::min({p.r0, std::sqrt(2.0) * rho0, rho0 + l_max});
    const double rho1 = std::uniform_real_distribution<double>(rho0, top)(rng);
    const auto c = lemma1_check(dec, nearest_node(g, rho0), nearest_node(g, rho1), p);
    if (c) cases.push_back(*c);
  }
  return cases;
}

}  // namespace wrinkle
