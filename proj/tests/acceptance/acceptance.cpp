// Acceptance checks at the reference parameters alpha_s = 1e-4, r0 = 0.5, R = 1.
// Usage: acceptance <criterion 1..12>. Prints one PASS/FAIL line, plus
// diagnostics for the scaling checks, and exits nonzero on FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "wrinkle/ansatz.hpp"
#include "wrinkle/effective.hpp"
#include "wrinkle/energy.hpp"
#include "wrinkle/errors.hpp"
#include "wrinkle/fh_solver.hpp"
#include "wrinkle/lemma1.hpp"
#include "wrinkle/mask.hpp"
#include "wrinkle/relaxed.hpp"
#include "wrinkle/report.hpp"
#include "wrinkle/scaling.hpp"

using namespace wrinkle;

namespace {

const SheetParams kRef{1e-4, 0.5, 1.0, 1e-3};

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::string sci(double x) { return fmt("%.3e", x); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Outcome c01() {
  const double a = kRef.alpha_s, sa = std::sqrt(a), eta = -2.0 * sa;
  // both branch formulas, evaluated at the branch point
  const double quad = eta * eta, lin = -4.0 * sa * (sa + eta);
  const double dquad = 2.0 * eta, dlin = -4.0 * sa;
  double over = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = -0.2 + 0.3 * i / 9999.0;
    over = std::max(over, w_rel(x, a) - x * x);
  }
  const double gap = std::max(std::abs(quad - lin), std::abs(dquad - dlin));
  return {gap <= 1e-12 && over <= 0.0,
          "branch gap " + sci(gap) + ", max(W_rel - eta^2) " + sci(over)};
}

Outcome c02() {
  std::mt19937_64 rng(2);
  const double sa = std::sqrt(kRef.alpha_s);
  std::uniform_real_distribution<double> eta(-0.12, -2.0 * sa), amp(0.0, 3e-3), rad(0.44, 0.5);
  std::uniform_int_distribution<int> wav(10, 150), count(0, 6);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double e = eta(rng);
    if (!(e < -2.0 * sa)) e = -2.0 * sa - 1e-6;
    CircleState s{rad(rng), e, {}};
    for (int m = count(rng); m > 0; --m) s.modes.push_back({wav(rng), amp(rng)});
    const double lhs = excess_circle_energy(s, kRef);
    const double rhs = circle_energy(s, kRef) - w_rel(s.eta, kRef.alpha_s);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(circle_energy(s, kRef), 1e-300));
  }
  return {worst <= 1e-12, "max relative gap " + sci(worst) + " over 1000 states"};
}

Outcome c03() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = u(rng), y = u(rng), a = u(rng), b = u(rng);
    const double d = membrane_taylor_remainder(x, y, a, b);
    const double c = membrane_taylor_remainder_closed(x, y, a, b);
    worst = std::max(worst, std::abs(d - c) / std::max(1.0, std::abs(c)));
  }
  return {worst <= 1e-12, "max gap " + sci(worst) + " over 10^4 quadruples"};
}

Outcome c04() {
  const auto grid = make_grid(kRef, 2000, Refinement::uniform);
  const EffectiveSolution num = f0_minimize_numeric(kRef, grid);
  const RadialProfile exact = sample_minimizer(grid, kRef);
  const double l2 = l2_distance(num.v, exact);
  const double f_exact = f0_energy(exact, kRef);
  const bool energy_ok = f_exact <= num.energy + 1e-8 * std::abs(num.energy);

  // EL residual of the closed-form minimizer under grid doubling
  std::vector<double> res, res_num;
  for (std::size_t n : {1000, 2000, 4000}) {
    const auto g = make_grid(kRef, n, Refinement::uniform);
    res.push_back(euler_lagrange_residual(sample_minimizer(g, kRef), kRef));
    res_num.push_back(euler_lagrange_residual(f0_minimize_numeric(kRef, g).v, kRef));
  }
  double order = 1e300;
  for (std::size_t i = 1; i < res.size(); ++i) order = std::min(order, std::log2(res[i - 1] / res[i]));
  std::printf("  EL residual (closed form) n=1000,2000,4000: %s %s %s\n", sci(res[0]).c_str(),
              sci(res[1]).c_str(), sci(res[2]).c_str());
  std::printf("  EL residual (numeric minimizer):           %s %s %s\n", sci(res_num[0]).c_str(),
              sci(res_num[1]).c_str(), sci(res_num[2]).c_str());
  return {l2 <= 1e-3 * kRef.r0 && energy_ok && order >= 1.8,
          "L2 gap " + sci(l2) + ", F0(v0) - min " + sci(f_exact - num.energy) +
              ", EL order " + fmt("%.2f", order)};
}

struct Prop1Point {
  double h, gap, w_sq, w_prime_sq, v_gap_sq;
};

std::vector<Prop1Point> prop1_sweep() {
  const double f0 = f0_reference_minimum(kRef);
  std::vector<Prop1Point> out;
  for (double h : {6.4e-3, 3.2e-3, 1.6e-3, 8e-4, 4e-4}) {
    SheetParams p = kRef;
    p.h = h;
    const FhSolution s = fh_minimize(p, make_grid(p, default_node_count(p), Refinement::uniform));
    out.push_back({h, std::abs(s.energy - f0), s.diagnostics.w_sq, s.diagnostics.w_prime_sq,
                   s.diagnostics.v_gap_sq});
    std::printf("  h=%-8g |min Fh - min F0|=%s  int w^2=%s  int w'^2=%s  int |v-v0|^2=%s\n", h,
                sci(out.back().gap).c_str(), sci(out.back().w_sq).c_str(),
                sci(out.back().w_prime_sq).c_str(), sci(out.back().v_gap_sq).c_str());
  }
  return out;
}

double slope_of(const std::vector<Prop1Point>& pts, double Prop1Point::*field) {
  std::vector<double> x, y;
  for (const auto& p : pts) {
    x.push_back(p.h);
    y.push_back(p.*field);
  }
  return fit_slope(x, y).slope;
}

Outcome c05() {
  const auto pts = prop1_sweep();
  const double s = slope_of(pts, &Prop1Point::gap);
  return {s >= 1.8, "energy gap slope " + fmt("%.3f", s)};
}

Outcome c06() {
  const auto pts = prop1_sweep();
  const double s_w = slope_of(pts, &Prop1Point::w_sq);
  const double s_wp = slope_of(pts, &Prop1Point::w_prime_sq);
  const double s_v = slope_of(pts, &Prop1Point::v_gap_sq);

  SheetParams p = kRef;
  p.h = 1e-3;
  const auto grid = make_grid(p, 4000, Refinement::uniform);
  const FhSolution s = fh_minimize(p, grid);
  const double lo = (2.0 * onset_radius(p) + p.r0) / 3.0;
  double err_literal = 0.0, err_half = 0.0;
  for (std::size_t j = 0; j < grid->size(); ++j) {
    const double r = (*grid)[j];
    if (r <= lo || r >= p.r0) continue;
    err_literal = std::max(err_literal, rel(s.sigma[j], sigma_h_outer_literal(r, p)));
    err_half = std::max(err_half, rel(s.sigma[j], sigma_h_outer(r, p)));
  }
  std::printf("  sigma_h vs 2 alpha^{1/2}(r0/r - 1): max relative error %s\n", sci(err_half).c_str());
  const bool slopes = s_w >= 3.5 && s_wp >= 1.6 && s_v >= 1.6;
  return {slopes && err_literal <= 1e-3,
          "slopes " + fmt("%.3f", s_w) + ", " + fmt("%.3f", s_wp) + ", " + fmt("%.3f", s_v) +
              "; sigma_h vs 4 alpha^{1/2}(r0/r - 1) max relative error " + sci(err_literal)};
}

FourierField random_field(const GridPtr& g, Parity parity, int k_max, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1e-2, 1e-2);
  std::vector<int> ks{0};
  for (int k = 1; k <= k_max; ++k)
    if (k == k_max || rng() % 3 == 0) ks.push_back(k);
  std::vector<std::vector<Mode>> modes(g->size());
  for (std::size_t j = 0; j < g->size(); ++j) {
    const double r2 = (*g)[j] * (*g)[j];
    for (int k : ks) modes[j].push_back(Mode{k, r2 * u(rng), k == 0 ? 0.0 : r2 * u(rng)});
  }
  return FourierField(g, parity, std::move(modes), false);
}

Outcome c07() {
  SheetParams p = kRef;
  p.h = 2.5e-3;
  const auto grid = make_grid(p, 40, Refinement::uniform);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> kmax(1, 64);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int K = kmax(rng);
    FourierField ur = random_field(grid, Parity::mixed, K, rng);
    FourierField ut = random_field(grid, Parity::mixed, K, rng);
    const FourierField xi = random_field(grid, Parity::mixed, K, rng);
    const Deformation d = Deformation::from_xi(std::move(ur), std::move(ut), xi, p);
    worst = std::max(worst, decomposed_energy(d, p, {}, 1.0).relative_error);
  }
  return {worst <= 1e-10, "max relative error " + sci(worst) + " over 100 deformations"};
}

Outcome c08() {
  using Big = boost::multiprecision::cpp_bin_float_50;
  const Big integral(kMaskSquareIntegralText);
  std::vector<double> err;
  for (int j = 2; j <= 8; ++j) {
    const Big t = Big(1) / Big(1 << j);
    err.push_back(static_cast<double>(abs(riemann_defect(t, Big(0), integral))));
  }
  double order = 1e300;
  std::string list;
  for (std::size_t i = 0; i < err.size(); ++i) {
    list += (i ? " " : "") + sci(err[i]);
    if (i) order = std::min(order, std::log2(err[i - 1] / err[i]));
  }
  std::printf("  |defect| j=2..8: %s\n", list.c_str());
  return {order >= 3.0, "min local order " + fmt("%.2f", order)};
}

std::vector<double> reference_h() { return geometric_h(1e-2, 1.25e-3, 7); }

void print_records(const std::vector<SweepRecord>& recs) {
  std::printf("  %-10s %-11s %-11s %-9s %-9s %-8s\n", "h", "epsilon", "epsilon_Fh", "eps/h",
              "sup|dw|", "status");
  for (const auto& r : recs)
    std::printf("  %-10.4e %-11.4e %-11.4e %-9.4f %-9.4f %s\n", r.h, r.epsilon, r.epsilon_fh,
                r.epsilon / r.h, r.sup_slope, r.status.c_str());
}

Outcome c09() {
  const auto recs = run_sweep(kRef, reference_h());
  print_records(recs);
  std::vector<double> h, eps;
  bool positive = true;
  double ratio_min = 1e300, ratio_max = 0.0;
  for (const auto& r : recs) {
    positive = positive && r.ok() && r.epsilon > 0.0;
    if (r.ok() && r.epsilon > 0.0) {
      h.push_back(r.h);
      eps.push_back(r.epsilon);
      ratio_min = std::min(ratio_min, r.epsilon / r.h);
      ratio_max = std::max(ratio_max, r.epsilon / r.h);
    }
  }
  double slope = 0.0;
  std::string fit = "no fit";
  try {
    // the positive points may span slightly less than a decade
    const SlopeFit f = fit_slope(h, eps, 0.5);
    slope = f.slope;
    fit = "slope " + fmt("%.3f", f.slope) + " +- " + fmt("%.3f", f.stderr_slope) + " over " +
          std::to_string(f.points) + " points";
  } catch (const Error& e) {
    fit = e.code();
  }

  // Where the slope heads: continue the halving below the required range.
  const std::vector<double> ext{1.25e-3, 6.25e-4, 3.125e-4, 1.5625e-4};
  const auto more = run_sweep(kRef, ext);
  std::printf("  extended halving sweep:\n");
  print_records(more);
  for (std::size_t i = 1; i < more.size(); ++i)
    if (more[i].ok() && more[i - 1].ok() && more[i].epsilon > 0 && more[i - 1].epsilon > 0)
      std::printf("  local slope %g -> %g: %.3f\n", more[i - 1].h, more[i].h,
                  std::log(more[i - 1].epsilon / more[i].epsilon) / std::log(2.0));

  const double spread = ratio_max / ratio_min;
  const bool pass = positive && slope >= 0.85 && slope <= 1.15 && spread < 3.0;
  return {pass, fit + ", eps/h spread " + fmt("%.2f", spread) +
                    (positive ? ", eps > 0 everywhere" : ", eps <= 0 at some h")};
}

Outcome c10() {
  SheetParams p = kRef;
  p.h = 2.5e-3;
  const FhSolution sol = fh_minimize(p, make_grid(p, default_node_count(p), Refinement::uniform));
  const AnsatzField an = build_ansatz(sol, p, choose_parameters(p.h));
  const Decomposition dec = decomposed_energy({an.u_r, an.u_theta, an.w}, p);
  const auto cases = lemma1_sample(dec, p, 50, 20240601);
  std::size_t held = 0;
  double margin = 1e300;
  for (const auto& c : cases) {
    held += c.holds;
    margin = std::min(margin, c.lhs - c.rhs);
  }
  return {cases.size() >= 50 && held == cases.size(),
          std::to_string(held) + "/" + std::to_string(cases.size()) +
              " pairs hold, min lhs - rhs " + sci(margin)};
}

Outcome c11() {
  const auto recs = run_sweep(kRef, reference_h());
  print_records(recs);
  bool monotone = true;
  std::vector<double> inv_h, slope;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (!recs[i].ok()) return {false, "h=" + sci(recs[i].h) + " failed: " + recs[i].status};
    if (i && recs[i].sup_slope < recs[i - 1].sup_slope) monotone = false;
    if (recs[i].sup_slope > 0.0) {
      inv_h.push_back(1.0 / recs[i].h);
      slope.push_back(recs[i].sup_slope);
    }
  }
  double exponent = 1e300;
  std::string fit;
  try {
    const SlopeFit f = fit_slope(inv_h, slope, 0.5);
    exponent = f.slope;
    fit = "fitted exponent " + fmt("%.3f", f.slope) + " over " + std::to_string(f.points) + " points";
  } catch (const Error& e) {
    fit = e.code();
  }
  return {monotone && exponent <= 0.1,
          std::string(monotone ? "non-decreasing" : "not monotone") + ", " + fit};
}

std::string strip_runtime(const std::string& csv) {
  std::string out, line;
  for (char ch : csv) {
    if (ch != '\n') {
      line += ch;
      continue;
    }
    out += line.substr(0, line.rfind(',')) + '\n';
    line.clear();
  }
  return out;
}

Outcome c12() {
  const auto h = reference_h();
  const std::string a = strip_runtime(sweep_csv(run_sweep(kRef, h, {.jobs = 1})));
  const std::string b = strip_runtime(sweep_csv(run_sweep(kRef, h, {.jobs = 2})));
  const std::string c = strip_runtime(sweep_csv(run_sweep(kRef, h, {.jobs = 1})));
  return {a == b && a == c, a == b && a == c ? "sweep.csv identical across 3 runs"
                                             : "sweep.csv differs between runs"};
}

struct Criterion {
  std::function<Outcome()> run;
  double time_limit_s;  // 0: none
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {c01, 1},   {c02, 1}, {c03, 1}, {c04, 30}, {c05, 600}, {c06, 0},
      {c07, 60},  {c08, 1}, {c09, 1800}, {c10, 0}, {c11, 0}, {c12, 0}};
  const int n = argc > 1 ? std::atoi(argv[1]) : 0;
  if (n < 1 || n > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "usage: acceptance <1..%zu>\n", criteria.size());
    return 2;
  }
  const Criterion& c = criteria[n - 1];
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = c.run();
  } catch (const Error& e) {
    out = {false, std::string("error ") + e.code() + ": " + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = c.time_limit_s == 0 || elapsed < c.time_limit_s;
  std::printf("ACCEPTANCE %02d %s: %s; %.2fs%s\n", n, out.pass && in_time ? "PASS" : "FAIL",
              out.detail.c_str(), elapsed,
              in_time ? "" : (" exceeds " + fmt("%g", c.time_limit_s) + "s").c_str());
  return out.pass && in_time ? 0 : 1;
}
