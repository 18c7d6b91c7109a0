#include "wrinkle/scaling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "wrinkle/ansatz.hpp"
#include "wrinkle/effective.hpp"
#include "wrinkle/errors.hpp"
#include "wrinkle/fh_solver.hpp"

namespace wrinkle {

namespace {

double sup_theta_slope(const FourierField& w) {
  const std::size_t M = 4 * required_samples(w.k_max());
  double sup = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const auto modes = w.modes(j);
    if (std::all_of(modes.begin(), modes.end(), [](const Mode& m) { return m.k == 0; })) continue;
    for (double x : w.sample(j, M).f_t) sup = std::max(sup, std::abs(x));
  }
  return sup;
}

void run_case(SweepRecord& rec, SheetParams q, double min_F0, const SweepOptions& options) {
  q.h = rec.h;
  rec.min_F0 = min_F0;
  if (validate_params(q).regime != Regime::wrinkling)
    throw ValidationError("sweep.regime", "parameters are in the tension-only regime");
  const std::size_t n = options.n_nodes ? options.n_nodes : default_node_count(q);
  const GridPtr grid = make_grid(q, n, options.refinement);
  rec.n_nodes = grid->size();

  const FhSolution sol = fh_minimize(q, grid);
  rec.min_Fh = sol.energy;
  rec.onset = sol.onset;

  const AnsatzParams ap = choose_parameters(rec.h);
  rec.delta = ap.delta;
  rec.N = ap.N;
  const AnsatzField an = build_ansatz(sol, q, ap);
  const Deformation d{an.u_r, an.u_theta, an.w};
  rec.k_max = d.k_max();
  rec.M = required_samples(rec.k_max);

  const Decomposition dec = decomposed_energy(d, q, {.M = 0, .backend = options.backend});
  rec.E_h_ansatz = dec.full.total;
  rec.epsilon = rec.E_h_ansatz - rec.min_F0;
  rec.epsilon_fh = rec.E_h_ansatz - rec.min_Fh;
  for (double b : dec.B.values()) rec.B_max = std::max(rec.B_max, b);
  for (std::size_t j = 0; j < an.sigma.size(); ++j)
    rec.sigma_defect = std::max(rec.sigma_defect, std::abs(an.sigma[j] - an.sigma_tilde[j]));
  rec.sup_slope = sup_theta_slope(an.w);

  if (rec.epsilon_fh < -options.epsilon_tolerance * std::abs(rec.min_Fh))
    rec.status = "sweep.negative_excess";
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SheetParams& p, std::span<const double> h_list,
                                   const SweepOptions& options) {
  for (std::size_t i = 1; i < h_list.size(); ++i)
    if (!(h_list[i] < h_list[i - 1]))
      throw ValidationError("sweep.order", "h values must be strictly decreasing");
  const double min_F0 = f0_reference_minimum(p);

  std::vector<SweepRecord> records(h_list.size());
  const int count = static_cast<int>(h_list.size());
#pragma omp parallel for num_threads(std::max(1, options.jobs)) schedule(dynamic, 1)
  for (int i = 0; i < count; ++i) {
    SweepRecord& rec = records[i];
    rec.h = h_list[i];
    const auto start = std::chrono::steady_clock::now();
    try {
      run_case(rec, p, min_F0, options);
    } catch (const Error& e) {
      rec.status = e.code();
    } catch (const std::exception&) {
      rec.status = "internal";
    }
    rec.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return records;
}

std::vector<double> geometric_h(double start, double stop, int points) {
  if (!(start > stop && stop > 0.0 && points >= 2))
    throw ValidationError("sweep.range", "need start > stop > 0 and at least two points");
  std::vector<double> h(points);
  const double ratio = std::log(stop / start) / (points - 1);
  for (int i = 0; i < points; ++i) h[i] = start * std::exp(ratio * i);
  h.back() = stop;
  return h;
}

std::size_t planned_samples(const SheetParams& p, double h) {
  const AnsatzParams ap = choose_parameters(h);
  const double c_max = std::pow(p.alpha_s, 0.25) * p.r0 / std::sqrt(h);
  const int k_w = ap.N * static_cast<int>(std::ceil((c_max + 0.5) / ap.tau));
  return required_samples(2 * k_w);  // u_theta carries sums of two lattice modes
}

std::vector<double> default_h_list(const SheetParams& p, double start, std::size_t budget) {
  std::vector<double> out;
  for (double h = start; h > 1e-8; h /= 2.0) {
    SheetParams q = p;
    q.h = h;
    if (planned_samples(q, h) * default_node_count(q) > budget) break;
    out.push_back(h);
  }
  return out;
}

SlopeFit fit_slope(std::span<const double> x, std::span<const double> y, double min_decades) {
  if (x.size() != y.size()) throw ValidationError("fit.size", "x and y differ in length");
  if (x.size() < 4) throw ValidationError("fit.points", "slope fit needs at least 4 points");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0))
      throw ValidationError("fit.nonpositive", "log-log fit needs positive data");
    lo = std::min(lo, x[i]);
    hi = std::max(hi, x[i]);
  }
  SlopeFit fit;
  fit.points = x.size();
  fit.decades = std::log10(hi / lo);
  if (fit.decades < min_decades - 1e-12)
    throw ValidationError("fit.spread", "x spans fewer decades than required");

  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = std::log(y[i]) - fit.intercept - fit.slope * std::log(x[i]);
    ssr += e * e;
  }
  fit.stderr_slope = std::sqrt(ssr / (n - 2.0) / sxx);
  return fit;
}

double kappa(double t, double c1) {
  return std::exp(c1 * std::sqrt(std::log(t)) * std::log(std::log(t)));
}

BoundFits fit_bounds(std::span<const SweepRecord> records) {
  BoundFits f;
  f.c0 = f.ratio_min = std::numeric_limits<double>::infinity();
  f.c1 = -std::numeric_limits<double>::infinity();
  for (const SweepRecord& r : records) {
    if (!r.ok() || !(r.epsilon > 0.0)) continue;
    const double ratio = r.epsilon / r.h;
    f.c0 = std::min(f.c0, ratio);
    f.ratio_min = std::min(f.ratio_min, ratio);
    f.ratio_max = std::max(f.ratio_max, ratio);
    const double L = std::log(1.0 / r.h);
    if (std::log(L) > 0.0) f.c1 = std::max(f.c1, std::log(ratio) / (std::sqrt(L) * std::log(L)));
    ++f.points;
  }
  if (f.points == 0) f = BoundFits{};
  return f;
}

}  // namespace wrinkle
