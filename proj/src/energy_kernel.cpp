#include <cmath>
#include <numbers>

#include "energy_internal.hpp"

namespace wrinkle::detail {

namespace {

struct Scratch {
  explicit Scratch(std::size_t M)
      : ur(M), ur_r(M), ur_t(M), ut(M), ut_r(M), ut_t(M), w(M), w_r(M), w_rr(M), w_t(M),
        w_tt(M), w_rt(M) {}
  std::vector<double> ur, ur_r, ur_t, ut, ut_r, ut_t, w, w_r, w_rr, w_t, w_tt, w_rt;
};

struct Tables {
  explicit Tables(std::size_t M) : cos(M), sin(M) {
    for (std::size_t i = 0; i < M; ++i) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(M);
      cos[i] = std::cos(t);
      sin[i] = std::sin(t);
    }
  }
  std::vector<double> cos, sin;
};

// Oscillatory (k >= 1) sums used through Parseval.
struct Moments {
  double mean = 0, mean_r = 0, mean_rr = 0;
  double var = 0, var_r = 0, var_rr = 0;
  double slope = 0, slope2 = 0;  // mean (d_t f)^2, mean (d_tt f)^2
};

Moments moments(std::span<const Mode> modes) {
  Moments m;
  for (const Mode& md : modes) {
    if (md.k == 0) {
      m.mean = md.c;
      m.mean_r = md.c_r;
      m.mean_rr = md.c_rr;
      continue;
    }
    const double k2 = double(md.k) * md.k;
    const double a2 = 0.5 * (md.c * md.c + md.s * md.s);
    m.var += a2;
    m.var_r += 0.5 * (md.c_r * md.c_r + md.s_r * md.s_r);
    m.var_rr += 0.5 * (md.c_rr * md.c_rr + md.s_rr * md.s_rr);
    m.slope += k2 * a2;
    m.slope2 += k2 * k2 * a2;
  }
  return m;
}

void zero(std::vector<double>& v) { std::fill(v.begin(), v.end(), 0.0); }

// Adds the modes into f (and optionally its r, rr, t, tt, rt derivatives).
void synthesize(std::span<const Mode> modes, const Tables& tab, double* f, double* f_r,
                double* f_rr, double* f_t, double* f_tt, double* f_rt, std::size_t M) {
  for (const Mode& md : modes) {
    const double k = md.k;
    std::size_t idx = 0;
    const auto step = static_cast<std::size_t>(md.k) % M;
    for (std::size_t q = 0; q < M; ++q) {
      const double cq = tab.cos[idx], sq = tab.sin[idx];
      const double val = md.c * cq + md.s * sq;
      f[q] += val;
      if (f_r) f_r[q] += md.c_r * cq + md.s_r * sq;
      if (f_rr) f_rr[q] += md.c_rr * cq + md.s_rr * sq;
      if (f_t) f_t[q] += k * (md.s * cq - md.c * sq);
      if (f_tt) f_tt[q] -= k * k * val;
      if (f_rt) f_rt[q] += k * (md.s_r * cq - md.c_r * sq);
      idx += step;
      if (idx >= M) idx -= M;
    }
  }
}

}  // namespace

std::vector<NodeEnergy> node_energies_parallel(const Deformation& d, const SheetParams& p,
                                               std::size_t M) {
  const RadialGrid& grid = d.grid();
  const std::size_t n = grid.size();
  const Tables tab(M);
  const double h2 = p.h * p.h, sub = p.alpha_s / h2, invR = 1.0 / p.R;
  const double inv_M = 1.0 / static_cast<double>(M);
  std::vector<NodeEnergy> out(n);

#pragma omp parallel
  {
    Scratch s(M);
#pragma omp for schedule(dynamic, 16)
    for (std::size_t j = 0; j < n; ++j) {
      const double r = grid[j], ir = 1.0 / r;
      for (auto* v : {&s.ur, &s.ur_r, &s.ur_t, &s.ut, &s.ut_r, &s.ut_t, &s.w, &s.w_r, &s.w_rr,
                      &s.w_t, &s.w_tt, &s.w_rt})
        zero(*v);
      synthesize(d.u_r.modes(j), tab, s.ur.data(), s.ur_r.data(), nullptr, s.ur_t.data(),
                 nullptr, nullptr, M);
      synthesize(d.u_theta.modes(j), tab, s.ut.data(), s.ut_r.data(), nullptr, s.ut_t.data(),
                 nullptr, nullptr, M);
      synthesize(d.w.modes(j), tab, s.w.data(), s.w_r.data(), s.w_rr.data(), s.w_t.data(),
                 s.w_tt.data(), s.w_rt.data(), M);

      const Moments mu = moments(d.u_r.modes(j));
      const Moments mw = moments(d.w.modes(j));
      const double slope_r = mw.mean_r - r * invR;  // d_r xi-bar
      const double mean_err = mu.mean_r + 0.5 * (slope_r * slope_r + mw.var_r);
      const double mean_ett = mu.mean * ir + 0.5 * mw.slope * ir * ir;
      const double curv = mw.mean_rr - invR;

      double radial = 0, hoop = 0, shear = 0, baz = 0, brad = 0, twist = 0, subs = 0;
      double t1 = 0, t2 = 0, t4 = 0;
      for (std::size_t q = 0; q < M; ++q) {
        const double xr = s.w_r[q] - r * invR;
        const double xt = s.w_t[q];
        const double err = s.ur_r[q] + 0.5 * xr * xr;
        const double ett = (s.ut_t[q] + s.ur[q]) * ir + 0.5 * xt * xt * ir * ir;
        const double sa = (s.ur_t[q] + xr * xt) * ir + s.ut_r[q] - s.ut[q] * ir;
        const double xrr = s.w_rr[q] - invR;
        radial += err * err;
        hoop += ett * ett;
        shear += sa * sa;
        baz += s.w_tt[q] * s.w_tt[q];
        brad += xrr * xrr;
        twist += s.w_rt[q] * s.w_rt[q];
        subs += s.w[q] * s.w[q];
        t1 += (err - mean_err) * (err - mean_err);
        t2 += (ett - mean_ett) * (ett - mean_ett);
        t4 += (xrr - curv) * (xrr - curv);
      }
      NodeEnergy& e = out[j];
      const double ir4 = ir * ir * ir * ir;
      e.radial = radial * inv_M;
      e.hoop = hoop * inv_M;
      e.shear = 0.5 * shear * inv_M;
      e.bend_az = h2 * ir4 * baz * inv_M;
      e.bend_rad = h2 * brad * inv_M;
      e.twist = 2.0 * h2 * ir * ir * twist * inv_M;
      e.substrate = sub * subs * inv_M;
      e.t = {t1 * inv_M, t2 * inv_M, e.shear, h2 * t4 * inv_M, e.twist};
      e.B = mw.var_r;
      e.eta = mu.mean * ir;
      e.sigma = mw.slope * ir * ir;
      e.effective_radial = mean_err * mean_err;
      e.circle = mean_ett * mean_ett + h2 * ir4 * mw.slope2 + sub * mw.var;
      e.substrate_mean = sub * mw.mean * mw.mean;
      e.bending_mean = h2 * curv * curv;
    }
  }
  return out;
}

}  // namespace wrinkle::detail
