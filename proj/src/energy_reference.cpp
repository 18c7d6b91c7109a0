#include <cmath>

#include "energy_internal.hpp"

namespace wrinkle::detail {

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

std::vector<NodeEnergy> node_energies_serial(const Deformation& d, const SheetParams& p,
                                             std::size_t M) {
  const RadialGrid& grid = d.grid();
  const double h2 = p.h * p.h, sub = p.alpha_s / h2;
  std::vector<NodeEnergy> out(grid.size());
  const auto Md = static_cast<double>(M);

  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double r = grid[j];
    const AngularSamples U = d.u_r.sample(j, M);
    const AngularSamples V = d.u_theta.sample(j, M);
    const AngularSamples W = d.w.sample(j, M);

    std::vector<double> err(M), ett(M), sa(M), xr(M), xt(M), xrr(M);
    for (std::size_t q = 0; q < M; ++q) {
      xr[q] = W.f_r[q] - r / p.R;
      xt[q] = W.f_t[q];
      xrr[q] = W.f_rr[q] - 1.0 / p.R;
      err[q] = U.f_r[q] + 0.5 * xr[q] * xr[q];
      ett[q] = V.f_t[q] / r + U.f[q] / r + xt[q] * xt[q] / (2.0 * r * r);
      sa[q] = U.f_t[q] / r + V.f_r[q] - V.f[q] / r + xr[q] * xt[q] / r;
    }
    const double ur_bar = mean_of(U.f), ur_r_bar = mean_of(U.f_r);
    const double w_bar = mean_of(W.f), w_r_bar = mean_of(W.f_r), w_rr_bar = mean_of(W.f_rr);
    const double err_bar = mean_of(err), ett_bar = mean_of(ett), xrr_bar = mean_of(xrr);

    NodeEnergy e;
    double B = 0, xt2 = 0, xtt2 = 0, wvar = 0;
    for (std::size_t q = 0; q < M; ++q) {
      e.radial += err[q] * err[q];
      e.hoop += ett[q] * ett[q];
      e.shear += 0.5 * sa[q] * sa[q];
      e.bend_az += h2 / std::pow(r, 4) * W.f_tt[q] * W.f_tt[q];
      e.bend_rad += h2 * xrr[q] * xrr[q];
      e.twist += 2.0 * h2 / (r * r) * W.f_rt[q] * W.f_rt[q];
      e.substrate += sub * W.f[q] * W.f[q];
      e.t[0] += std::pow(err[q] - err_bar, 2);
      e.t[1] += std::pow(ett[q] - ett_bar, 2);
      e.t[3] += h2 * std::pow(xrr[q] - xrr_bar, 2);
      B += std::pow(W.f_r[q] - w_r_bar, 2);
      xt2 += xt[q] * xt[q];
      xtt2 += W.f_tt[q] * W.f_tt[q];
      wvar += std::pow(W.f[q] - w_bar, 2);
    }
    for (double* x : {&e.radial, &e.hoop, &e.shear, &e.bend_az, &e.bend_rad, &e.twist,
                      &e.substrate, &e.t[0], &e.t[1], &e.t[3], &B, &xt2, &xtt2, &wvar})
      *x /= Md;
    e.t[2] = e.shear;
    e.t[4] = e.twist;
    e.B = B;
    e.eta = ur_bar / r;
    e.sigma = xt2 / (r * r);
    e.effective_radial = std::pow(ur_r_bar + 0.5 * std::pow(r / p.R - w_r_bar, 2) + 0.5 * B, 2);
    e.circle = std::pow(ur_bar / r + xt2 / (2.0 * r * r), 2) + h2 / std::pow(r, 4) * xtt2 +
               sub * wvar;
    e.substrate_mean = sub * w_bar * w_bar;
    e.bending_mean = h2 * std::pow(w_rr_bar - 1.0 / p.R, 2);
    out[j] = e;
  }
  return out;
}

}  // namespace wrinkle::detail
