#include "wrinkle/staggered.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wrinkle/errors.hpp"
#include "wrinkle/relaxed.hpp"

namespace wrinkle {

namespace {

struct LocalVar {
  std::size_t index;
  double ca;  // d a / d x
  double cb;  // d b / d x
};

void add_local(BandedSpd& m, const std::vector<LocalVar>& vars, double haa, double hab, double hbb) {
  for (std::size_t p = 0; p < vars.size(); ++p) {
    for (std::size_t q = p; q < vars.size(); ++q) {
      const auto& x = vars[p];
      const auto& y = vars[q];
      const double val = x.ca * y.ca * haa + (x.ca * y.cb + x.cb * y.ca) * hab + x.cb * y.cb * hbb;
      m.add(x.index, y.index, val);
    }
  }
}

}  // namespace

StaggeredForm::StaggeredForm(GridPtr grid, SheetParams p) : grid_(std::move(grid)), p_(p) {
  const RadialGrid& g = *grid_;
  const std::size_t n = g.size();
  if (n < 3) throw ValidationError("grid.n", "radial functionals need at least three nodes");
  mid_.resize(n);
  len_.resize(n);
  mass_.resize(n);
  moments_.resize(n);
  const double xi = std::sqrt(0.6);
  for (std::size_t c = 0; c < n; ++c) {
    const double a = c == 0 ? 0.0 : g[c - 1];
    const double b = g[c];
    mid_[c] = 0.5 * (a + b);
    len_[c] = b - a;
    mass_[c] = 0.5 * (b * b - a * a);
    const double half = 0.5 * len_[c];
    const std::array<double, 3> t{-xi, 0.0, xi};
    const std::array<double, 3> wt{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    // Three Gauss points integrate t^4 r exactly, so these are exact.
    std::array<double, 3> rq{}, wq{};
    for (int q = 0; q < 3; ++q) {
      rq[q] = mid_[c] + half * t[q];
      wq[q] = half * wt[q] * rq[q] / mass_[c];
    }
    Moments& m = moments_[c];
    for (int q = 0; q < 3; ++q) m.mean += wq[q] * rq[q];
    for (int q = 0; q < 3; ++q) {
      const double d = rq[q] - m.mean;
      m.c2 += wq[q] * d * d;
      m.c3 += wq[q] * d * d * d;
      m.c4 += wq[q] * d * d * d * d;
    }
  }
  d2_.resize(n);
  d2_center_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t m = std::clamp<std::size_t>(j, 1, n - 2);
    const double x0 = g[m - 1], x1 = g[m], x2 = g[m + 1];
    d2_center_[j] = m;
    d2_[j] = {2.0 / ((x0 - x1) * (x0 - x2)), 2.0 / ((x1 - x0) * (x1 - x2)),
              2.0 / ((x2 - x0) * (x2 - x1))};
  }
}

double StaggeredForm::dv(std::span<const double> v, std::size_t c) const {
  return (v[c] - (c == 0 ? 0.0 : v[c - 1])) / len_[c];
}

double StaggeredForm::dw(std::span<const double> w, std::size_t c) const {
  if (w.empty() || c == 0) return 0.0;
  return (w[c] - w[c - 1]) / len_[c];
}

StaggeredForm::Terms StaggeredForm::evaluate(std::span<const double> v, std::span<const double> w,
                                             bool convexified, std::span<double> grad_v,
                                             std::span<double> grad_w) const {
  const std::size_t n = size();
  if (v.size() != n || (!w.empty() && w.size() != n))
    throw ValidationError("profile.size", "unknowns do not match the grid");
  const bool with_grad = !grad_v.empty();
  if (with_grad) {
    std::fill(grad_v.begin(), grad_v.end(), 0.0);
    std::fill(grad_w.begin(), grad_w.end(), 0.0);
  }
  Terms t;
  const double R = p_.R;
  for (std::size_t c = 0; c < n; ++c) {
    const Moments& m = moments_[c];
    const double a = dv(v, c);
    const double b = dw(w, c);
    const double e = m.mean / R - b;
    double s = a + 0.5 * (e * e + m.c2 / (R * R));
    if (convexified) s = std::max(s, 0.0);
    const double spread = e * e * m.c2 / (R * R) + e * m.c3 / (R * R * R) +
                          (m.c4 - m.c2 * m.c2) / (4.0 * R * R * R * R);
    t.membrane += mass_[c] * (s * s + spread);
    if (with_grad) {
      const double ga = 2.0 * mass_[c] * s;
      const double gb =
          mass_[c] * (-2.0 * s * e - 2.0 * e * m.c2 / (R * R) - m.c3 / (R * R * R));
      grad_v[c] += ga / len_[c];
      if (c > 0) grad_v[c - 1] -= ga / len_[c];
      if (!w.empty() && c > 0) {
        grad_w[c] += gb / len_[c];
        grad_w[c - 1] -= gb / len_[c];
      }
    }
  }
  const RadialGrid& g = *grid_;
  const auto omega = g.dual_weights();
  const double spring = p_.alpha_s / (p_.h * p_.h);
  const double h2 = p_.h * p_.h;
  for (std::size_t j = 0; j < n; ++j) {
    const double eta = v[j] / g[j];
    t.relaxed += omega[j] * w_rel(eta, p_.alpha_s);
    if (with_grad) grad_v[j] += omega[j] * w_rel_prime(eta, p_.alpha_s) / g[j];
    if (w.empty()) continue;
    t.substrate += spring * omega[j] * w[j] * w[j];
    const std::size_t m = d2_center_[j];
    const double curv = d2_[j][0] * w[m - 1] + d2_[j][1] * w[m] + d2_[j][2] * w[m + 1] - 1.0 / p_.R;
    t.bending += h2 * omega[j] * curv * curv;
    if (with_grad) {
      grad_w[j] += 2.0 * spring * omega[j] * w[j];
      for (int i = 0; i < 3; ++i) grad_w[m - 1 + i] += 2.0 * h2 * omega[j] * curv * d2_[j][i];
    }
  }
  return t;
}

std::vector<double> StaggeredForm::cell_stress(std::span<const double> v,
                                               std::span<const double> w) const {
  std::vector<double> s(size());
  for (std::size_t c = 0; c < size(); ++c) {
    const Moments& m = moments_[c];
    const double e = m.mean / p_.R - dw(w, c);
    s[c] = dv(v, c) + 0.5 * (e * e + m.c2 / (p_.R * p_.R));
  }
  return s;
}

double StaggeredForm::min_stress(std::span<const double> v, std::span<const double> w) const {
  const auto s = cell_stress(v, w);
  return *std::min_element(s.begin(), s.end());
}

std::vector<double> StaggeredForm::nodal_stress(std::span<const double> v,
                                                std::span<const double> w) const {
  const auto s = cell_stress(v, w);
  const RadialGrid& g = *grid_;
  const std::size_t n = size();
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t c0 = std::min(j, n - 2);
    const double t = (g[j] - mid_[c0]) / (mid_[c0 + 1] - mid_[c0]);
    out[j] = (1.0 - t) * s[c0] + t * s[c0 + 1];
  }
  return out;
}

BandedSpd StaggeredForm::metric_f0() const {
  const std::size_t n = size();
  BandedSpd m(n, 1);
  for (std::size_t c = 0; c < n; ++c) {
    const double haa = 2.0 * mass_[c];
    std::vector<LocalVar> vars{{c, 1.0 / len_[c], 0.0}};
    if (c > 0) vars.push_back({c - 1, -1.0 / len_[c], 0.0});
    add_local(m, vars, haa, 0.0, 0.0);
  }
  const auto omega = grid_->dual_weights();
  for (std::size_t j = 0; j < n; ++j) m.add(j, j, 2.0 * omega[j] / ((*grid_)[j] * (*grid_)[j]));
  return m;
}

BandedSpd StaggeredForm::metric_fh(std::span<const double> v, std::span<const double> w) const {
  const std::size_t n = size();
  BandedSpd m(2 * n, 4);
  for (std::size_t c = 0; c < n; ++c) {
    const Moments& mo = moments_[c];
    const double e = mo.mean / p_.R - dw(w, c);
    const double c2 = mo.c2 / (p_.R * p_.R);
    const double s = std::max(dv(v, c) + 0.5 * (e * e + c2), 0.0);
    const double haa = 2.0 * mass_[c];
    const double hab = -2.0 * mass_[c] * e;
    const double hbb = 2.0 * mass_[c] * (e * e + s + c2);
    const double inv = 1.0 / len_[c];
    std::vector<LocalVar> vars{{2 * c, inv, 0.0}};
    if (c > 0) {
      vars.push_back({2 * (c - 1), -inv, 0.0});
      vars.push_back({2 * c + 1, 0.0, inv});
      vars.push_back({2 * (c - 1) + 1, 0.0, -inv});
    }
    add_local(m, vars, haa, hab, hbb);
  }
  const RadialGrid& g = *grid_;
  const auto omega = g.dual_weights();
  const double spring = p_.alpha_s / (p_.h * p_.h);
  const double h2 = p_.h * p_.h;
  for (std::size_t j = 0; j < n; ++j) {
    m.add(2 * j, 2 * j, 2.0 * omega[j] / (g[j] * g[j]));
    m.add(2 * j + 1, 2 * j + 1, 2.0 * spring * omega[j]);
    const std::size_t c = d2_center_[j];
    for (int i = 0; i < 3; ++i)
      for (int k = i; k < 3; ++k) {
        const double val = 2.0 * h2 * omega[j] * d2_[j][i] * d2_[j][k];
        m.add(2 * (c - 1 + i) + 1, 2 * (c - 1 + k) + 1, val);
      }
  }
  return m;
}

}  // namespace wrinkle
