#include "wrinkle/fourier_field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "wrinkle/errors.hpp"
#include "wrinkle/profile.hpp"

namespace wrinkle {

std::string_view to_string(Parity parity) {
  switch (parity) {
    case Parity::cosine: return "cosine";
    case Parity::sine: return "sine";
    case Parity::mixed: return "mixed";
  }
  return "mixed";
}

FourierField::FourierField(GridPtr grid, Parity parity, std::vector<std::vector<Mode>> modes,
                           bool derivatives)
    : grid_(std::move(grid)), parity_(parity), modes_(std::move(modes)), analytic_(derivatives) {
  if (!grid_) throw ValidationError("field.grid", "field needs a grid");
  if (modes_.size() != grid_->size())
    throw ValidationError("field.size", "field has one mode list per grid node");
  for (const auto& list : modes_) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Mode& m = list[i];
      if (m.k < 0) throw ValidationError("field.k", "wavenumbers must be >= 0");
      if (i > 0 && m.k <= list[i - 1].k)
        throw ValidationError("field.order", "modes must be sorted by strictly increasing k");
      for (double v : {m.c, m.s, m.c_r, m.s_r, m.c_rr, m.s_rr})
        if (!std::isfinite(v)) throw NumericalError("field.finite", "mode amplitudes must be finite");
      const bool has_s = m.s != 0.0 || m.s_r != 0.0 || m.s_rr != 0.0;
      const bool has_c = m.c != 0.0 || m.c_r != 0.0 || m.c_rr != 0.0;
      if (parity_ == Parity::cosine && has_s)
        throw ValidationError("field.parity", "cosine field carries a sine amplitude");
      if (parity_ == Parity::sine && has_c)
        throw ValidationError("field.parity", "sine field carries a cosine amplitude");
      k_max_ = std::max(k_max_, m.k);
    }
  }
  if (!analytic_) *this = with_fd_derivatives();
}

FourierField FourierField::zero(GridPtr grid, Parity parity) {
  const std::size_t n = grid->size();
  return FourierField(std::move(grid), parity, std::vector<std::vector<Mode>>(n), true);
}

double FourierField::mean(std::size_t j) const {
  const auto& list = modes_[j];
  return (!list.empty() && list.front().k == 0) ? list.front().c : 0.0;
}

double FourierField::mean_square_slope(std::size_t j) const {
  double sum = 0.0;
  for (const Mode& m : modes_[j]) {
    const double k = m.k;
    sum += 0.5 * k * k * (m.c * m.c + m.s * m.s);
  }
  return sum;
}

FourierField FourierField::with_fd_derivatives() const {
  const RadialGrid& g = *grid_;
  const std::size_t n = g.size();
  std::map<int, std::pair<std::vector<double>, std::vector<double>>> table;
  for (std::size_t j = 0; j < n; ++j) {
    for (const Mode& m : modes_[j]) {
      auto [it, fresh] = table.try_emplace(m.k);
      if (fresh) {
        it->second.first.assign(n, 0.0);
        it->second.second.assign(n, 0.0);
      }
      it->second.first[j] = m.c;
      it->second.second[j] = m.s;
    }
  }
  std::vector<std::vector<Mode>> out(n);
  for (const auto& [k, cs] : table) {
    const auto c1 = fd_first(g, cs.first), c2 = fd_second(g, cs.first);
    const auto s1 = fd_first(g, cs.second), s2 = fd_second(g, cs.second);
    for (std::size_t j = 0; j < n; ++j) {
      Mode m{k, cs.first[j], cs.second[j], c1[j], s1[j], c2[j], s2[j]};
      if (m.c != 0.0 || m.s != 0.0 || m.c_r != 0.0 || m.s_r != 0.0 || m.c_rr != 0.0 ||
          m.s_rr != 0.0)
        out[j].push_back(m);
    }
  }
  FourierField f;
  f.grid_ = grid_;
  f.parity_ = parity_;
  f.modes_ = std::move(out);
  f.k_max_ = k_max_;
  f.analytic_ = false;
  return f;
}

FourierField FourierField::rotated(double phase) const {
  FourierField f = *this;
  for (auto& list : f.modes_) {
    for (Mode& m : list) {
      // c cos(k(t+p)) + s sin(k(t+p)) re-expressed in cos(kt), sin(kt).
      const double ck = std::cos(m.k * phase), sk = std::sin(m.k * phase);
      auto turn = [&](double& c, double& s) {
        const double nc = c * ck + s * sk;
        const double ns = s * ck - c * sk;
        c = nc;
        s = ns;
      };
      turn(m.c, m.s);
      turn(m.c_r, m.s_r);
      turn(m.c_rr, m.s_rr);
    }
  }
  f.parity_ = Parity::mixed;
  return f;
}

AngularSamples FourierField::sample(std::size_t j, std::size_t M) const {
  AngularSamples out;
  for (auto* v : {&out.f, &out.f_r, &out.f_rr, &out.f_t, &out.f_tt, &out.f_rt}) v->assign(M, 0.0);
  for (std::size_t q = 0; q < M; ++q) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(M);
    for (const Mode& m : modes_[j]) {
      const double k = m.k;
      const double co = std::cos(k * theta), si = std::sin(k * theta);
      out.f[q] += m.c * co + m.s * si;
      out.f_r[q] += m.c_r * co + m.s_r * si;
      out.f_rr[q] += m.c_rr * co + m.s_rr * si;
      out.f_t[q] += k * (m.s * co - m.c * si);
      out.f_tt[q] -= k * k * (m.c * co + m.s * si);
      out.f_rt[q] += k * (m.s_r * co - m.c_r * si);
    }
  }
  return out;
}

std::vector<Mode> FourierField::analyze(std::span<const double> samples, int k_max) {
  const std::size_t M = samples.size();
  if (k_max < 0 || M < 2 * static_cast<std::size_t>(k_max) + 1)
    throw ValidationError("field.samples", "analysis needs M >= 2 k_max + 1 samples");
  std::vector<Mode> out;
  for (int k = 0; k <= k_max; ++k) {
    double c = 0.0, s = 0.0;
    for (std::size_t q = 0; q < M; ++q) {
      // Reduce k q mod M before forming the angle so large k stays accurate.
      const auto idx = (static_cast<std::size_t>(k) * q) % M;
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(idx) / static_cast<double>(M);
      c += samples[q] * std::cos(theta);
      s += samples[q] * std::sin(theta);
    }
    const double scale = (k == 0 || 2 * static_cast<std::size_t>(k) == M) ? 1.0 : 2.0;
    c *= scale / static_cast<double>(M);
    s *= scale / static_cast<double>(M);
    if (c != 0.0 || s != 0.0) out.push_back({k, c, k == 0 ? 0.0 : s});
  }
  return out;
}

}  // namespace wrinkle
