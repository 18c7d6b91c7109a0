#include "wrinkle/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "wrinkle/errors.hpp"

namespace wrinkle {

namespace {

// Value with first and second derivative in r.
struct Jet {
  double v = 0.0, d = 0.0, dd = 0.0;
};

Jet operator*(const Jet& a, const Jet& b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd};
}
Jet operator*(double s, const Jet& a) { return {s * a.v, s * a.d, s * a.dd}; }
Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
Jet operator-(const Jet& a, const Jet& b) { return {a.v - b.v, a.d - b.d, a.dd - b.dd}; }

Jet sqrt_jet(const Jet& q) {
  const double s = std::sqrt(q.v);
  return {s, q.d / (2.0 * s), q.dd / (2.0 * s) - q.d * q.d / (4.0 * s * q.v)};
}

double mask_center(double r, const SheetParams& p) {
  return std::pow(p.alpha_s, 0.25) * r / std::sqrt(p.h);
}

// The cutoff starts at the onset of v_h's wrinkled branch rather than at r_w:
// v_h differs from v0 by O(h), which moves the zero of the radicand about 3h
// outward, past the unit-h ramp.
double cutoff_anchor(const FhSolution& sol, const SheetParams& p) {
  return sol.onset > 0.0 ? sol.onset : wrinkled_onset(sol.v, p);
}

// A as a jet from v_h and its derivatives at radius r.
Jet amplitude_jet(double r, const Jet& v, double anchor, const SheetParams& p) {
  const CutoffValue eta = cutoff((r - anchor) / p.h);
  if (eta.value == 0.0 && eta.d1 == 0.0 && eta.d2 == 0.0) return {};
  const Jet inv_r{1.0 / r, -1.0 / (r * r), 2.0 / (r * r * r)};
  const Jet q = -2.0 * (v * inv_r) - Jet{4.0 * std::sqrt(p.alpha_s), 0.0, 0.0};
  if (!(q.v > 0.0)) {
    std::ostringstream os;
    os << "negative amplitude radicand " << q.v << " at r=" << r
       << " beyond the cutoff layer; v_h is not on the wrinkled branch there";
    throw ValidationError("ansatz.radicand", os.str());
  }
  const Jet cut{eta.value, eta.d1 / p.h, eta.d2 / (p.h * p.h)};
  return (1.0 / std::sqrt(kMaskSquareIntegral)) * (cut * sqrt_jet(q));
}

struct NodeData {
  double r;
  Jet A;
  std::vector<int> ks;     // active lattice indices
  std::vector<Jet> masks;  // m(tau k - c r) as jets
};

class Builder {
 public:
  Builder(const FhSolution& sol, const SheetParams& p, const AnsatzParams& ap) : ap_(ap) {
    const RadialProfile v = sol.v.with_fd_derivatives(0.0);
    const RadialGrid& g = sol.v.grid();
    nodes_.resize(g.size());
    const double slope = std::pow(p.alpha_s, 0.25) / std::sqrt(p.h);
    const double anchor = cutoff_anchor(sol, p);
    for (std::size_t j = 0; j < g.size(); ++j) {
      NodeData& nd = nodes_[j];
      nd.r = g[j];
      nd.A = amplitude_jet(nd.r, {v[j], v.d1()[j], v.d2()[j]}, anchor, p);
      if (nd.A.v == 0.0 && nd.A.d == 0.0 && nd.A.dd == 0.0) continue;
      nd.ks = active_modes(nd.r, p, ap);
      for (int k : nd.ks) {
        const double x = ap.tau * k - slope * nd.r;
        nd.masks.push_back({mask(x), -slope * mask_d1(x), slope * slope * mask_d2(x)});
      }
    }
  }

  const std::vector<NodeData>& nodes() const { return nodes_; }

  // Cosine amplitude of w_osc at lattice index ks[i] of node j.
  Jet w_coeff(const NodeData& nd, std::size_t i) const {
    const double k = nd.ks[i];
    const Jet r{nd.r, 1.0, 0.0};
    return (std::sqrt(2.0 * ap_.tau) / (k * ap_.N)) * (nd.A * r * nd.masks[i]);
  }

 private:
  AnsatzParams ap_;
  std::vector<NodeData> nodes_;
};

Mode cos_mode(int k, const Jet& c) { return Mode{k, c.v, 0.0, c.d, 0.0, c.dd, 0.0}; }
Mode sin_mode(int k, const Jet& s) { return Mode{k, 0.0, s.v, 0.0, s.d, 0.0, s.dd}; }

std::vector<std::vector<Mode>> w_osc_modes(const Builder& b) {
  std::vector<std::vector<Mode>> out(b.nodes().size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const NodeData& nd = b.nodes()[j];
    for (std::size_t i = 0; i < nd.ks.size(); ++i) {
      const Jet c = b.w_coeff(nd, i);
      if (c.v != 0.0 || c.d != 0.0 || c.dd != 0.0) out[j].push_back(cos_mode(nd.ks[i], c));
    }
  }
  return out;
}

void scale_wavenumbers(std::vector<std::vector<Mode>>& modes, int N) {
  for (auto& list : modes)
    for (Mode& m : list) m.k *= N;
}

Jet profile_jet(const RadialProfile& f, std::size_t j) { return {f[j], f.d1()[j], f.d2()[j]}; }

}  // namespace

AnsatzParams choose_parameters(double h, std::optional<double> delta) {
  if (!(h > 0.0 && h < 1.0)) throw ValidationError("ansatz.h", "choose_parameters needs 0 < h < 1");
  AnsatzParams ap;
  ap.h = h;
  ap.delta = delta ? *delta : 1.0 / std::sqrt(-std::log(h));
  if (!(ap.delta > 0.0)) throw ValidationError("ansatz.delta", "delta must be > 0");
  ap.N_exact = std::pow(h, ap.delta - 0.5);
  ap.N = std::max(1, static_cast<int>(std::lround(ap.N_exact)));
  ap.rounding_error = ap.N - ap.N_exact;
  ap.near_integer = std::abs(ap.rounding_error) <= 0.5;
  ap.tau = ap.N * std::sqrt(h);
  ap.delta_eff = std::log(ap.tau) / std::log(h);
  return ap;
}

std::vector<int> active_modes(double r, const SheetParams& p, const AnsatzParams& ap) {
  const double c = mask_center(r, p);
  std::vector<int> ks;
  const int lo = std::max(1, static_cast<int>(std::floor((c - 0.5) / ap.tau)));
  const int hi = static_cast<int>(std::ceil((c + 0.5) / ap.tau));
  for (int k = lo; k <= hi; ++k)
    if (std::abs(ap.tau * k - c) < 0.5) ks.push_back(k);
  return ks;
}

double amplitude(double r, const FhSolution& sol, const SheetParams& p, const AnsatzParams&) {
  if (!(r > 0.0 && r < p.r0)) throw ValidationError("ansatz.radius", "amplitude needs r in (0, r0)");
  return amplitude_jet(r, {sol.v.at(r, 0.0), 0.0, 0.0}, cutoff_anchor(sol, p), p).v;
}

RadialProfile amplitude_profile(const FhSolution& sol, const SheetParams& p, const AnsatzParams& ap) {
  const Builder b(sol, p, ap);
  const std::size_t n = b.nodes().size();
  std::vector<double> a(n), a1(n), a2(n);
  for (std::size_t j = 0; j < n; ++j) {
    a[j] = b.nodes()[j].A.v;
    a1[j] = b.nodes()[j].A.d;
    a2[j] = b.nodes()[j].A.dd;
  }
  return RadialProfile(sol.v.grid_ptr(), a, a1, a2);
}

FourierField build_w_osc(const FhSolution& sol, const SheetParams& p, const AnsatzParams& ap,
                         bool analytic) {
  const Builder b(sol, p, ap);
  auto modes = w_osc_modes(b);
  scale_wavenumbers(modes, ap.N);
  return FourierField(sol.v.grid_ptr(), Parity::cosine, std::move(modes), analytic);
}

namespace {

UFields build_u(const Builder& b, const FhSolution& sol, const SheetParams& p,
                const AnsatzParams& ap, bool analytic) {
  const std::size_t n = b.nodes().size();
  const RadialProfile v = sol.v.with_fd_derivatives(0.0);
  std::vector<std::vector<Mode>> ut(n), ur(n);
  for (std::size_t j = 0; j < n; ++j) {
    const NodeData& nd = b.nodes()[j];
    ur[j].push_back(cos_mode(0, profile_jet(v, j)));
    if (nd.ks.empty()) continue;

    const Jet r_over_R{nd.r / p.R, 1.0 / p.R, 0.0};
    for (std::size_t i = 0; i < nd.ks.size(); ++i)
      ur[j].push_back(cos_mode(nd.ks[i] * ap.N, r_over_R * b.w_coeff(nd, i)));

    // u_theta = (u_+ - u_-)/(2r) with u_+- = A^2 r^2 tau sum m_k m_l
    // sin((k +- l) N theta)/((k +- l) N); collect by |k +- l|.
    std::map<int, Jet> sums;
    for (std::size_t a = 0; a < nd.ks.size(); ++a) {
      for (std::size_t c = 0; c < nd.ks.size(); ++c) {
        const Jet prod = nd.masks[a] * nd.masks[c];
        sums[nd.ks[a] + nd.ks[c]] = sums[nd.ks[a] + nd.ks[c]] + prod;
        if (a != c) {
          // sin(x)/x is even, so (k, l) and (l, k) contribute alike.
          const int d = std::abs(nd.ks[a] - nd.ks[c]);
          sums[d] = sums[d] - prod;
        }
      }
    }
    const Jet r{nd.r, 1.0, 0.0};
    const Jet base = (0.5 * ap.tau) * (nd.A * nd.A * r);
    for (const auto& [q, s] : sums) {
      const Jet coeff = (1.0 / (static_cast<double>(q) * ap.N)) * (base * s);
      if (coeff.v != 0.0 || coeff.d != 0.0 || coeff.dd != 0.0)
        ut[j].push_back(sin_mode(q * ap.N, coeff));
    }
  }
  const GridPtr& grid = sol.v.grid_ptr();
  return {FourierField(grid, Parity::sine, std::move(ut), analytic),
          FourierField(grid, Parity::cosine, std::move(ur), analytic)};
}

}  // namespace

UFields build_u_fields(const FhSolution& sol, const SheetParams& p, const AnsatzParams& ap,
                       bool analytic) {
  const Builder b(sol, p, ap);
  return build_u(b, sol, p, ap, analytic);
}

double sigma_tilde(double r, const FhSolution& sol, const SheetParams& p, const AnsatzParams& ap) {
  const double a = amplitude(r, sol, p, ap);
  return a * a * kMaskSquareIntegral;
}

AnsatzField build_ansatz(const FhSolution& sol, const SheetParams& p, const AnsatzParams& ap,
                         bool analytic) {
  const Builder b(sol, p, ap);
  const GridPtr& grid = sol.v.grid_ptr();
  const std::size_t n = grid->size();
  const RadialProfile wh = sol.w.with_fd_derivatives();

  auto osc = w_osc_modes(b);
  scale_wavenumbers(osc, ap.N);
  std::vector<std::vector<Mode>> wm(n);
  std::vector<double> a(n), a1(n), a2(n), sig(n), sig_t(n);
  for (std::size_t j = 0; j < n; ++j) {
    wm[j].push_back(cos_mode(0, profile_jet(wh, j)));
    wm[j].insert(wm[j].end(), osc[j].begin(), osc[j].end());
    const NodeData& nd = b.nodes()[j];
    a[j] = nd.A.v;
    a1[j] = nd.A.d;
    a2[j] = nd.A.dd;
    double s = 0.0;
    for (const Jet& m : nd.masks) s += m.v * m.v;
    sig[j] = nd.A.v * nd.A.v * ap.tau * s;
    sig_t[j] = nd.A.v * nd.A.v * kMaskSquareIntegral;
  }
  UFields u = build_u(b, sol, p, ap, analytic);
  AnsatzField f;
  f.params = ap;
  f.w = FourierField(grid, Parity::cosine, std::move(wm), analytic);
  f.u_theta = std::move(u.u_theta);
  f.u_r = std::move(u.u_r);
  f.A = RadialProfile(grid, a, a1, a2);
  f.sigma = RadialProfile(grid, sig);
  f.sigma_tilde = RadialProfile(grid, sig_t);
  return f;
}

}  // namespace wrinkle
