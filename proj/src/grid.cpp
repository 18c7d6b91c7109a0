#include "wrinkle/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "wrinkle/errors.hpp"

namespace wrinkle {

std::string_view to_string(Refinement refinement) {
  return refinement == Refinement::uniform ? "uniform" : "boundary-layer";
}

Refinement parse_refinement(std::string_view text) {
  if (text == "uniform") return Refinement::uniform;
  if (text == "boundary-layer" || text == "boundary_layer") return Refinement::boundary_layer;
  throw ValidationError("config.grid.refinement",
                        "grid.refinement must be 'uniform' or 'boundary-layer', got '" +
                            std::string(text) + "'");
}

namespace {

// Weights of the interpolatory rule on [0,1] through the points t (size <= 4).
template <std::size_t K>
std::array<double, K> unit_weights(const std::array<double, K>& t) {
  std::array<std::array<double, K + 1>, K> a{};
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < K; ++i) a[k][i] = std::pow(t[i], static_cast<double>(k));
    a[k][K] = 1.0 / static_cast<double>(k + 1);
  }
  for (std::size_t col = 0; col < K; ++col) {
    std::size_t piv = col;
    for (std::size_t row = col + 1; row < K; ++row)
      if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
    std::swap(a[col], a[piv]);
    for (std::size_t row = 0; row < K; ++row) {
      if (row == col) continue;
      const double f = a[row][col] / a[col][col];
      for (std::size_t c = col; c <= K; ++c) a[row][c] -= f * a[col][c];
    }
  }
  std::array<double, K> w{};
  for (std::size_t i = 0; i < K; ++i) w[i] = a[i][K] / a[i][i];
  return w;
}

template <std::size_t K>
void add_panel(const std::vector<double>& x, std::size_t first, std::vector<double>& out) {
  const double a = x[first];
  const double len = x[first + K - 1] - a;
  std::array<double, K> t{};
  for (std::size_t i = 0; i < K; ++i) t[i] = (x[first + i] - a) / len;
  const auto w = unit_weights(t);
  for (std::size_t i = 0; i < K; ++i) out[first + i] += len * w[i];
}

}  // namespace

RadialGrid::RadialGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  const std::size_t n = nodes_.size();
  std::vector<double> x(n + 1, 0.0);
  std::copy(nodes_.begin(), nodes_.end(), x.begin() + 1);

  std::vector<double> panel(n + 1, 0.0);
  if (n == 1) {
    add_panel<2>(x, 0, panel);
  } else if (n % 2 == 0) {
    for (std::size_t i = 0; i + 2 <= n; i += 2) add_panel<3>(x, i, panel);
  } else {
    for (std::size_t i = 0; i + 3 < n; i += 2) add_panel<3>(x, i, panel);
    add_panel<4>(x, n - 3, panel);
  }
  weights_.resize(n);
  dual_lengths_.resize(n);
  dual_weights_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    weights_[j] = panel[j + 1] * x[j + 1];
    dual_lengths_[j] = (j + 1 < n) ? 0.5 * (x[j + 2] - x[j]) : 0.5 * (x[j + 1] - x[j]);
    dual_weights_[j] = x[j + 1] * dual_lengths_[j];
  }
}

RadialGrid RadialGrid::uniform(double r0, std::size_t n) {
  if (!(r0 > 0.0) || !std::isfinite(r0)) throw ValidationError("grid.r0", "grid radius must be > 0");
  if (n == 0) throw ValidationError("grid.n", "grid needs at least one node");
  std::vector<double> nodes(n);
  for (std::size_t j = 0; j < n; ++j)
    nodes[j] = r0 * static_cast<double>(j + 1) / static_cast<double>(n);
  nodes.back() = r0;
  return RadialGrid(std::move(nodes));
}

RadialGrid RadialGrid::from_nodes(std::vector<double> nodes) {
  if (nodes.empty()) throw ValidationError("grid.n", "grid needs at least one node");
  if (!(nodes.front() > 0.0)) throw ValidationError("grid.origin", "grid nodes must avoid r = 0");
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (!std::isfinite(nodes[j])) throw ValidationError("grid.finite", "grid nodes must be finite");
    if (j > 0 && !(nodes[j] > nodes[j - 1]))
      throw ValidationError("grid.order", "grid nodes must be strictly increasing");
  }
  return RadialGrid(std::move(nodes));
}

double RadialGrid::max_gap() const {
  double gap = nodes_.front();
  for (std::size_t j = 1; j < nodes_.size(); ++j) gap = std::max(gap, nodes_[j] - nodes_[j - 1]);
  return gap;
}

double RadialGrid::max_gap_in(double a, double b) const {
  double gap = 0.0;
  double left = 0.0;
  for (double right : nodes_) {
    if (right >= a && left <= b) gap = std::max(gap, right - left);
    left = right;
  }
  return gap;
}

std::size_t RadialGrid::count_in_open(double a, double b) const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [&](double r) { return r > a && r < b; }));
}

double RadialGrid::integrate(std::span<const double> f) const {
  if (f.size() != nodes_.size())
    throw ValidationError("grid.size", "integrand size does not match the grid");
  // Pairwise summation keeps the result independent of how callers chunk work.
  std::vector<double> terms(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) terms[j] = weights_[j] * f[j];
  for (std::size_t width = 1; width < terms.size(); width *= 2)
    for (std::size_t i = 0; i + width < terms.size(); i += 2 * width) terms[i] += terms[i + width];
  return terms.empty() ? 0.0 : terms[0];
}

std::size_t RadialGrid::locate(double r) const {
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
  return it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
}

namespace {

// Node density 1 + beta g(r), g a Gaussian bump of width w centred at c.
struct Density {
  double beta, c, w;
  double bump_integral(double r) const {
    return w * 0.5 * std::sqrt(std::numbers::pi) * (std::erf((r - c) / w) - std::erf(-c / w));
  }
  double cumulative(double r) const { return r + beta * bump_integral(r); }
  double inverse(double target, double r0) const {
    double lo = 0.0, hi = r0;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * r0; ++it) {
      const double mid = 0.5 * (lo + hi);
      (cumulative(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
};

}  // namespace

GridPtr make_grid(const SheetParams& p, std::size_t n, Refinement refinement) {
  if (n < 16) throw ValidationError("grid.n", "grid needs n >= 16 nodes, got " + std::to_string(n));
  if (refinement == Refinement::uniform || !wrinkling_regime(p))
    return std::make_shared<const RadialGrid>(RadialGrid::uniform(p.r0, n));

  const double r_w = onset_radius(p);
  const double target = p.h / 10.0;
  Density d{0.0, r_w + p.h, 3.0 * p.h};
  const double bump_total = d.bump_integral(p.r0);
  const double nd = static_cast<double>(n);
  if (nd * target < p.r0) {
    if (nd * target <= 2.0 * bump_total) {
      const auto need = static_cast<std::size_t>(std::ceil(2.0 * bump_total / target)) + 1;
      throw ValidationError("grid.n", "boundary-layer grid at h=" + std::to_string(p.h) +
                                          " needs n >= " + std::to_string(need));
    }
    d.beta = (p.r0 - nd * target) / (nd * target - bump_total);
  }
  const double total = d.cumulative(p.r0);
  std::vector<double> nodes(n);
  const std::size_t last_even = (n % 2 == 0) ? n : n - 3;
  for (std::size_t j = 2; j <= last_even; j += 2)
    nodes[j - 1] = d.inverse(total * static_cast<double>(j) / nd, p.r0);
  nodes[n - 1] = p.r0;
  for (std::size_t j = 1; j <= last_even; j += 2) {
    const double left = j == 1 ? 0.0 : nodes[j - 2];
    nodes[j - 1] = 0.5 * (left + nodes[j]);
  }
  if (n % 2 == 1) {
    const double a = nodes[n - 4];
    const double b = nodes[n - 1];
    nodes[n - 3] = a + (b - a) / 3.0;
    nodes[n - 2] = a + 2.0 * (b - a) / 3.0;
  }
  return std::make_shared<const RadialGrid>(RadialGrid::from_nodes(std::move(nodes)));
}

std::size_t default_node_count(const SheetParams& p, std::size_t floor_n) {
  auto n = static_cast<std::size_t>(std::ceil(8.0 * p.r0 / p.h));
  n = std::max(n, floor_n);
  return n + (n % 2);
}

}  // namespace wrinkle
