#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "wrinkle/params.hpp"

namespace wrinkle {

enum class Refinement { uniform, boundary_layer };

std::string_view to_string(Refinement refinement);
Refinement parse_refinement(std::string_view text);

// Radial nodes 0 < r_1 < ... < r_n = r0 with two weight sets for integrals of
// the form  int_0^{r0} f(r) r dr:
//
//   weights()       interpolatory panel rule applied to g = f r, with the
//                   origin as a virtual node where g = 0. Quadratic panels,
//                   plus one cubic panel at the outer end when the interval
//                   count is odd. Exact for f = 1, r, r^2 when the quadratic
//                   panels are symmetric (both factories build them so).
//   dual_weights()  r_j times the dual cell length (trapezoid rule on g); the
//                   weights the solvers pair with their staggered stencils.
//
// Both reproduce int r dr = r0^2/2.
class RadialGrid {
 public:
  // n equal steps of r0/n. Any n >= 1; make_grid adds the n >= 16 policy.
  static RadialGrid uniform(double r0, std::size_t n);
  // Arbitrary strictly increasing positive nodes; the last one is r0.
  static RadialGrid from_nodes(std::vector<double> nodes);

  std::size_t size() const noexcept { return nodes_.size(); }
  double r0() const noexcept { return nodes_.back(); }
  double operator[](std::size_t j) const noexcept { return nodes_[j]; }

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> dual_lengths() const noexcept { return dual_lengths_; }
  std::span<const double> dual_weights() const noexcept { return dual_weights_; }

  // Largest gap between consecutive nodes (the origin counts as a node).
  double max_gap() const;
  // Largest gap among intervals meeting [a, b].
  double max_gap_in(double a, double b) const;
  std::size_t count_in_open(double a, double b) const;

  // sum_j weights_j f_j
  double integrate(std::span<const double> f) const;

  // Index of the last node <= r (or 0 if r < r_1).
  std::size_t locate(double r) const;

 private:
  explicit RadialGrid(std::vector<double> nodes);

  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> dual_lengths_;
  std::vector<double> dual_weights_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

// Policy-level factory. Requires n >= 16. Boundary-layer grids cluster nodes
// around the wrinkling onset r_w (spacing h/10 over a few h) and need enough
// nodes to do so; tension-only parameters fall back to uniform spacing.
GridPtr make_grid(const SheetParams& p, std::size_t n, Refinement refinement);

// Node count the solvers use by default for thickness h: uniform spacing of at
// most h/8, never fewer than `floor_n` nodes, always even.
std::size_t default_node_count(const SheetParams& p, std::size_t floor_n = 2000);

}  // namespace wrinkle
