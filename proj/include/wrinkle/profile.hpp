#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wrinkle/grid.hpp"

namespace wrinkle {

// Centered three-point differences on the (possibly nonuniform) grid, one-sided
// second-order stencils at the ends. When `at_origin` is given it is used as
// the value at r = 0, turning the first node into an interior one.
std::vector<double> fd_first(const RadialGrid& grid, std::span<const double> f,
                             std::optional<double> at_origin = std::nullopt);
std::vector<double> fd_second(const RadialGrid& grid, std::span<const double> f,
                              std::optional<double> at_origin = std::nullopt);

// A scalar function of r sampled at the grid nodes, optionally with first and
// second derivative samples.
class RadialProfile {
 public:
  RadialProfile() = default;
  RadialProfile(GridPtr grid, std::vector<double> values);
  RadialProfile(GridPtr grid, std::vector<double> values, std::vector<double> d1,
                std::vector<double> d2);

  const RadialGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }

  bool has_derivatives() const { return !d1_.empty(); }
  std::span<const double> d1() const { return d1_; }
  std::span<const double> d2() const { return d2_; }

  // Copy whose derivative samples come from the finite-difference stencils.
  RadialProfile with_fd_derivatives(std::optional<double> at_origin = std::nullopt) const;

  // int_0^{r0} f r dr with the grid's panel weights.
  double integrate() const;
  // Piecewise-linear interpolation; r in (0, r_1) interpolates towards
  // `at_origin` (defaults to extrapolating the first segment).
  double at(double r, std::optional<double> at_origin = std::nullopt) const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
  std::vector<double> d1_;
  std::vector<double> d2_;
};

// sqrt(int |a - b|^2 r dr); both profiles must live on the same grid.
double l2_distance(const RadialProfile& a, const RadialProfile& b);

}  // namespace wrinkle
