#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "wrinkle/grid.hpp"

namespace wrinkle {

// Which real trigonometric family a field uses. Energy formulas do not care;
// the tag documents intent and is checked on construction.
enum class Parity { cosine, sine, mixed };

std::string_view to_string(Parity parity);

// One azimuthal mode at one radius: c cos(k theta) + s sin(k theta), plus the
// radial derivatives of c and s. k = 0 carries the azimuthal mean in c.
struct Mode {
  int k = 0;
  double c = 0.0, s = 0.0;
  double c_r = 0.0, s_r = 0.0;
  double c_rr = 0.0, s_rr = 0.0;
};

// Values of a field and its derivatives at M equispaced angles theta_m = 2 pi m / M.
struct AngularSamples {
  std::vector<double> f, f_r, f_rr, f_t, f_tt, f_rt;
};

class FourierField {
 public:
  FourierField() = default;
  // `modes[j]` lists the modes at node j, sorted by strictly increasing k >= 0.
  // When `derivatives` is false the radial derivative slots are filled from
  // the grid's finite-difference stencils.
  FourierField(GridPtr grid, Parity parity, std::vector<std::vector<Mode>> modes, bool derivatives);

  static FourierField zero(GridPtr grid, Parity parity);

  const RadialGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  Parity parity() const { return parity_; }
  std::size_t size() const { return modes_.size(); }
  std::span<const Mode> modes(std::size_t j) const { return modes_[j]; }
  int k_max() const { return k_max_; }
  // True when the derivative slots were supplied analytically.
  bool analytic_derivatives() const { return analytic_; }

  double mean(std::size_t j) const;
  // Azimuthal mean of |d_theta f|^2 at node j: sum_k k^2 (c^2 + s^2)/2.
  double mean_square_slope(std::size_t j) const;

  // Same field with derivative slots recomputed by finite differences.
  FourierField with_fd_derivatives() const;
  // f(r, theta) -> f(r, theta + phase).
  FourierField rotated(double phase) const;

  // Direct evaluation at node j on M equispaced angles.
  AngularSamples sample(std::size_t j, std::size_t M) const;

  // Discrete Fourier analysis of M equispaced samples into modes 0..k_max
  // (zero entries dropped). Requires M >= 2 k_max + 1.
  static std::vector<Mode> analyze(std::span<const double> samples, int k_max);

 private:
  GridPtr grid_;
  Parity parity_ = Parity::mixed;
  std::vector<std::vector<Mode>> modes_;
  int k_max_ = 0;
  bool analytic_ = false;
};

}  // namespace wrinkle
