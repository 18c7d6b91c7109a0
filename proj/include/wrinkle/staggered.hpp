#pragma once

#include <array>
#include <span>
#include <vector>

#include "wrinkle/banded.hpp"
#include "wrinkle/grid.hpp"
#include "wrinkle/params.hpp"

namespace wrinkle {

// Shared discretization of the radial functionals F_0(v) and F_h(v, w).
//
// v and w are nodal values on the grid with v(0) = 0. Cell c spans
// [r_c, r_{c+1}] (r_0 = 0); v' and w' are the cell difference quotients
// (w' = 0 on the first cell), so s = v' + (r/R - w')^2/2 is a polynomial in r
// on each cell. Its square is integrated exactly and split as
//   int_cell s^2 r dr = mass * (mean(s)^2 + var(s)),
// and the cell-mean stress mean(s) is the discrete radial stress. The
// convexified functional clips only mean(s); var(s) is a convex quadratic in
// w'. Node terms (relaxed hoop energy, substrate, bending with a three-point
// w'') use the grid's dual weights.
class StaggeredForm {
 public:
  struct Terms {
    double membrane = 0.0;
    double relaxed = 0.0;
    double substrate = 0.0;
    double bending = 0.0;
    double total() const { return membrane + relaxed + substrate + bending; }
  };

  StaggeredForm(GridPtr grid, SheetParams p);

  const RadialGrid& grid() const { return *grid_; }
  std::size_t size() const { return grid_->size(); }

  // F_0 when w is empty, F_h otherwise. With `convexified` the membrane
  // integrand is (s)_+^2. Gradients are written when the spans are non-empty.
  Terms evaluate(std::span<const double> v, std::span<const double> w, bool convexified,
                 std::span<double> grad_v = {}, std::span<double> grad_w = {}) const;

  // Cell-mean radial stress mean(v' + (r/R - w')^2/2).
  std::vector<double> cell_stress(std::span<const double> v, std::span<const double> w) const;
  // Smallest cell-mean stress.
  double min_stress(std::span<const double> v, std::span<const double> w) const;
  // Cell-midpoint stresses moved to the nodes (linear interpolation, linear
  // extrapolation at r0).
  std::vector<double> nodal_stress(std::span<const double> v, std::span<const double> w) const;

  std::span<const double> cell_mid() const { return mid_; }
  std::span<const double> cell_len() const { return len_; }
  std::span<const double> cell_mass() const { return mass_; }

  // Quadratic model used as the descent metric: second derivatives of the
  // membrane term with mean(s) replaced by max(mean(s), 0) in its curvature
  // part, and the relaxed term's tension-branch curvature everywhere.
  BandedSpd metric_f0() const;
  // Interleaved unknowns (v_1, w_1, v_2, w_2, ...).
  BandedSpd metric_fh(std::span<const double> v, std::span<const double> w) const;

 private:
  double dv(std::span<const double> v, std::size_t c) const;
  double dw(std::span<const double> w, std::size_t c) const;

  GridPtr grid_;
  SheetParams p_;
  std::vector<double> mid_, len_, mass_;
  // Mass-weighted mean and central moments of r over each cell.
  struct Moments {
    double mean = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
  };
  std::vector<Moments> moments_;
  std::vector<std::array<double, 3>> d2_;  // w'' stencil weights per node
  std::vector<std::size_t> d2_center_;
};

}  // namespace wrinkle
