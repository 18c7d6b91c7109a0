#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wrinkle/descent.hpp"
#include "wrinkle/params.hpp"
#include "wrinkle/profile.hpp"
#include "wrinkle/staggered.hpp"

namespace wrinkle {

// Discrete F_h(v, w) (the true functional, no positive part).
double fh_energy(const RadialProfile& v, const RadialProfile& w, const SheetParams& p);

struct FhOptions {
  DescentOptions descent{.max_iterations = 20000,
                         .grad_rtol = 1e-10,
                         .stall_rtol = 1e-12,
                         .stall_window = 50,
                         .metric_refresh = 25,
                         .record_history = false,
                         .polish_iterations = 200};
  // Tolerance of the post-solve check that the positive part is inactive.
  double stress_floor = -1e-8;
  // When set, start from (v0, 0) plus a random perturbation of this relative
  // size drawn with `seed`, instead of (v0, 0).
  std::optional<std::uint64_t> seed;
  double perturbation = 0.05;
};

struct Prop1Diagnostics {
  double w_sq = 0.0;        // int w_h^2 r dr
  double w_prime_sq = 0.0;  // int (w_h')^2 r dr
  double v_gap_sq = 0.0;    // int |v_h - v_0|^2 r dr
};

struct FhSolution {
  RadialProfile v;
  RadialProfile w;
  RadialProfile sigma;
  // Where -2(v_h/r + 2 alpha^{1/2}) turns positive for good: the start of the
  // wrinkled branch of v_h. At least r_w; sits O(h) beyond it.
  double onset = 0.0;
  double energy = 0.0;
  StaggeredForm::Terms terms;
  double min_stress = 0.0;
  int iterations = 0;
  double grad_norm = 0.0;
  std::vector<double> history;
  Prop1Diagnostics diagnostics;
};

// Minimizes the convexified F_h from (v0, 0), then checks that the positive
// part never bit (min stress >= stress_floor), so the result minimizes F_h.
FhSolution fh_minimize(const SheetParams& p, const GridPtr& grid, const FhOptions& options = {});

Prop1Diagnostics prop1_diagnostics(const FhSolution& sol, const SheetParams& p);

// For f(x, y) = (x + y^2/2)^2: the first-order Taylor remainder
// f(x,y) - f(a,b) - Df(a,b).(x-a, y-b), computed directly, and its closed
// form ((x + y^2/2) - (a + b^2/2))^2 + (a + b^2/2)(y - b)^2. Convexity of the
// membrane term wherever a + b^2/2 >= 0 rests on their equality.
double membrane_taylor_remainder(double x, double y, double a, double b);
double membrane_taylor_remainder_closed(double x, double y, double a, double b);

// Onset of the wrinkled branch of a radial displacement v (see FhSolution::onset).
// Returns r0 when v never enters it.
double wrinkled_onset(const RadialProfile& v, const SheetParams& p);
Prop1Diagnostics prop1_diagnostics(const RadialProfile& v, const RadialProfile& w,
                                   const SheetParams& p);

}  // namespace wrinkle
