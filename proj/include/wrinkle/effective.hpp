#pragma once

#include "wrinkle/descent.hpp"
#include "wrinkle/params.hpp"
#include "wrinkle/profile.hpp"

namespace wrinkle {

// Closed-form minimizer of F_0 in the wrinkling regime: cubic on (0, r_w),
// cubic plus logarithm on (r_w, r0). Throws ValidationError in the
// tension-only regime (use v0_single_branch there).
double v0_explicit(double r, const SheetParams& p);
double v0_explicit_derivative(double r, const SheetParams& p);
// sigma_0 = v0' + r^2 / (2 R^2).
double sigma0_explicit(double r, const SheetParams& p);

// Minimizer of F_0 when W_rel = eta^2 on the whole sheet (tension-only
// regime): -3 r^3 / (16 R^2) + r0^2 r / (16 R^2). Valid only when
// alpha_s >= 2^{-8} (r0/R)^4.
double v0_single_branch(double r, const SheetParams& p);

// Closed-form radial stress of the F_h minimizer on the outer annulus
// [(2 r_w + r0)/3, r0]: 2 alpha^{1/2} (r0/r - 1).
double sigma_h_outer(double r, const SheetParams& p);

// The literal stress formula 4 alpha^{1/2} (r0/r - 1), kept for comparison;
// it is twice the stress of the minimizer (see README).
double sigma_h_outer_literal(double r, const SheetParams& p);

// Discrete F_0 of a nodal profile (v(0) = 0 implied).
double f0_energy(const RadialProfile& v, const SheetParams& p);

// Continuum min F_0: F_0 of the closed-form minimizer by Gauss-Legendre on
// each smooth piece.
double f0_reference_minimum(const SheetParams& p);

struct EffectiveSolution {
  RadialProfile v;
  RadialProfile sigma;
  double energy = 0.0;
  double r_w = 0.0;
  int iterations = 0;
  double grad_norm = 0.0;
};

EffectiveSolution f0_minimize_numeric(const SheetParams& p, const GridPtr& grid,
                                      const DescentOptions& options = {});

// Residual of the Euler-Lagrange equation (2 sigma r)' = W_rel'(v/r) in flux
// form: R(rho_c) = 2 sigma(rho_c) rho_c + int_{rho_c}^{r0} W_rel'(v(s)/s) ds at
// the cell midpoints, with v linear between nodes. Returns the L^2(r dr) norm.
double euler_lagrange_residual(const RadialProfile& v, const SheetParams& p);

// Samples v0 (wrinkling) or the single-branch minimizer at the grid nodes.
RadialProfile sample_minimizer(const GridPtr& grid, const SheetParams& p);

}  // namespace wrinkle
