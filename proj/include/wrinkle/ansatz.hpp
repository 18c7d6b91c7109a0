#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wrinkle/fh_solver.hpp"
#include "wrinkle/fourier_field.hpp"
#include "wrinkle/mask.hpp"

namespace wrinkle {

struct AnsatzParams {
  double h = 0.0;
  double delta = 0.0;           // nominal (-log h)^{-1/2} unless overridden
  double N_exact = 0.0;         // h^{delta - 1/2}
  int N = 1;                    // max(1, round(N_exact))
  double rounding_error = 0.0;  // N - N_exact
  bool near_integer = true;     // |N - N_exact| <= 1/2
  // Lattice step in the mask argument, N h^{1/2}. Equals h^delta when N_exact
  // is an integer; with rounding it keeps the mask centred on the optimal
  // wavenumber alpha^{1/4} r / h.
  double tau = 0.0;
  double delta_eff = 0.0;       // log(tau) / log(h)
  std::string mask_id = kMaskId;
  double window() const { return 1.0 / tau; }  // active modes per radius, roughly
};

AnsatzParams choose_parameters(double h, std::optional<double> delta = std::nullopt);

// Lattice indices k >= 1 (wavenumber kN) with |tau k - alpha^{1/4} r h^{-1/2}| < 1/2.
std::vector<int> active_modes(double r, const SheetParams& p, const AnsatzParams& ap);

// A(r) = eta((r - r_w)/h) sqrt(-2 (v_h/r + 2 alpha^{1/2})) / sqrt(int m^2), with
// v_h interpolated linearly between nodes.
double amplitude(double r, const FhSolution& sol, const SheetParams& p, const AnsatzParams& ap);

// A at the nodes, with analytic first and second radial derivatives
// (v_h' and v_h'' from finite differences).
RadialProfile amplitude_profile(const FhSolution& sol, const SheetParams& p,
                                const AnsatzParams& ap);

// Oscillatory part of w: cosine amplitudes sqrt(2) tau^{1/2} A r m_k / (kN) on
// the lattice wavenumbers kN. `analytic` selects product-rule radial
// derivatives over finite differences.
FourierField build_w_osc(const FhSolution& sol, const SheetParams& p, const AnsatzParams& ap,
                         bool analytic = true);

struct UFields {
  FourierField u_theta;  // sine series on (k +- l) N
  FourierField u_r;      // v_h + (r/R) w_osc
};

UFields build_u_fields(const FhSolution& sol, const SheetParams& p, const AnsatzParams& ap,
                       bool analytic = true);

// A(r)^2 int m^2.
double sigma_tilde(double r, const FhSolution& sol, const SheetParams& p, const AnsatzParams& ap);

struct AnsatzField {
  AnsatzParams params;
  FourierField w;  // w_h (k = 0) + w_osc
  FourierField u_theta;
  FourierField u_r;
  RadialProfile A;
  RadialProfile sigma;        // (1/r^2) mean (d_theta w_osc)^2
  RadialProfile sigma_tilde;  // A^2 int m^2
};

AnsatzField build_ansatz(const FhSolution& sol, const SheetParams& p, const AnsatzParams& ap,
                         bool analytic = true);

}  // namespace wrinkle
