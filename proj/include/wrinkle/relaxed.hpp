#pragma once

#include <vector>

#include "wrinkle/fourier_field.hpp"
#include "wrinkle/params.hpp"

namespace wrinkle {

// Relaxed hoop energy: eta^2 in tension, linear in deep compression.
double w_rel(double eta, double alpha_s);
double w_rel_prime(double eta, double alpha_s);
// One-sided second derivative (2 on the quadratic branch, 0 below it).
double w_rel_second(double eta, double alpha_s);

struct CircleMode {
  int k;     // >= 1
  double a;  // rms amplitude: a^2 = (c^2 + s^2)/2 for c cos + s sin
};

// Wrinkling state on one circle: hoop strain surrogate eta and the oscillating
// part of the out-of-plane displacement. With the rms convention
// mean((d_theta xi)^2) = sum a_k^2 k^2.
struct CircleState {
  double r;
  double eta;
  std::vector<CircleMode> modes;
};

// Circle state at node j of w (k = 0 dropped; it belongs to the mean profile).
CircleState circle_state(const FourierField& w, std::size_t j, double eta);

// Arclength wasted by wrinkling, sigma = sum a_k^2 (k/r)^2.
double wasted_arclength(const CircleState& state);

// (eta + sigma/2)^2 + sum a_k^2 (k/r)^2 ((kh/r)^2 + alpha (kh/r)^{-2}).
double circle_energy(const CircleState& state, const SheetParams& p);

// circle_energy - w_rel in closed form; only defined for eta < -2 alpha^{1/2}.
double excess_circle_energy(const CircleState& state, const SheetParams& p);

// alpha^{1/4} r / h.
double optimal_wavenumber(double r, const SheetParams& p);

}  // namespace wrinkle
