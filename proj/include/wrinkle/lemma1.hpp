#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wrinkle/energy.hpp"

namespace wrinkle {

// Two-circle lower bound: with l = rho1 - rho0,
//   sum_{rho0, rho1} (W_r - W_rel) + mean_{(rho0, rho1)} B
//     >= min(delta^2/4, delta/8 (l/rho0)^2 alpha^{1/2},
//            delta/2 / (32 alpha^{-1/2} (rho0/l)^2 + 8 alpha^{1/2} (l/h)^2)).
struct Lemma1Case {
  double rho0 = 0.0;
  double rho1 = 0.0;
  double delta_param = 0.0;  // margin in u_r-bar / rho <= -2 alpha^{1/2} - delta
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// Radii are snapped to grid nodes. Returns nullopt when the wrinkled-branch
// precondition fails at either radius or the pair is not ordered as
// rho0 < rho1 < sqrt(2) rho0.
std::optional<Lemma1Case> lemma1_check(const Decomposition& dec, std::size_t j0, std::size_t j1,
                                       const SheetParams& p);

// Uniform rho0 in the middle third of (r_w, r0); rho1 uniform above it,
// limited by sqrt(2) rho0, r0 and the interval length
// alpha^{-1/4} r_w^{1/2} h^{1/2}. Rejected draws are retried up to
// 20 times `count`.
std::vector<Lemma1Case> lemma1_sample(const Decomposition& dec, const SheetParams& p,
                                      std::size_t count, std::uint64_t seed);

}  // namespace wrinkle
