#include "wrinkle/relaxed.hpp"

#include <cmath>
#include <string>

#include "wrinkle/errors.hpp"

namespace wrinkle {

double w_rel(double eta, double alpha_s) {
  const double sa = std::sqrt(alpha_s);
  return eta >= -2.0 * sa ? eta * eta : -4.0 * sa * (sa + eta);
}

double w_rel_prime(double eta, double alpha_s) {
  const double sa = std::sqrt(alpha_s);
  return eta >= -2.0 * sa ? 2.0 * eta : -4.0 * sa;
}

double w_rel_second(double eta, double alpha_s) {
  return eta >= -2.0 * std::sqrt(alpha_s) ? 2.0 : 0.0;
}

CircleState circle_state(const FourierField& w, std::size_t j, double eta) {
  CircleState state{w.grid()[j], eta, {}};
  for (const Mode& m : w.modes(j)) {
    if (m.k == 0) continue;
    state.modes.push_back({m.k, std::sqrt(0.5 * (m.c * m.c + m.s * m.s))});
  }
  return state;
}

double wasted_arclength(const CircleState& state) {
  double sigma = 0.0;
  for (const auto& m : state.modes) {
    const double q = m.k / state.r;
    sigma += m.a * m.a * q * q;
  }
  return sigma;
}

double circle_energy(const CircleState& state, const SheetParams& p) {
  const double sigma = wasted_arclength(state);
  double rest = 0.0;
  for (const auto& m : state.modes) {
    const double q = m.k / state.r;
    const double t = q * p.h;
    rest += m.a * m.a * q * q * (t * t + p.alpha_s / (t * t));
  }
  const double hoop = state.eta + 0.5 * sigma;
  return hoop * hoop + rest;
}

double excess_circle_energy(const CircleState& state, const SheetParams& p) {
  const double sa = std::sqrt(p.alpha_s);
  if (!(state.eta < -2.0 * sa))
    throw ValidationError("relaxed.branch",
                          "excess identity needs eta < -2 alpha^{1/2}; got eta=" +
                              std::to_string(state.eta));
  const double sigma = wasted_arclength(state);
  const double gap = sigma + 2.0 * (state.eta + 2.0 * sa);
  double rest = 0.0;
  for (const auto& m : state.modes) {
    const double q = m.k / state.r;
    const double t = q * p.h;
    const double mismatch = t - sa / t;
    rest += m.a * m.a * q * q * mismatch * mismatch;
  }
  return 0.25 * gap * gap + rest;
}

double optimal_wavenumber(double r, const SheetParams& p) {
  if (!(r > 0.0)) throw ValidationError("relaxed.radius", "optimal wavenumber needs r > 0");
  return std::pow(p.alpha_s, 0.25) * r / p.h;
}

}  // namespace wrinkle
