#pragma once

#include <cmath>
#include <cstdint>

namespace wrinkle {

// m(t) = exp(-1/(1 - 4 t^2)) on |t| < 1/2, zero outside. Templated so the
// Riemann-sum check can run in extended precision.
template <class Real>
Real mask(const Real& t) {
  using std::exp;
  const Real q = Real(1) - Real(4) * t * t;
  if (!(q > Real(0))) return Real(0);
  return exp(Real(-1) / q);
}

// First and second derivatives of m.
double mask_d1(double t);
double mask_d2(double t);

// int m^2 dt to 55 significant digits; the double is the rounded value.
inline constexpr const char* kMaskSquareIntegralText =
    "0.06654306042249713577847366397766428568128957758140650277";
inline constexpr double kMaskSquareIntegral = 0.066543060422497135778473663977664;
// int m dt.
inline constexpr double kMaskIntegral = 0.22199690808403971891152446058;

inline constexpr const char* kMaskId = "exp-bump";

// t * sum_k f(t k + zeta) - int f for f = m^2, summing every k with
// |t k + zeta| < 1/2. `integral` is int m^2 in the same precision.
template <class Real>
Real riemann_defect(const Real& t, const Real& zeta, const Real& integral) {
  using std::ceil;
  const auto kmax = static_cast<std::int64_t>(ceil(static_cast<double>(Real(1) / t))) + 2;
  Real sum = 0;
  for (std::int64_t k = -kmax; k <= kmax; ++k) {
    const Real x = t * Real(k) + zeta;
    const Real m = mask(x);
    sum += m * m;
  }
  return t * sum - integral;
}

// Smooth step: 0 for t <= 1, 1 for t >= 2, the normalized running integral of
// the bump exp(-1/(1 - (2t-3)^2)) in between.
struct CutoffValue {
  double value, d1, d2;
};
CutoffValue cutoff(double t);

}  // namespace wrinkle
