#include "wrinkle/mask.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace wrinkle {

double mask_d1(double t) {
  const double q = 1.0 - 4.0 * t * t;
  if (!(q > 0.0)) return 0.0;
  return mask(t) * (-8.0 * t / (q * q));
}

double mask_d2(double t) {
  const double q = 1.0 - 4.0 * t * t;
  if (!(q > 0.0)) return 0.0;
  const double q2 = q * q;
  return mask(t) * (64.0 * t * t / (q2 * q2) - 8.0 / q2 - 128.0 * t * t / (q2 * q));
}

namespace {

double bump(double s) {
  const double u = 2.0 * s - 3.0;
  const double q = 1.0 - u * u;
  return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
}

double bump_d1(double s) {
  const double u = 2.0 * s - 3.0;
  const double q = 1.0 - u * u;
  return q > 0.0 ? bump(s) * (-4.0 * u / (q * q)) : 0.0;
}

}  // namespace

CutoffValue cutoff(double t) {
  if (t <= 1.0) return {0.0, 0.0, 0.0};
  if (t >= 2.0) return {1.0, 0.0, 0.0};
  // Adaptive: the bump is flat to all orders at the ends, which a fixed
  // Gauss rule resolves only to about 1e-10.
  auto integrate = [](double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(bump, a, b, 10, 1e-13);
  };
  // bump(s) = m(s - 3/2), so `total` equals int m.
  static const double total = integrate(1.0, 1.5) + integrate(1.5, 2.0);
  const double part = t <= 1.5 ? integrate(1.0, t) : total - integrate(t, 2.0);
  return {part / total, bump(t) / total, bump_d1(t) / total};
}

}  // namespace wrinkle
