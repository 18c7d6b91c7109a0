#include "wrinkle/params.hpp"

#include <cmath>
#include <sstream>

#include "wrinkle/errors.hpp"

namespace wrinkle {

std::string_view to_string(Regime regime) {
  return regime == Regime::wrinkling ? "wrinkling" : "tension-only";
}

double onset_radius(const SheetParams& p) {
  return std::cbrt(16.0 * std::sqrt(p.alpha_s) * p.r0 * p.R * p.R);
}

double alpha_threshold(const SheetParams& p) {
  const double q = p.r0 / p.R;
  return q * q * q * q / 256.0;
}

bool wrinkling_regime(const SheetParams& p) { return p.alpha_s < alpha_threshold(p); }

namespace {

void require(bool ok, const char* code, const std::string& what) {
  if (!ok) throw ValidationError(code, what);
}

std::string describe(const SheetParams& p) {
  std::ostringstream os;
  os.precision(17);
  os << " (alpha_s=" << p.alpha_s << ", r0=" << p.r0 << ", R=" << p.R << ", h=" << p.h << ")";
  return os.str();
}

}  // namespace

RegimeReport validate_params(const SheetParams& p) {
  require(std::isfinite(p.alpha_s) && std::isfinite(p.r0) && std::isfinite(p.R) &&
              std::isfinite(p.h),
          "param.finite", "parameters must be finite" + describe(p));
  require(p.alpha_s > 0.0, "param.alpha_s", "alpha_s must be > 0" + describe(p));
  require(p.h > 0.0, "param.h", "h must be > 0" + describe(p));
  require(p.h < p.r0, "param.order", "h must be < r0" + describe(p));
  require(p.r0 < p.R, "param.order", "r0 must be < R" + describe(p));
  return {wrinkling_regime(p) ? Regime::wrinkling : Regime::tension_only, onset_radius(p),
          alpha_threshold(p)};
}

}  // namespace wrinkle
