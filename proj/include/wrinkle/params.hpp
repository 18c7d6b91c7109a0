#pragma once

#include <string_view>

namespace wrinkle {

// Sheet of radius r0 and thickness h on a sphere of radius R; alpha_s is the
// dimensionless Winkler stiffness. All lengths share one unit.
struct SheetParams {
  double alpha_s = 1e-4;
  double r0 = 0.5;
  double R = 1.0;
  double h = 1e-3;
};

enum class Regime { wrinkling, tension_only };

std::string_view to_string(Regime regime);

struct RegimeReport {
  Regime regime;
  double r_w;              // onset radius (16 alpha^{1/2} r0 R^2)^{1/3}
  double alpha_threshold;  // 2^{-8} (r0/R)^4
};

// Onset radius r_w. Only requires alpha_s, r0, R > 0.
double onset_radius(const SheetParams& p);

double alpha_threshold(const SheetParams& p);

// True iff alpha_s < 2^{-8} (r0/R)^4, i.e. r_w < r0.
bool wrinkling_regime(const SheetParams& p);

// Checks alpha_s > 0 and 0 < h < r0 < R; throws ValidationError naming the
// first violated constraint.
RegimeReport validate_params(const SheetParams& p);

}  // namespace wrinkle
