#include "wrinkle/profile.hpp"

#include <algorithm>
#include <cmath>

#include "wrinkle/errors.hpp"

namespace wrinkle {

namespace {

void check_size(const RadialGrid& grid, std::size_t n) {
  if (n != grid.size()) throw ValidationError("profile.size", "profile size does not match grid");
}

// Coefficients of the three-point first/second derivative at x1 through
// (x0, x1, x2); x1 need not be the middle point.
struct Stencil3 {
  double a0, a1, a2;
};

Stencil3 first_coeffs(double x0, double x1, double x2, double at) {
  // Derivative of the Lagrange interpolant evaluated at `at`.
  const double l0 = ((at - x1) + (at - x2)) / ((x0 - x1) * (x0 - x2));
  const double l1 = ((at - x0) + (at - x2)) / ((x1 - x0) * (x1 - x2));
  const double l2 = ((at - x0) + (at - x1)) / ((x2 - x0) * (x2 - x1));
  return {l0, l1, l2};
}

Stencil3 second_coeffs(double x0, double x1, double x2) {
  return {2.0 / ((x0 - x1) * (x0 - x2)), 2.0 / ((x1 - x0) * (x1 - x2)),
          2.0 / ((x2 - x0) * (x2 - x1))};
}

// Second derivative of the cubic through four points, evaluated at `at`.
double second_cubic(const double* x, const double* f, double at) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    double denom = 1.0;
    for (int j = 0; j < 4; ++j)
      if (j != i) denom *= x[i] - x[j];
    // d^2/dt^2 of prod_{j != i}(t - x_j) = 2 * sum over pairs of the remaining factor
    double d2 = 0.0;
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      for (int k = j + 1; k < 4; ++k) {
        if (k == i) continue;
        for (int m = 0; m < 4; ++m)
          if (m != i && m != j && m != k) d2 += 2.0 * (at - x[m]);
      }
    }
    sum += f[i] * d2 / denom;
  }
  return sum;
}

// Extended arrays with the origin prepended when its value is known.
struct Extended {
  std::vector<double> x, f;
  std::size_t offset;
};

Extended extend(const RadialGrid& grid, std::span<const double> f, std::optional<double> at_origin) {
  Extended e;
  e.offset = at_origin ? 1 : 0;
  e.x.reserve(f.size() + 1);
  e.f.reserve(f.size() + 1);
  if (at_origin) {
    e.x.push_back(0.0);
    e.f.push_back(*at_origin);
  }
  for (std::size_t j = 0; j < f.size(); ++j) {
    e.x.push_back(grid[j]);
    e.f.push_back(f[j]);
  }
  return e;
}

}  // namespace

std::vector<double> fd_first(const RadialGrid& grid, std::span<const double> f,
                             std::optional<double> at_origin) {
  check_size(grid, f.size());
  const Extended e = extend(grid, f, at_origin);
  const std::size_t m = e.x.size();
  if (m < 3) throw ValidationError("profile.size", "finite differences need three points");
  std::vector<double> out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const std::size_t i = j + e.offset;
    const std::size_t c = std::clamp<std::size_t>(i, 1, m - 2);
    const Stencil3 s = first_coeffs(e.x[c - 1], e.x[c], e.x[c + 1], e.x[i]);
    out[j] = s.a0 * e.f[c - 1] + s.a1 * e.f[c] + s.a2 * e.f[c + 1];
  }
  return out;
}

std::vector<double> fd_second(const RadialGrid& grid, std::span<const double> f,
                              std::optional<double> at_origin) {
  check_size(grid, f.size());
  const Extended e = extend(grid, f, at_origin);
  const std::size_t m = e.x.size();
  if (m < 4) throw ValidationError("profile.size", "second differences need four points");
  std::vector<double> out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const std::size_t i = j + e.offset;
    if (i == 0) {
      out[j] = second_cubic(&e.x[0], &e.f[0], e.x[0]);
    } else if (i == m - 1) {
      out[j] = second_cubic(&e.x[m - 4], &e.f[m - 4], e.x[i]);
    } else {
      const Stencil3 s = second_coeffs(e.x[i - 1], e.x[i], e.x[i + 1]);
      out[j] = s.a0 * e.f[i - 1] + s.a1 * e.f[i] + s.a2 * e.f[i + 1];
    }
  }
  return out;
}

RadialProfile::RadialProfile(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw ValidationError("profile.grid", "profile needs a grid");
  check_size(*grid_, values_.size());
  for (double v : values_)
    if (!std::isfinite(v)) throw NumericalError("profile.finite", "profile values must be finite");
}

RadialProfile::RadialProfile(GridPtr grid, std::vector<double> values, std::vector<double> d1,
                             std::vector<double> d2)
    : RadialProfile(std::move(grid), std::move(values)) {
  check_size(*grid_, d1.size());
  check_size(*grid_, d2.size());
  d1_ = std::move(d1);
  d2_ = std::move(d2);
}

RadialProfile RadialProfile::with_fd_derivatives(std::optional<double> at_origin) const {
  return RadialProfile(grid_, values_, fd_first(*grid_, values_, at_origin),
                       fd_second(*grid_, values_, at_origin));
}

double RadialProfile::integrate() const { return grid_->integrate(values_); }

double RadialProfile::at(double r, std::optional<double> at_origin) const {
  const RadialGrid& g = *grid_;
  if (r <= g[0]) {
    if (at_origin) return *at_origin + (values_[0] - *at_origin) * r / g[0];
    if (g.size() == 1) return values_[0];
    const double slope = (values_[1] - values_[0]) / (g[1] - g[0]);
    return values_[0] + slope * (r - g[0]);
  }
  const std::size_t j = std::min(g.locate(r), g.size() - 2);
  const double t = (r - g[j]) / (g[j + 1] - g[j]);
  return (1.0 - t) * values_[j] + t * values_[j + 1];
}

double l2_distance(const RadialProfile& a, const RadialProfile& b) {
  if (a.grid_ptr() != b.grid_ptr() && a.grid().nodes().size() != b.grid().nodes().size())
    throw ValidationError("profile.grid", "profiles live on different grids");
  std::vector<double> d(a.size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(a.grid().integrate(d));
}

}  // namespace wrinkle
