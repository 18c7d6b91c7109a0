#include "wrinkle/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wrinkle/errors.hpp"

namespace wrinkle {

BandedSpd::BandedSpd(std::size_t n, std::size_t half_bandwidth)
    : n_(n), b_(half_bandwidth), a_(n * (half_bandwidth + 1), 0.0) {}

void BandedSpd::add(std::size_t i, std::size_t j, double v) {
  if (i < j) std::swap(i, j);
  if (i - j > b_ || i >= n_) throw ValidationError("banded.index", "entry outside the band");
  lower(i, j) += v;
}

double BandedSpd::get(std::size_t i, std::size_t j) const {
  if (i < j) std::swap(i, j);
  return (i - j > b_) ? 0.0 : lower(i, j);
}

void BandedSpd::multiply(std::span<const double> x, std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > b_ ? i - b_ : 0;
    for (std::size_t j = j0; j < i; ++j) {
      const double a = lower(i, j);
      y[i] += a * x[j];
      y[j] += a * x[i];
    }
    y[i] += lower(i, i) * x[i];
  }
}

void BandedSpd::factorize() {
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > b_ ? i - b_ : 0;
    for (std::size_t j = j0; j <= i; ++j) {
      double sum = lower(i, j);
      const std::size_t k0 = std::max(j0, j > b_ ? j - b_ : 0);
      for (std::size_t k = k0; k < j; ++k) sum -= lower(i, k) * lower(j, k);
      if (i == j) {
        if (!(sum > 0.0))
          throw NumericalError("banded.pivot",
                               "metric is not positive definite at row " + std::to_string(i));
        lower(i, i) = std::sqrt(sum);
      } else {
        lower(i, j) = sum / lower(j, j);
      }
    }
  }
  factored_ = true;
}

void BandedSpd::solve(std::span<const double> b, std::span<double> x) const {
  if (!factored_) throw ValidationError("banded.state", "solve() before factorize()");
  if (x.data() != b.data()) std::copy(b.begin(), b.end(), x.begin());
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > b_ ? i - b_ : 0;
    double sum = x[i];
    for (std::size_t j = j0; j < i; ++j) sum -= lower(i, j) * x[j];
    x[i] = sum / lower(i, i);
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    double sum = x[ii];
    const std::size_t j1 = std::min(n_ - 1, ii + b_);
    for (std::size_t j = ii + 1; j <= j1; ++j) sum -= lower(j, ii) * x[j];
    x[ii] = sum / lower(ii, ii);
  }
}

}  // namespace wrinkle
