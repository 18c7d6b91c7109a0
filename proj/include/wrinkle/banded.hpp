#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wrinkle {

// Symmetric positive definite band matrix with in-place Cholesky factorization.
class BandedSpd {
 public:
  BandedSpd() = default;
  BandedSpd(std::size_t n, std::size_t half_bandwidth);

  std::size_t size() const { return n_; }
  std::size_t half_bandwidth() const { return b_; }

  // Adds v to A(i, j) and, implicitly, A(j, i). |i - j| must be <= bandwidth.
  void add(std::size_t i, std::size_t j, double v);
  double get(std::size_t i, std::size_t j) const;

  // y = A x; only valid before factorize().
  void multiply(std::span<const double> x, std::span<double> y) const;

  // Throws NumericalError if a pivot is not positive.
  void factorize();
  // Solves A x = b with the factor; b and x may alias.
  void solve(std::span<const double> b, std::span<double> x) const;

 private:
  double& lower(std::size_t i, std::size_t j) { return a_[i * (b_ + 1) + (i - j)]; }
  double lower(std::size_t i, std::size_t j) const { return a_[i * (b_ + 1) + (i - j)]; }

  std::size_t n_ = 0, b_ = 0;
  std::vector<double> a_;
  bool factored_ = false;
};

}  // namespace wrinkle
