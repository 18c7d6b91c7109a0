#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wrinkle/banded.hpp"

namespace wrinkle {

// Smooth objective for the first-order solver. `eval` returns F(x) and, when
// `grad` is non-empty, writes the gradient into it. `metric` returns an SPD
// band matrix used as the (fixed between refreshes) inner product.
struct DescentProblem {
  std::function<double(std::span<const double> x, std::span<double> grad)> eval;
  std::function<BandedSpd(std::span<const double> x)> metric;
};

struct DescentOptions {
  int max_iterations = 20000;
  double grad_rtol = 1e-10;     // dual-norm gradient relative to its initial value
  double stall_rtol = 1e-12;    // relative energy decrease over `stall_window` iterations
  int stall_window = 50;
  int metric_refresh = 0;       // re-evaluate the metric every k accepted steps (0: never)
  bool record_history = false;
  int polish_iterations = 200;  // gradient-norm steps after an energy stall
};

struct DescentResult {
  std::vector<double> x;
  double energy = 0.0;
  double grad_norm = 0.0;   // sqrt(g^T P^{-1} g) at x
  double grad_norm0 = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string stop_reason;
  std::vector<double> history;  // energy after every accepted step
};

// Monotone accelerated gradient descent in the metric P with backtracking
// and adaptive restart. Throws NumericalError when max_iterations is reached
// without meeting either stopping rule.
DescentResult minimize_accelerated(const DescentProblem& problem, std::vector<double> x0,
                                   const DescentOptions& options);

}  // namespace wrinkle
