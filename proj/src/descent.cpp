#include "wrinkle/descent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wrinkle/errors.hpp"

namespace wrinkle {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

DescentResult minimize_accelerated(const DescentProblem& problem, std::vector<double> x0,
                                   const DescentOptions& options) {
  const std::size_t n = x0.size();
  DescentResult res;
  std::vector<double> x = std::move(x0), x_prev(n), y(n), z(n);
  std::vector<double> gx(n), gy(n), gz(n), dx(n), dy(n);

  BandedSpd metric = problem.metric(x);
  metric.factorize();

  double fx = problem.eval(x, gx);
  metric.solve(gx, dx);
  res.grad_norm0 = std::sqrt(std::max(dot(gx, dx), 0.0));
  res.grad_norm = res.grad_norm0;
  if (options.record_history) res.history.push_back(fx);
  std::vector<double> recent{fx};

  // Near the floating-point floor energy differences stop being informative.
  // Finish with steps accepted on decrease of the dual gradient norm, which
  // stays resolvable well below sqrt(machine epsilon).
  auto polish = [&] {
    const double target = options.grad_rtol * res.grad_norm0;
    double inv = 1.0;
    for (int k = 0; k < options.polish_iterations && res.grad_norm > target; ++k) {
      for (std::size_t i = 0; i < n; ++i) z[i] = x[i] - dx[i] / inv;
      const double fz = problem.eval(z, gz);
      std::vector<double> dz(n);
      metric.solve(gz, dz);
      const double gn = std::sqrt(std::max(dot(gz, dz), 0.0));
      if (std::isfinite(fz) && gn < res.grad_norm) {
        x = z;
        fx = fz;
        gx = gz;
        dx = dz;
        res.grad_norm = gn;
        inv = std::max(inv * 0.5, 1.0);
      } else {
        inv *= 2.0;
        if (inv > 1e6) break;
      }
    }
    return res.grad_norm <= target;
  };
  auto finish = [&](bool converged, std::string reason) {
    if (reason != "gradient" && res.grad_norm > options.grad_rtol * res.grad_norm0 && polish()) {
      converged = true;
      reason += " + gradient polish";
    }
    res.x = x;
    res.energy = fx;
    res.converged = converged;
    res.stop_reason = std::move(reason);
    return res;
  };
  if (res.grad_norm0 == 0.0) return finish(true, "zero gradient");

  y = x;
  double fy = fx;
  gy = gx;
  dy = dx;
  double t = 1.0;
  double inv_step = 1.0;
  int accepted = 0;
  bool y_is_x = true;

  for (int it = 1; it <= options.max_iterations; ++it) {
    res.iterations = it;
    const double gd = dot(gy, dy);
    double fz = 0.0;
    bool stuck = false;
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) z[i] = y[i] - dy[i] / inv_step;
      fz = problem.eval(z, gz);
      const double slack = 1e-15 * std::abs(fy);
      if (std::isfinite(fz) && fz <= fy - 0.5 * gd / inv_step + slack) break;
      inv_step *= 2.0;
      if (inv_step > 1e14) {
        stuck = true;
        break;
      }
    }
    if (stuck) return finish(false, "line search stalled");

    if (fz < fx) {
      x_prev = x;
      x = z;
      fx = fz;
      gx = gz;
      ++accepted;
    } else {
      // Momentum overshot: restart from the best point.
      if (y_is_x) return finish(true, "no further decrease");
      t = 1.0;
      y = x;
      fy = fx;
      gy = gx;
      dy = dx;
      y_is_x = true;
      continue;
    }

    if (options.metric_refresh > 0 && accepted % options.metric_refresh == 0) {
      metric = problem.metric(x);
      metric.factorize();
    }
    metric.solve(gx, dx);
    res.grad_norm = std::sqrt(std::max(dot(gx, dx), 0.0));
    if (options.record_history) res.history.push_back(fx);
    recent.push_back(fx);

    if (res.grad_norm <= options.grad_rtol * res.grad_norm0) return finish(true, "gradient");
    const auto w = static_cast<std::size_t>(options.stall_window);
    if (recent.size() > w) {
      const double before = recent[recent.size() - 1 - w];
      if (before - fx <= options.stall_rtol * std::abs(fx)) return finish(true, "energy stall");
    }

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double beta = (t - 1.0) / t_next;
    t = t_next;
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + beta * (x[i] - x_prev[i]);
    fy = problem.eval(y, gy);
    y_is_x = beta == 0.0;
    if (!(fy <= fx) && beta > 0.0) {
      t = 1.0;
      y = x;
      fy = fx;
      gy = gx;
      y_is_x = true;
    }
    metric.solve(gy, dy);
    inv_step = std::max(inv_step * 0.5, 0.5);
  }

  std::ostringstream os;
  os.precision(6);
  os << "descent did not converge in " << options.max_iterations
     << " iterations; final gradient norm " << res.grad_norm << " (initial " << res.grad_norm0
     << ")";
  throw NumericalError("descent.max_iterations", os.str());
}

}  // namespace wrinkle
