#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wrinkle/energy.hpp"
#include "wrinkle/grid.hpp"
#include "wrinkle/params.hpp"

namespace wrinkle {

// One thickness of a sweep. `epsilon` is measured against min F0 (the
// definition of the excess energy), `epsilon_fh` against min F_h, the lower
// bound the energy decomposition actually proves.
struct SweepRecord {
  double h = 0.0;
  double delta = 0.0;
  int N = 0;
  std::size_t n_nodes = 0;
  std::size_t M = 0;
  int k_max = 0;
  double min_F0 = 0.0;
  double min_Fh = 0.0;
  double E_h_ansatz = 0.0;
  double epsilon = 0.0;
  double epsilon_fh = 0.0;
  double B_max = 0.0;
  double sigma_defect = 0.0;  // max |sigma - sigma~| over the nodes
  double sup_slope = 0.0;     // sup over r, theta of |d_theta w_osc|
  double onset = 0.0;         // start of v_h's wrinkled branch
  std::string status = "ok";  // "ok" or the error code of the failure
  double runtime_s = 0.0;

  bool ok() const { return status == "ok"; }
};

struct SweepOptions {
  std::size_t n_nodes = 0;  // 0: default_node_count(p) per h
  Refinement refinement = Refinement::uniform;
  Backend backend = Backend::parallel;
  int jobs = 1;  // concurrent h cases
  // epsilon_fh below -epsilon_tolerance |min F_h| is a hard failure
  double epsilon_tolerance = 1e-5;
};

// Runs the full pipeline per h: F_h solve, ansatz, energy. Failures of one h
// are recorded in its status and the sweep continues. Records come back in
// the order of `h_list`, which must be strictly decreasing.
std::vector<SweepRecord> run_sweep(const SheetParams& p, std::span<const double> h_list,
                                   const SweepOptions& options = {});

// Geometric list from `start` down to `stop` with `points` entries.
std::vector<double> geometric_h(double start, double stop, int points);

// Upper estimate of the angular samples the ansatz energy needs at h.
std::size_t planned_samples(const SheetParams& p, double h);

// h = start, start/2, ... while planned_samples * nodes stays within budget.
std::vector<double> default_h_list(const SheetParams& p, double start = 1e-2,
                                   std::size_t budget = std::size_t{1} << 22);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;  // log y at log x = 0
  double stderr_slope = 0.0;
  std::size_t points = 0;
  double decades = 0.0;
};

// Least squares of log y against log x. Needs >= 4 positive points spanning
// at least `min_decades` in x; throws ValidationError otherwise.
SlopeFit fit_slope(std::span<const double> x, std::span<const double> y,
                   double min_decades = 1.0);

// kappa(t) = exp(c1 (log t)^{1/2} log log t)
double kappa(double t, double c1);

struct BoundFits {
  double c0 = 0.0;  // min epsilon / h
  double c1 = 0.0;  // smallest c1 with epsilon <= kappa(1/h) h at every point
  double ratio_min = 0.0, ratio_max = 0.0;  // range of epsilon / h
  std::size_t points = 0;
};

// Over records with positive epsilon.
BoundFits fit_bounds(std::span<const SweepRecord> records);

}  // namespace wrinkle
