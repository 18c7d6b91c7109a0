#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "wrinkle/fourier_field.hpp"
#include "wrinkle/params.hpp"
#include "wrinkle/profile.hpp"

namespace wrinkle {

// In-plane displacement (u_r, u_theta) and out-of-plane displacement stored as
// w = xi + r^2/(2R), whose k = 0 part is the mean profile w-bar.
struct Deformation {
  FourierField u_r;
  FourierField u_theta;
  FourierField w;

  // Builds w from xi by adding r^2/(2R) to the k = 0 mode.
  static Deformation from_xi(FourierField u_r, FourierField u_theta, const FourierField& xi,
                             const SheetParams& p);
  // Axisymmetric deformation u_r = v(r), u_theta = 0, w = w(r).
  static Deformation radial(const RadialProfile& v, const RadialProfile& w);

  int k_max() const;
  const RadialGrid& grid() const { return w.grid(); }
};

// Energies are azimuthal averages integrated against r dr, i.e. E_h / (2 pi),
// the normalization under which the radial functionals are comparable.
struct EnergyBreakdown {
  double membrane_radial = 0.0;    // (d_r u_r + (d_r xi)^2 / 2)^2
  double membrane_hoop = 0.0;      // (d_t u_t / r + u_r / r + (d_t xi)^2 / (2 r^2))^2
  double shear = 0.0;              // (1/2) |d_t u_r / r + d_r u_t - u_t / r + d_r xi d_t xi / r|^2
  double bending_azimuthal = 0.0;  // h^2 / r^4 (d_tt xi)^2
  double bending_radial = 0.0;     // h^2 (d_rr xi)^2
  double bending_twist = 0.0;      // 2 h^2 / r^2 (d_rt xi)^2
  double substrate = 0.0;          // alpha h^{-2} w^2
  std::array<double, 5> remainder{};  // T1..T5
  double total = 0.0;

  double bending() const { return bending_azimuthal + bending_radial + bending_twist; }
  double parts_sum() const {
    return membrane_radial + membrane_hoop + shear + bending() + substrate;
  }
  double remainder_sum() const {
    return remainder[0] + remainder[1] + remainder[2] + remainder[3] + remainder[4];
  }
};

// Per-node azimuthal averages; integrating each against r dr gives the
// breakdown and the decomposition.
struct NodeEnergy {
  double radial = 0.0, hoop = 0.0, shear = 0.0, bend_az = 0.0, bend_rad = 0.0, twist = 0.0,
         substrate = 0.0;
  double effective_radial = 0.0;  // (u_r' + (r/R - w')^2/2 + B/2)^2 with barred fields
  double circle = 0.0;            // W_r(u_r/r, w)
  double substrate_mean = 0.0;    // alpha h^{-2} w-bar^2
  double bending_mean = 0.0;      // h^2 (w-bar'' - 1/R)^2
  std::array<double, 5> t{};      // remainder integrands
  double B = 0.0;                 // mean |d_r (w - w-bar)|^2
  double eta = 0.0;               // u_r-bar / r
  double sigma = 0.0;             // mean (d_t w)^2 / r^2
};

enum class Backend { parallel, serial_reference };

struct EnergyOptions {
  std::size_t M = 0;  // angular samples; 0 picks the smallest power of two > 4 k_max + 1
  Backend backend = Backend::parallel;
};

// Smallest power of two strictly greater than 4 k_max + 1.
std::size_t required_samples(int k_max);

std::vector<NodeEnergy> node_energies(const Deformation& d, const SheetParams& p,
                                      const EnergyOptions& options = {});

EnergyBreakdown full_energy(const Deformation& d, const SheetParams& p,
                            const EnergyOptions& options = {});

struct Decomposition {
  EnergyBreakdown full;
  double effective_radial = 0.0;
  double circle = 0.0;
  double substrate_mean = 0.0;
  double bending_mean = 0.0;
  double total = 0.0;           // effective parts + remainder
  double relative_error = 0.0;  // |total - full.total| / |full.total|
  RadialProfile B;
  RadialProfile W_r;
  RadialProfile eta;
  RadialProfile sigma;
};

// Splits E_h into effective radial, per-circle, mean substrate and mean
// bending parts plus the five remainder terms. Throws NumericalError when
// the parts fail to add up to the full energy within `tolerance` (relative).
Decomposition decomposed_energy(const Deformation& d, const SheetParams& p,
                                const EnergyOptions& options = {}, double tolerance = 1e-10);

enum class Reference { min_f0, min_fh };
std::string_view to_string(Reference ref);

// full_energy(d).total - reference_value.
double excess_energy(const Deformation& d, const SheetParams& p, double reference_value,
                     const EnergyOptions& options = {});

}  // namespace wrinkle
