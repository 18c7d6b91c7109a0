#include "wrinkle/energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "energy_internal.hpp"
#include "wrinkle/errors.hpp"

namespace wrinkle {

Deformation Deformation::from_xi(FourierField u_r, FourierField u_theta, const FourierField& xi,
                                 const SheetParams& p) {
  const RadialGrid& grid = xi.grid();
  std::vector<std::vector<Mode>> modes(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto src = xi.modes(j);
    modes[j].assign(src.begin(), src.end());
    if (modes[j].empty() || modes[j].front().k != 0) modes[j].insert(modes[j].begin(), Mode{});
    const double r = grid[j];
    Mode& m0 = modes[j].front();
    m0.c += r * r / (2.0 * p.R);
    m0.c_r += r / p.R;
    m0.c_rr += 1.0 / p.R;
  }
  const Parity parity = xi.parity() == Parity::sine ? Parity::mixed : xi.parity();
  FourierField w(xi.grid_ptr(), parity, std::move(modes), true);
  return {std::move(u_r), std::move(u_theta), std::move(w)};
}

Deformation Deformation::radial(const RadialProfile& v, const RadialProfile& w) {
  const RadialProfile vd = v.has_derivatives() ? v : v.with_fd_derivatives(0.0);
  const RadialProfile wd = w.has_derivatives() ? w : w.with_fd_derivatives();
  auto single = [](const RadialProfile& f) {
    std::vector<std::vector<Mode>> modes(f.size());
    for (std::size_t j = 0; j < f.size(); ++j)
      modes[j] = {Mode{0, f[j], 0.0, f.d1()[j], 0.0, f.d2()[j], 0.0}};
    return FourierField(f.grid_ptr(), Parity::cosine, std::move(modes), true);
  };
  return {single(vd), FourierField::zero(v.grid_ptr(), Parity::sine), single(wd)};
}

int Deformation::k_max() const { return std::max({u_r.k_max(), u_theta.k_max(), w.k_max()}); }

std::size_t required_samples(int k_max) {
  std::size_t M = 1;
  while (M <= static_cast<std::size_t>(4 * k_max + 1)) M *= 2;
  return M;
}

std::vector<NodeEnergy> node_energies(const Deformation& d, const SheetParams& p,
                                      const EnergyOptions& options) {
  if (d.u_r.size() != d.w.size() || d.u_theta.size() != d.w.size())
    throw ValidationError("energy.grid", "displacement fields live on different grids");
  const int K = d.k_max();
  std::size_t M = options.M;
  if (M == 0) {
    M = required_samples(K);
  } else if (M <= static_cast<std::size_t>(4 * K)) {
    throw ValidationError("energy.samples",
                          "M=" + std::to_string(M) + " aliases quartic products of mode " +
                              std::to_string(K) + "; need M >= " + std::to_string(4 * K + 1));
  }
  return options.backend == Backend::parallel ? detail::node_energies_parallel(d, p, M)
                                              : detail::node_energies_serial(d, p, M);
}

namespace {

template <class F>
double integrate_field(const RadialGrid& grid, const std::vector<NodeEnergy>& nodes, F get) {
  std::vector<double> f(nodes.size());
  std::transform(nodes.begin(), nodes.end(), f.begin(), get);
  return grid.integrate(f);
}

EnergyBreakdown assemble(const RadialGrid& grid, const std::vector<NodeEnergy>& nodes) {
  EnergyBreakdown b;
  b.membrane_radial = integrate_field(grid, nodes, [](auto& e) { return e.radial; });
  b.membrane_hoop = integrate_field(grid, nodes, [](auto& e) { return e.hoop; });
  b.shear = integrate_field(grid, nodes, [](auto& e) { return e.shear; });
  b.bending_azimuthal = integrate_field(grid, nodes, [](auto& e) { return e.bend_az; });
  b.bending_radial = integrate_field(grid, nodes, [](auto& e) { return e.bend_rad; });
  b.bending_twist = integrate_field(grid, nodes, [](auto& e) { return e.twist; });
  b.substrate = integrate_field(grid, nodes, [](auto& e) { return e.substrate; });
  for (std::size_t i = 0; i < 5; ++i)
    b.remainder[i] = integrate_field(grid, nodes, [i](auto& e) { return e.t[i]; });
  b.total = b.parts_sum();
  return b;
}

}  // namespace

EnergyBreakdown full_energy(const Deformation& d, const SheetParams& p,
                            const EnergyOptions& options) {
  validate_params(p);
  const EnergyBreakdown b = assemble(d.grid(), node_energies(d, p, options));
  if (!std::isfinite(b.total)) throw NumericalError("energy.nonfinite", "energy is not finite");
  return b;
}

Decomposition decomposed_energy(const Deformation& d, const SheetParams& p,
                                const EnergyOptions& options, double tolerance) {
  validate_params(p);
  const auto nodes = node_energies(d, p, options);
  const RadialGrid& grid = d.grid();
  Decomposition out;
  out.full = assemble(grid, nodes);
  out.effective_radial = integrate_field(grid, nodes, [](auto& e) { return e.effective_radial; });
  out.circle = integrate_field(grid, nodes, [](auto& e) { return e.circle; });
  out.substrate_mean = integrate_field(grid, nodes, [](auto& e) { return e.substrate_mean; });
  out.bending_mean = integrate_field(grid, nodes, [](auto& e) { return e.bending_mean; });
  out.total = out.effective_radial + out.circle + out.substrate_mean + out.bending_mean +
              out.full.remainder_sum();
  out.relative_error = std::abs(out.total - out.full.total) / std::abs(out.full.total);

  auto profile = [&](auto get) {
    std::vector<double> f(nodes.size());
    std::transform(nodes.begin(), nodes.end(), f.begin(), get);
    return RadialProfile(d.w.grid_ptr(), std::move(f));
  };
  out.B = profile([](auto& e) { return e.B; });
  out.W_r = profile([](auto& e) { return e.circle; });
  out.eta = profile([](auto& e) { return e.eta; });
  out.sigma = profile([](auto& e) { return e.sigma; });

  if (!(out.relative_error <= tolerance))
    throw NumericalError("energy.decomposition",
                         "decomposition misses the full energy by " +
                             std::to_string(out.relative_error) + " (relative)");
  return out;
}

std::string_view to_string(Reference ref) {
  return ref == Reference::min_f0 ? "min-F0" : "min-Fh";
}

double excess_energy(const Deformation& d, const SheetParams& p, double reference_value,
                     const EnergyOptions& options) {
  return full_energy(d, p, options).total - reference_value;
}

}  // namespace wrinkle
