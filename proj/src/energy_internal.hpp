#pragma once

#include <vector>

#include "wrinkle/energy.hpp"

namespace wrinkle::detail {

// Trig tables and per-node loop, OpenMP over nodes.
std::vector<NodeEnergy> node_energies_parallel(const Deformation& d, const SheetParams& p,
                                               std::size_t M);
// Direct cos/sin evaluation, two passes over the samples, one thread.
std::vector<NodeEnergy> node_energies_serial(const Deformation& d, const SheetParams& p,
                                             std::size_t M);

}  // namespace wrinkle::detail
