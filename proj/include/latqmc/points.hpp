#pragma once

#include "latqmc/kernel.hpp"
#include "latqmc/space.hpp"

namespace latqmc {

/// N x s matrix whose row n is {n z / N}; with `tent` the tent transform is
/// applied componentwise.
Matrix lattice_points(const GeneratingVector& z, bool tent = false);

}  // namespace latqmc
