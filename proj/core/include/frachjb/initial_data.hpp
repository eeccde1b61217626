#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "frachjb/grid.hpp"

namespace frachjb {

/// Named initial data. In two dimensions the profile is summed over axes.
///   triangle   min(x, L - x)            (kinks at 0 and L/2)
///   sine       sin(2 pi x / L)
///   exp_sin    exp(sin(2 pi x / L))
///   abs_sin    |sin(2 pi x / L)|
///   cos_mix    sin(2 pi x / L) + cos(6 pi x / L)
///   zero       0
GridField initial_datum(const PeriodicGrid& grid, const std::string& name);
const std::vector<std::string>& initial_datum_names();

/// Random trigonometric field with Lipschitz constant at most `lipschitz`
/// (modes 1..8, sup of the derivative bounded by the coefficient sum).
GridField random_lipschitz_field(const PeriodicGrid& grid, double lipschitz, std::uint64_t seed);

/// u0 <= v0 node-wise: u0 random Lipschitz, v0 = u0 + a nonnegative random
/// Lipschitz bump (possibly touching u0).
std::pair<GridField, GridField> random_ordered_pair(const PeriodicGrid& grid, double lipschitz, std::uint64_t seed);

}  // namespace frachjb
