#pragma once

#include <cstdint>

#include "tqg/field.hpp"

namespace tqg {

/// Band-limited random real field, deterministic in the seed.
///
/// Modes with 0 < |m|_inf <= max_mode get coefficient magnitude
/// (1+|k|^2)^{slope/4} (modal energy ~ (1+|k|^2)^{slope/2}) and a phase
/// drawn from xoshiro256**, in a fixed lattice order; conjugate symmetry is
/// enforced by construction. The result is scaled to the requested L2 norm.
ScalarField random_bandlimited(const Grid& grid, uint64_t seed, double slope,
                               int max_mode, double l2_norm = 1.0);

}  // namespace tqg
