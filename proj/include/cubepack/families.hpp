#pragma once

// Packing families used by the audits and the CLI.

#include <cstdint>

#include "cubepack/audits.hpp"
#include "cubepack/cantor.hpp"
#include "cubepack/geometry.hpp"
#include "cubepack/lift.hpp"

namespace cubepack {

/// `pieces` pieces between sorted uniform breakpoints, uniform centers.
SizePacking random_packing(int dimension, int pieces, std::uint64_t seed);

/// Right faces aligned near x = 1: piece (a, b] is centered at
/// (1 - (a + b)/4, 1/2, ..., 1/2).
SizePacking aligned_packing(int dimension, int pieces = 4096);

/// One piece (0, 1] centered at (1/2, ..., 1/2).
SizePacking concentric_packing(int dimension);

/// Cantor set with base n and the symmetrized digit-split basis alphabet.
CantorDescription basis_cantor(std::int64_t n);

/// Samples t_j = (j + 1/2) / samples, each realized by packing_from_lift at
/// witness level `witness_level`.
SizePacking lifted_packing(const LiftedSet& lifted, int samples, int witness_level);

/// The separated radii at scale 2^-k split into two halves; each half has its
/// right faces aligned (at x = 1 and x = 0.9), so M is half the radius count.
SizePacking two_cluster_packing(int dimension, int k);

/// Restricted packing on E with seeded uniform centers per level-`center_level` cylinder.
RestrictedPacking restricted_random(const CantorDescription& e, int dimension, std::uint64_t seed,
                                    int center_level = 4);

}  // namespace cubepack
