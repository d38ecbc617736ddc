#pragma once

// Simulated annealing over packing centers, minimizing the cover count at one
// scale. Used to look for packings that beat the lower bound (none should).

#include <cstdint>
#include <span>

#include "cubepack/geometry.hpp"

namespace cubepack {

struct AnnealingResult {
  SizePacking packing;  // best packing seen
  std::uint64_t best_count = 0;
  std::uint64_t initial_count = 0;
  std::uint64_t accepted = 0;
  std::uint64_t seed = 0;
};

/// `pieces` equal pieces ((j-1)/pieces, j/pieces] with seeded uniform centers.
SizePacking annealing_start(int dimension, int pieces, std::uint64_t seed);

/// Runs `budget` moves from `initial` at scale 2^-k. Each move jitters one
/// center uniformly in a ball of radius max(2^-k, T/(4 T0)); the temperature
/// cools geometrically by 0.995 per move regardless of the budget, so a larger
/// budget only extends the same run.
AnnealingResult adversarial_minimize(const SizePacking& initial, int k, std::uint64_t budget, std::uint64_t seed);

/// One run per seed from annealing_start(dimension, pieces, seed), in
/// parallel; the smallest count wins, ties to the earlier seed.
AnnealingResult adversarial_minimize(int dimension, int k, std::uint64_t budget,
                                     std::span<const std::uint64_t> seeds, int pieces = 32);

}  // namespace cubepack
