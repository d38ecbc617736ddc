#pragma once

// Lifting a one-dimensional generator F to L(F), the union of the slabs
// {z : z_j in F} in [0,1]^n.
//
// This is the axis-parallel form of the family of slope +-1 lines through
// F x {0}: the linear change of coordinates (x, y) -> (x + y, y - x) sends
// those lines to horizontal and vertical lines at coordinates in F, and the
// enclosed tilted squares to the axis-aligned squares [y, x]^2.

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "cubepack/cantor.hpp"
#include "cubepack/geometry.hpp"

namespace cubepack {

using Generator = std::variant<CantorDescription, BlockedDescription>;

struct LiftedSet {
  int dimension = 2;
  Generator generator;
};

LiftedSet lift(Generator generator, int dimension);

/// Sorted dyadic cells [i 2^-k, (i+1) 2^-k), 0 <= i < 2^k, meeting the
/// (closed) generator set. Exact: cylinders are refined until their convex
/// hull sits in one cell or is no wider than a cell.
std::vector<std::uint64_t> generator_cells(const Generator& generator, int k);

/// One slab per coordinate and maximal run of generator cells.
std::vector<IndexBox> lifted_boxes(const LiftedSet& lifted, int k);
GridCover lifted_cover(const LiftedSet& lifted, int k);

/// 2^{kn} - (2^k - m)^n; in the plane 2 m 2^k - m^2.
std::uint64_t lifted_count_formula(int dimension, std::uint64_t generator_count, int k);

/// Membership of a grid cell in the lifted cover, given the sorted generator
/// cells at the same level.
bool lifted_contains(std::span<const std::uint64_t> generator_cells, std::span<const std::int64_t> cell);

struct LiftedCube {
  double side = 0.0;  // x - y
  Point center;       // ((x + y) / 2, ...)
  double x = 0.0;
  double y = 0.0;
};

/// The cube [y, x]^n with x, y in F and |x - y - t| <= n^-k (Cantor
/// generators) or 2^-k (block generators). Its boundary lies in the lifted set.
LiftedCube packing_from_lift(const LiftedSet& lifted, double t, int k);

}  // namespace cubepack
