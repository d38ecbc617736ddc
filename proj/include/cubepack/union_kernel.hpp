#pragma once

// Union of integer boxes: the workhorse behind every cover count.
//
// Planar counts use a sweep line over strips of axis 0 (one strip per task).
// The parallel kernels tile the bounding box along axis 0 and rasterize each
// tile into a private bitmap (last axis contiguous in memory), so tiles are
// independent and need no atomics. The reference versions enumerate every
// cell of every box into a sorted vector; they are slow and exist only to
// check the tiled kernels.

#include <cstdint>
#include <span>
#include <vector>

#include "cubepack/geometry.hpp"

namespace cubepack::kernels {

/// Number of distinct cells covered by the boxes.
std::uint64_t count_union(int dimension, std::span<const IndexBox> boxes);

/// Covered cells, lexicographically sorted, flattened `dimension` per cell.
std::vector<std::int64_t> union_cells(int dimension, std::span<const IndexBox> boxes);

/// Largest number of boxes sharing a common cell (0 for no boxes).
int max_depth(int dimension, std::span<const IndexBox> boxes);

/// Merges boxes that agree on every axis but one and overlap or touch along
/// it. The union is unchanged.
std::vector<IndexBox> coalesce(int dimension, std::span<const IndexBox> boxes);

namespace reference {

std::uint64_t count_union(int dimension, std::span<const IndexBox> boxes);
std::vector<std::int64_t> union_cells(int dimension, std::span<const IndexBox> boxes);
int max_depth(int dimension, std::span<const IndexBox> boxes);

}  // namespace reference

}  // namespace cubepack::kernels
