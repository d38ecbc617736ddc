#include "cubepack/lift.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cubepack/error.hpp"
#include "cubepack/union_kernel.hpp"

namespace cubepack {
namespace {

constexpr int kMaxGeneratorLevel = 28;

using i128 = __int128;

std::vector<std::uint64_t> cantor_cells(const CantorDescription& d, int k) {
  const auto n = static_cast<i128>(d.base());
  const auto dmin = static_cast<i128>(d.alphabet().front());
  const auto dmax = static_cast<i128>(d.alphabet().back());
  if (2.0 * std::log2(static_cast<double>(d.base())) + 2.0 * k > 120.0) {
    throw Error(ErrorCode::kSizeLimit, "base and level too large for exact cell search");
  }
  const i128 top = i128{1} << k;
  int cut = 0;
  for (i128 p = 1; p < top; p *= n) ++cut;

  // Hull of cylinder c at level L: [(c(n-1) + dmin), (c(n-1) + dmax)] / ((n-1) n^L).
  std::vector<std::uint64_t> cells;
  struct Node {
    i128 c;
    int level;
    i128 power;  // n^level
  };
  std::vector<Node> stack{{0, 0, 1}};
  while (!stack.empty()) {
    const Node node = stack.back();
    stack.pop_back();
    const i128 denom = (n - 1) * node.power;
    const i128 lo = ((node.c * (n - 1) + dmin) << k) / denom;
    const i128 hi = std::min(((node.c * (n - 1) + dmax) << k) / denom, top - 1);
    if (lo == hi || node.level >= cut) {
      // Both hull endpoints belong to the set, so every cell between them is met.
      for (i128 i = lo; i <= hi; ++i) cells.push_back(static_cast<std::uint64_t>(i));
      continue;
    }
    for (auto it = d.alphabet().rbegin(); it != d.alphabet().rend(); ++it) {
      stack.push_back({node.c * n + *it, node.level + 1, node.power * n});
    }
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

}  // namespace

LiftedSet lift(Generator generator, int dimension) {
  if (dimension < 2 || dimension > kMaxDimension) {
    throw Error(ErrorCode::kDomain, "lifting needs dimension in [2, " + std::to_string(kMaxDimension) + "]");
  }
  return LiftedSet{dimension, std::move(generator)};
}

std::vector<std::uint64_t> generator_cells(const Generator& generator, int k) {
  if (k < 0 || k > kMaxGeneratorLevel) throw Error(ErrorCode::kDomain, "generator level must be in [0, 28]");
  if (const auto* cantor = std::get_if<CantorDescription>(&generator)) return cantor_cells(*cantor, k);
  return std::get<BlockedDescription>(generator).cells_f1(k);
}

std::vector<IndexBox> lifted_boxes(const LiftedSet& lifted, int k) {
  const auto cells = generator_cells(lifted.generator, k);
  const std::int64_t last = (std::int64_t{1} << k) - 1;
  std::vector<std::pair<std::int64_t, std::int64_t>> runs;
  for (std::uint64_t c : cells) {
    const auto i = static_cast<std::int64_t>(c);
    if (!runs.empty() && runs.back().second + 1 == i) {
      runs.back().second = i;
    } else {
      runs.emplace_back(i, i);
    }
  }
  std::vector<IndexBox> boxes;
  for (int axis = 0; axis < lifted.dimension; ++axis) {
    for (const auto& [a, b] : runs) {
      IndexBox box;
      for (int j = 0; j < lifted.dimension; ++j) {
        box.lo[j] = 0;
        box.hi[j] = last;
      }
      box.lo[axis] = a;
      box.hi[axis] = b;
      boxes.push_back(box);
    }
  }
  return boxes;
}

GridCover lifted_cover(const LiftedSet& lifted, int k) {
  const auto boxes = lifted_boxes(lifted, k);
  return GridCover(lifted.dimension, k, kernels::union_cells(lifted.dimension, boxes));
}

std::uint64_t lifted_count_formula(int dimension, std::uint64_t generator_count, int k) {
  const std::uint64_t side = std::uint64_t{1} << k;
  if (generator_count > side) throw Error(ErrorCode::kDomain, "more generator cells than grid cells");
  std::uint64_t all = 1;
  std::uint64_t missed = 1;
  for (int j = 0; j < dimension; ++j) {
    all *= side;
    missed *= side - generator_count;
  }
  return all - missed;
}

bool lifted_contains(std::span<const std::uint64_t> generator_cells, std::span<const std::int64_t> cell) {
  for (std::int64_t c : cell) {
    if (c >= 0 && std::binary_search(generator_cells.begin(), generator_cells.end(), static_cast<std::uint64_t>(c))) {
      return true;
    }
  }
  return false;
}

LiftedCube packing_from_lift(const LiftedSet& lifted, double t, int k) {
  if (!(t > 0.0 && t < 1.0)) throw Error(ErrorCode::kDomain, "side length must lie in (0,1)");
  LiftedCube cube;
  if (const auto* cantor = std::get_if<CantorDescription>(&lifted.generator)) {
    const Witness w = find_witnesses(*cantor, t, k);
    // Finish both prefixes with the smallest digit forever; the shift is the
    // same for x and y, so x - y is unchanged and both points lie in F.
    const double tail = static_cast<double>(cantor->alphabet().front()) /
                        (static_cast<double>(cantor->base() - 1) * std::pow(static_cast<double>(cantor->base()), k));
    cube.x = w.x + tail;
    cube.y = w.y + tail;
  } else {
    const auto& blocked = std::get<BlockedDescription>(lifted.generator);
    if (k < 1 || k > 62) throw Error(ErrorCode::kDomain, "block witness level must be in [1, 62]");
    // x = 1 - b and y = a with a + b = 1 - t, a in A, b in B.
    const double scale = std::ldexp(1.0, k);
    const auto target = static_cast<std::uint64_t>(
        std::clamp(std::llround((1.0 - t) * scale), 1LL, static_cast<long long>(scale) - 1));
    const auto [a, b] = blocked.split(target, k);
    cube.x = 1.0 - std::ldexp(static_cast<double>(b), -k);
    cube.y = std::ldexp(static_cast<double>(a), -k);
  }
  cube.side = cube.x - cube.y;
  if (!(cube.side > 0.0 && cube.side < 1.0)) {
    throw Error(ErrorCode::kNotRepresentable, "witness pair does not give a side in (0,1)");
  }
  cube.center.assign(static_cast<std::size_t>(lifted.dimension), (cube.x + cube.y) / 2.0);
  return cube;
}

}  // namespace cubepack
