#include "cubepack/families.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>

#include "cubepack/additive_basis.hpp"
#include "cubepack/error.hpp"

namespace cubepack {
namespace {

Point uniform_point(int dimension, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Point p(static_cast<std::size_t>(dimension));
  for (double& x : p) x = unit(rng);
  return p;
}

Point aligned_center(int dimension, double t, double plane) {
  Point c(static_cast<std::size_t>(dimension), 0.5);
  c[0] = plane - t / 2;
  return c;
}

}  // namespace

SizePacking random_packing(int dimension, int pieces, std::uint64_t seed) {
  if (pieces < 1) throw Error(ErrorCode::kDomain, "need at least one piece");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> cuts{0.0, 1.0};
  while (static_cast<int>(cuts.size()) < pieces + 1) {
    const double c = unit(rng);
    if (c > 0.0) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<PackingPiece> list;
  for (int j = 0; j < pieces; ++j) {
    list.push_back({cuts[static_cast<std::size_t>(j)], cuts[static_cast<std::size_t>(j) + 1], uniform_point(dimension, rng)});
  }
  return SizePacking::from_pieces(dimension, std::move(list));
}

SizePacking aligned_packing(int dimension, int pieces) {
  if (pieces < 1) throw Error(ErrorCode::kDomain, "need at least one piece");
  std::vector<PackingPiece> list;
  for (int j = 0; j < pieces; ++j) {
    const double a = static_cast<double>(j) / pieces;
    const double b = static_cast<double>(j + 1) / pieces;
    list.push_back({a, b, aligned_center(dimension, (a + b) / 2, 1.0)});
  }
  return SizePacking::from_pieces(dimension, std::move(list));
}

SizePacking concentric_packing(int dimension) {
  return SizePacking::from_pieces(dimension, {{0.0, 1.0, Point(static_cast<std::size_t>(dimension), 0.5)}});
}

CantorDescription basis_cantor(std::int64_t n) {
  return CantorDescription(n, symmetrize(construct_basis(n).elements, n));
}

SizePacking lifted_packing(const LiftedSet& lifted, int samples, int witness_level) {
  if (samples < 1) throw Error(ErrorCode::kDomain, "need at least one sample");
  std::vector<PackingSample> list(static_cast<std::size_t>(samples));
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < samples; ++j) {
    const double t = (j + 0.5) / samples;
    try {
      auto cube = packing_from_lift(lifted, t, witness_level);
      list[static_cast<std::size_t>(j)] = {t, std::move(cube.center)};
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return SizePacking::from_samples(lifted.dimension, std::move(list));
}

SizePacking two_cluster_packing(int dimension, int k) {
  const auto radii = separated_radii(std::ldexp(1.0, -k));
  std::vector<PackingSample> list;
  const std::size_t half = radii.size() / 2;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    list.push_back({radii[i], aligned_center(dimension, radii[i], i < half ? 1.0 : 0.9)});
  }
  return SizePacking::from_samples(dimension, std::move(list));
}

RestrictedPacking restricted_random(const CantorDescription& e, int dimension, std::uint64_t seed,
                                    int center_level) {
  std::mt19937_64 rng(seed);
  const auto anchors = enumerate_cells(e, center_level);
  std::vector<Point> centers;
  for (std::size_t i = 0; i < anchors.size(); ++i) centers.push_back(uniform_point(dimension, rng));
  return RestrictedPacking{dimension, e, center_level, std::move(centers)};
}

}  // namespace cubepack
