#pragma once

// Numerical audits of the packing lower bounds: the overlap dichotomy at one
// scale, shrunk families and their strip slices, and packings restricted to a
// Cantor parameter set.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cubepack/cantor.hpp"
#include "cubepack/dimension.hpp"
#include "cubepack/geometry.hpp"

namespace cubepack {

/// r_i = 1/2 + i * 100 delta for i = 0, 1, ... while r_i < 1. Needs delta <= 1/200.
std::vector<double> separated_radii(double delta);

/// One of the 2n faces of a cube: coordinate `axis` at its high (or low) end.
struct FaceSelector {
  int axis = 0;
  bool high = true;
};

/// Largest number of delta-fattened selected faces, one per separated radius,
/// sharing a cell of the grid at scale delta / 4. Scale delta = 2^-k.
int overlap_max(const SizePacking& packing, int k, FaceSelector face = {});

struct OverlapAudit {
  int k = 0;
  double delta = 0.0;
  std::vector<double> radii;
  int M = 0;
  double bound_overlap = 0.0;    // 0.25 M delta
  double bound_antichain = 0.0;  // 1 / (400 M)
  double bound_sqrt = 0.0;       // 0.01 sqrt(delta)
  double measured_area = 0.0;    // cover_area of the packing at scale delta
  bool pass = false;
};

/// Overlap audit with the rightmost face (axis 0, high).
OverlapAudit audit_lower_bound(const SizePacking& packing, int k);

/// Cover of the family with every side multiplied by r (centers fixed).
GridCover shrink_cover(const SizePacking& packing, double r, int k);
std::uint64_t shrink_count(const SizePacking& packing, double r, int k);

enum class MarginRule { kQuarter, kLogK };

/// Sizes t of one packing entry whose margin window crosses a strip: the
/// interval (lo, hi], or the single size lo == hi of a sample.
struct StripMember {
  std::size_t entry;
  double lo;
  double hi;
};

/// Strip i is [i/strips, (i+1)/strips]. Size t belongs to class i when the
/// strip lies inside (c_2 - m(t), c_2 + m(t)), with c_2 the second center
/// coordinate and m(t) = t/4 or t/ln(strips).
struct StripClasses {
  int strips = 100;
  MarginRule margin = MarginRule::kQuarter;
  std::vector<std::vector<StripMember>> classes;

  /// Total length of the sizes in class i (samples count zero).
  double measure(int i) const;
  /// Index of the class of largest measure, ties to the smaller index; for a
  /// sampled packing the class with most members.
  int largest() const;
};

StripClasses strip_classes(const SizePacking& packing, int strips, MarginRule margin);

struct SliceEstimate {
  double r;
  DimensionEstimate estimate;
};

/// For each r, the slice F_r = {r t + c_1(t) : t in C_i} rasterized exactly on
/// the line at scales k_min..k_max and fitted. Throws kPrecondition for an
/// empty class.
std::vector<SliceEstimate> dual_slice_dim(const SizePacking& packing, const StripClasses& classes, int i,
                                          std::span<const double> r_values, int k_min = 14, int k_max = 20);

/// Sizes restricted to a Cantor set E; sizes in the same level-`center_level`
/// cylinder of E share a center.
struct RestrictedPacking {
  int dimension = 2;
  CantorDescription parameter_set;
  int center_level = 4;
  std::vector<Point> centers;  // one per level-center_level cylinder, in order

  double s() const { return parameter_set.theoretical_dim(); }
};

/// Sampled packing for scale 2^-k: both hull endpoints of every cylinder of E
/// at level max(center_level, ceil(k ln 2 / ln n)), keeping sizes in (0,1).
SizePacking restricted_samples(const RestrictedPacking& rp, int k);

struct RestrictedAudit {
  ScaleProfile profile;
  DimensionEstimate estimate;
  double bound = 0.0;  // n - 1 + s/2
  double floor = 0.0;  // bound - 0.1
  bool pass = false;
};

RestrictedAudit restricted_audit(const RestrictedPacking& rp, int k_min = 8, int k_max = 14);

/// Digit-split Cantor parameters for the Assouad example: base
/// n = 4^ceil(1/sigma) (capped at 2^40) and the symmetrized basis alphabet.
struct F3Parameters {
  double sigma = 0.0;
  std::int64_t base = 0;
  std::size_t basis_size = 0;
  std::size_t alphabet_size = 0;
  double formula_value = 0.0;  // log|C| / log n
  double bound = 0.0;          // 1/2 + log 4 / log n
  /// Level-j checks run only for j <= 2: cell count |C|^j and difference cover.
  std::vector<bool> verified_levels;
};

F3Parameters f3_parameters(double sigma, int verify_levels = 2);

}  // namespace cubepack
