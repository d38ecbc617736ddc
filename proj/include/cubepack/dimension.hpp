#pragma once

// Box counting, least-squares dimension fits and Assouad window estimates.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "cubepack/cantor.hpp"
#include "cubepack/geometry.hpp"

namespace cubepack {

struct ScaleEntry {
  int k;
  std::uint64_t count;

  friend bool operator==(const ScaleEntry&, const ScaleEntry&) = default;
};

/// Pairs (k, N_k) with strictly increasing k, N_k >= 1 and N_k non-decreasing.
class ScaleProfile {
 public:
  explicit ScaleProfile(std::vector<ScaleEntry> entries);

  const std::vector<ScaleEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const ScaleProfile&, const ScaleProfile&) = default;

 private:
  std::vector<ScaleEntry> entries_;
};

/// Counts N_k for k = k_min..k_max, one call per scale in increasing order.
ScaleProfile build_profile(int k_min, int k_max, const std::function<std::uint64_t(int)>& count_at);

struct DimensionEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // max |log2 N_k - fit|
  int k_min = 0;
  int k_max = 0;
};

std::uint64_t box_count(const GridCover& cover);

/// Ordinary least squares of log2 N_k against k. Needs at least 3 entries.
DimensionEstimate estimate_dimension(const ScaleProfile& profile);

/// Window centered at x with outer scale R and inner scale r.
///
/// For a GridCover pyramid R = 2^-k_outer and r = 2^-k_inner, and the window
/// is the dyadic cell of side R containing x. For a Cantor source the scales
/// are base-n, R = n^-k_outer, and the window is the level-k_outer cylinder
/// containing x.
struct AssouadWindow {
  Point x;
  int k_outer;
  int k_inner;
};

struct AssouadResult {
  double exponent = 0.0;  // max over used windows, 0 if none
  std::size_t windows_used = 0;
  std::size_t skipped = 0;  // windows whose outer cell misses the set
};

AssouadResult assouad_profile(const CantorDescription& source, const std::vector<AssouadWindow>& windows);
/// `pyramid` maps k to the cover at scale 2^-k; every k used by a window must
/// be present.
AssouadResult assouad_profile(const std::map<int, GridCover>& pyramid,
                              const std::vector<AssouadWindow>& windows);

/// Seeded windows centered at points of the Cantor set, k_outer in
/// [0, max_outer] and k_inner - k_outer in [1, max_gap].
std::vector<AssouadWindow> sample_cantor_windows(const CantorDescription& source, std::size_t count,
                                                 std::uint64_t seed, int max_outer = 4, int max_gap = 4);

}  // namespace cubepack
