#pragma once

// Axis-aligned cube boundaries, size packings and their rasterization onto
// dyadic grids.
//
// All counting is done on the half-open dyadic grid of width 2^-k: cell i
// along an axis is [i*2^-k, (i+1)*2^-k). A point on a grid line belongs to
// exactly one cell. Counting against this fixed grid differs from the minimal
// covering number by arbitrary side-2^-k cubes by at most a factor 2^n, which
// leaves every dimension exponent unchanged.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cubepack {

inline constexpr int kMaxDimension = 4;

using Point = std::vector<double>;

/// Closed integer box in grid-index space; `hi` is inclusive.
struct IndexBox {
  std::array<std::int64_t, kMaxDimension> lo{};
  std::array<std::int64_t, kMaxDimension> hi{};
};

/// Index of the half-open dyadic cell at scale 2^-k containing x.
std::int64_t cell_index(double x, int k);

/// {y : |y - center|_inf = side / 2}
class AxisCubeBoundary {
 public:
  AxisCubeBoundary(Point center, double side);

  int dimension() const { return static_cast<int>(center_.size()); }
  const Point& center() const { return center_; }
  double side() const { return side_; }

  /// The 2n faces as index boxes at scale 2^-k. Adjacent faces share cells.
  std::vector<IndexBox> face_boxes(int k) const;

 private:
  Point center_;
  double side_;
};

/// Sorted, deduplicated set of occupied cells at scale 2^-k.
class GridCover {
 public:
  GridCover(int dimension, int scale_exponent);
  /// `flat_cells` holds dimension() coordinates per cell, in any order.
  GridCover(int dimension, int scale_exponent, std::vector<std::int64_t> flat_cells);

  int dimension() const { return dimension_; }
  int scale_exponent() const { return scale_exponent_; }
  std::size_t size() const { return dimension_ == 0 ? 0 : cells_.size() / dimension_; }
  bool empty() const { return cells_.empty(); }

  std::span<const std::int64_t> cell(std::size_t i) const {
    return {cells_.data() + i * dimension_, static_cast<std::size_t>(dimension_)};
  }
  bool contains(std::span<const std::int64_t> index) const;
  const std::vector<std::int64_t>& flat() const { return cells_; }

  GridCover united(const GridCover& other) const;
  bool is_subset_of(const GridCover& other) const;

  friend bool operator==(const GridCover&, const GridCover&) = default;

 private:
  int dimension_;
  int scale_exponent_;
  std::vector<std::int64_t> cells_;
};

struct PackingPiece {
  double t_lo;
  double t_hi;
  Point center;
};

struct PackingSample {
  double t;
  Point center;
};

/// A size cube packing t -> center, either piecewise constant on disjoint
/// intervals (t_lo, t_hi] or given by finitely many samples.
///
/// Piece intervals may touch 0 and 1, but sizes outside (0,1) are never
/// instantiated.
class SizePacking {
 public:
  static SizePacking from_pieces(int dimension, std::vector<PackingPiece> pieces);
  static SizePacking from_samples(int dimension, std::vector<PackingSample> samples);

  int dimension() const { return dimension_; }
  bool is_piecewise() const { return piecewise_; }
  const std::vector<PackingPiece>& pieces() const { return pieces_; }
  const std::vector<PackingSample>& samples() const { return samples_; }

  /// Number of pieces or samples.
  std::size_t size() const { return piecewise_ ? pieces_.size() : samples_.size(); }
  const Point& center(std::size_t entry) const;
  void set_center(std::size_t entry, Point center);

  /// Center used for size t: the piece containing t, or the nearest sample.
  std::optional<Point> center_for(double t) const;

 private:
  SizePacking() = default;

  int dimension_ = 0;
  bool piecewise_ = true;
  std::vector<PackingPiece> pieces_;
  std::vector<PackingSample> samples_;
};

/// The cubes a packing represents at scale 2^-k: every sample, or for each
/// piece both endpoint sizes plus the sizes j*2^-k strictly inside it.
std::vector<AxisCubeBoundary> represented_cubes(const SizePacking& packing, int k,
                                                double ratio = 1.0);

/// Index boxes whose union is the cover of packing entry `entry` with all
/// sides multiplied by `ratio`. A piece becomes the closed annulus between
/// its endpoint cubes, which has the same cells as the sampled union.
void append_entry_boxes(const SizePacking& packing, std::size_t entry, int k, double ratio,
                        std::vector<IndexBox>& out);
std::vector<IndexBox> packing_boxes(const SizePacking& packing, int k, double ratio = 1.0);

GridCover boundary_cells(const AxisCubeBoundary& cube, int k);
GridCover packing_cover(const SizePacking& packing, int k);
/// |packing_cover(packing, k)| without materializing the cells.
std::uint64_t packing_cell_count(const SizePacking& packing, int k);

double cover_area(const GridCover& cover);
double cover_area(std::uint64_t cells, int dimension, int k);

}  // namespace cubepack
