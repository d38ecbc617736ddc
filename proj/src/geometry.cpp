#include "cubepack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cubepack/error.hpp"
#include "cubepack/union_kernel.hpp"

namespace cubepack {
namespace {

void check_dimension(int dimension) {
  if (dimension < 1 || dimension > kMaxDimension) {
    throw Error(ErrorCode::kUnsupportedDimension,
                "dimension " + std::to_string(dimension) + " outside [1, " +
                    std::to_string(kMaxDimension) + "]");
  }
}

void check_center(const Point& center, int dimension) {
  if (static_cast<int>(center.size()) != dimension) {
    throw Error(ErrorCode::kDomain, "center has wrong number of coordinates");
  }
  for (double c : center) {
    if (!(c >= 0.0 && c <= 1.0)) throw Error(ErrorCode::kDomain, "center coordinate outside [0,1]");
  }
}

// Disjoint boxes covering the cells of the closed annulus between the cubes
// of sides inner <= outer around `center`. inner == 0 gives the solid box.
void append_annulus(const Point& center, double inner, double outer, int k,
                    std::vector<IndexBox>& out) {
  const int n = static_cast<int>(center.size());
  IndexBox shell;
  IndexBox hole;
  bool has_hole = inner > 0.0;
  for (int j = 0; j < n; ++j) {
    shell.lo[j] = cell_index(center[j] - outer / 2, k);
    shell.hi[j] = cell_index(center[j] + outer / 2, k);
    if (has_hole) {
      // Cells [i, i+1)*2^-k lying inside the open inner box.
      const double lo = std::ldexp(center[j] - inner / 2, k);
      const double hi = std::ldexp(center[j] + inner / 2, k);
      hole.lo[j] = static_cast<std::int64_t>(std::floor(lo)) + 1;
      hole.hi[j] = static_cast<std::int64_t>(std::floor(hi)) - 1;
      if (hole.lo[j] > hole.hi[j]) has_hole = false;
    }
  }
  if (!has_hole) {
    out.push_back(shell);
    return;
  }
  for (int j = 0; j < n; ++j) {
    IndexBox slab = shell;
    for (int i = 0; i < j; ++i) {
      slab.lo[i] = hole.lo[i];
      slab.hi[i] = hole.hi[i];
    }
    if (shell.lo[j] < hole.lo[j]) {
      IndexBox below = slab;
      below.hi[j] = hole.lo[j] - 1;
      out.push_back(below);
    }
    if (hole.hi[j] < shell.hi[j]) {
      IndexBox above = slab;
      above.lo[j] = hole.hi[j] + 1;
      out.push_back(above);
    }
  }
}

void append_faces(const Point& center, double side, int k, std::vector<IndexBox>& out) {
  const int n = static_cast<int>(center.size());
  IndexBox full;
  for (int j = 0; j < n; ++j) {
    full.lo[j] = cell_index(center[j] - side / 2, k);
    full.hi[j] = cell_index(center[j] + side / 2, k);
  }
  for (int j = 0; j < n; ++j) {
    IndexBox low = full;
    low.hi[j] = full.lo[j];
    out.push_back(low);
    IndexBox high = full;
    high.lo[j] = full.hi[j];
    out.push_back(high);
  }
}

// Smallest and largest size a piece instantiates at scale 2^-k, if any.
std::optional<std::pair<double, double>> piece_size_range(const PackingPiece& piece, int k) {
  const double step = std::ldexp(1.0, -k);
  const double top = std::min(piece.t_hi, 1.0);
  double smallest = 2.0;
  double largest = -1.0;
  auto consider = [&](double t) {
    smallest = std::min(smallest, t);
    largest = std::max(largest, t);
  };
  if (piece.t_lo > 0.0) consider(piece.t_lo);
  if (piece.t_hi < 1.0) consider(piece.t_hi);
  const double first = (std::floor(piece.t_lo / step) + 1.0) * step;
  if (first < top) {
    consider(first);
    consider((std::ceil(top / step) - 1.0) * step);
  }
  if (largest < 0.0) return std::nullopt;
  return std::pair{smallest, largest};
}

bool lex_less(const std::int64_t* a, const std::int64_t* b, int n) {
  return std::lexicographical_compare(a, a + n, b, b + n);
}

std::vector<std::int64_t> sorted_unique_cells(std::vector<std::int64_t> flat, int n) {
  const std::size_t count = flat.size() / n;
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lex_less(flat.data() + a * n, flat.data() + b * n, n);
  });
  std::vector<std::int64_t> result;
  result.reserve(flat.size());
  for (std::size_t idx : order) {
    const std::int64_t* c = flat.data() + idx * n;
    if (!result.empty() && std::equal(c, c + n, result.end() - n)) continue;
    result.insert(result.end(), c, c + n);
  }
  return result;
}

}  // namespace

std::int64_t cell_index(double x, int k) {
  return static_cast<std::int64_t>(std::floor(std::ldexp(x, k)));
}

AxisCubeBoundary::AxisCubeBoundary(Point center, double side)
    : center_(std::move(center)), side_(side) {
  check_dimension(static_cast<int>(center_.size()));
  check_center(center_, static_cast<int>(center_.size()));
  if (!(side_ > 0.0 && side_ < 1.0)) throw Error(ErrorCode::kDomain, "cube side outside (0,1)");
}

std::vector<IndexBox> AxisCubeBoundary::face_boxes(int k) const {
  std::vector<IndexBox> boxes;
  append_faces(center_, side_, k, boxes);
  return boxes;
}

GridCover::GridCover(int dimension, int scale_exponent)
    : dimension_(dimension), scale_exponent_(scale_exponent) {
  check_dimension(dimension);
  if (scale_exponent < 0) throw Error(ErrorCode::kDomain, "negative scale exponent");
}

GridCover::GridCover(int dimension, int scale_exponent, std::vector<std::int64_t> flat_cells)
    : GridCover(dimension, scale_exponent) {
  if (flat_cells.size() % dimension != 0) {
    throw Error(ErrorCode::kDomain, "flat cell list length is not a multiple of the dimension");
  }
  cells_ = sorted_unique_cells(std::move(flat_cells), dimension);
}

bool GridCover::contains(std::span<const std::int64_t> index) const {
  if (static_cast<int>(index.size()) != dimension_) return false;
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (lex_less(cells_.data() + mid * dimension_, index.data(), dimension_)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < size() && std::equal(index.begin(), index.end(), cells_.begin() + lo * dimension_);
}

GridCover GridCover::united(const GridCover& other) const {
  if (other.dimension_ != dimension_ || other.scale_exponent_ != scale_exponent_) {
    throw Error(ErrorCode::kDomain, "cannot unite covers of different dimension or scale");
  }
  std::vector<std::int64_t> merged = cells_;
  merged.insert(merged.end(), other.cells_.begin(), other.cells_.end());
  return GridCover(dimension_, scale_exponent_, std::move(merged));
}

bool GridCover::is_subset_of(const GridCover& other) const {
  if (other.dimension_ != dimension_ || other.scale_exponent_ != scale_exponent_) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!other.contains(cell(i))) return false;
  }
  return true;
}

SizePacking SizePacking::from_pieces(int dimension, std::vector<PackingPiece> pieces) {
  check_dimension(dimension);
  for (const auto& p : pieces) {
    if (!(p.t_lo >= 0.0 && p.t_lo < p.t_hi && p.t_hi <= 1.0)) {
      throw Error(ErrorCode::kDomain, "piece interval must satisfy 0 <= t_lo < t_hi <= 1");
    }
    check_center(p.center, dimension);
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const PackingPiece& a, const PackingPiece& b) { return a.t_lo < b.t_lo; });
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    if (pieces[i - 1].t_hi > pieces[i].t_lo) {
      throw Error(ErrorCode::kDomain, "piece intervals overlap");
    }
  }
  SizePacking packing;
  packing.dimension_ = dimension;
  packing.piecewise_ = true;
  packing.pieces_ = std::move(pieces);
  return packing;
}

SizePacking SizePacking::from_samples(int dimension, std::vector<PackingSample> samples) {
  check_dimension(dimension);
  for (const auto& s : samples) {
    if (!(s.t > 0.0 && s.t < 1.0)) throw Error(ErrorCode::kDomain, "sample size outside (0,1)");
    check_center(s.center, dimension);
  }
  std::sort(samples.begin(), samples.end(),
            [](const PackingSample& a, const PackingSample& b) { return a.t < b.t; });
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i - 1].t == samples[i].t) throw Error(ErrorCode::kDomain, "duplicate sample size");
  }
  SizePacking packing;
  packing.dimension_ = dimension;
  packing.piecewise_ = false;
  packing.samples_ = std::move(samples);
  return packing;
}

const Point& SizePacking::center(std::size_t entry) const {
  return piecewise_ ? pieces_.at(entry).center : samples_.at(entry).center;
}

void SizePacking::set_center(std::size_t entry, Point center) {
  check_center(center, dimension_);
  if (piecewise_) {
    pieces_.at(entry).center = std::move(center);
  } else {
    samples_.at(entry).center = std::move(center);
  }
}

std::optional<Point> SizePacking::center_for(double t) const {
  if (piecewise_) {
    auto it = std::lower_bound(pieces_.begin(), pieces_.end(), t,
                               [](const PackingPiece& p, double v) { return p.t_hi < v; });
    if (it != pieces_.end() && it->t_lo < t && t <= it->t_hi) return it->center;
    return std::nullopt;
  }
  if (samples_.empty()) return std::nullopt;
  auto it = std::lower_bound(samples_.begin(), samples_.end(), t,
                             [](const PackingSample& s, double v) { return s.t < v; });
  if (it == samples_.end()) return samples_.back().center;
  if (it == samples_.begin()) return it->center;
  auto prev = std::prev(it);
  return (t - prev->t <= it->t - t) ? prev->center : it->center;
}

std::vector<AxisCubeBoundary> represented_cubes(const SizePacking& packing, int k, double ratio) {
  std::vector<AxisCubeBoundary> cubes;
  if (!packing.is_piecewise()) {
    for (const auto& s : packing.samples()) cubes.emplace_back(s.center, ratio * s.t);
    return cubes;
  }
  const double step = std::ldexp(1.0, -k);
  for (const auto& piece : packing.pieces()) {
    std::vector<double> sizes;
    if (piece.t_lo > 0.0) sizes.push_back(piece.t_lo);
    if (piece.t_hi < 1.0) sizes.push_back(piece.t_hi);
    const auto first = static_cast<std::int64_t>(std::floor(piece.t_lo / step)) + 1;
    for (std::int64_t j = first;; ++j) {
      const double t = static_cast<double>(j) * step;
      if (!(t < piece.t_hi) || !(t < 1.0)) break;
      sizes.push_back(t);
    }
    for (double t : sizes) cubes.emplace_back(piece.center, ratio * t);
  }
  return cubes;
}

void append_entry_boxes(const SizePacking& packing, std::size_t entry, int k, double ratio,
                        std::vector<IndexBox>& out) {
  if (!packing.is_piecewise()) {
    const auto& s = packing.samples()[entry];
    append_faces(s.center, ratio * s.t, k, out);
    return;
  }
  const auto& piece = packing.pieces()[entry];
  if (auto range = piece_size_range(piece, k)) {
    append_annulus(piece.center, ratio * range->first, ratio * range->second, k, out);
  }
}

std::vector<IndexBox> packing_boxes(const SizePacking& packing, int k, double ratio) {
  std::vector<IndexBox> boxes;
  for (std::size_t i = 0; i < packing.size(); ++i) append_entry_boxes(packing, i, k, ratio, boxes);
  return boxes;
}

GridCover boundary_cells(const AxisCubeBoundary& cube, int k) {
  const auto boxes = cube.face_boxes(k);
  return GridCover(cube.dimension(), k, kernels::union_cells(cube.dimension(), boxes));
}

GridCover packing_cover(const SizePacking& packing, int k) {
  const auto boxes = packing_boxes(packing, k);
  return GridCover(packing.dimension(), k, kernels::union_cells(packing.dimension(), boxes));
}

std::uint64_t packing_cell_count(const SizePacking& packing, int k) {
  const auto boxes = packing_boxes(packing, k);
  return kernels::count_union(packing.dimension(), boxes);
}

double cover_area(const GridCover& cover) {
  return cover_area(cover.size(), cover.dimension(), cover.scale_exponent());
}

double cover_area(std::uint64_t cells, int dimension, int k) {
  return std::ldexp(static_cast<double>(cells), -k * dimension);
}

}  // namespace cubepack
