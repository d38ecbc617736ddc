#include "cubepack/union_kernel.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <numeric>

#include "cubepack/error.hpp"

namespace cubepack::kernels {
namespace {

constexpr std::int64_t kTileWords = std::int64_t{1} << 19;

void set_bits(std::uint64_t* row, std::int64_t a, std::int64_t b) {
  const std::int64_t wa = a >> 6;
  const std::int64_t wb = b >> 6;
  const std::uint64_t head = ~std::uint64_t{0} << (a & 63);
  const std::uint64_t tail = ~std::uint64_t{0} >> (63 - (b & 63));
  if (wa == wb) {
    row[wa] |= head & tail;
    return;
  }
  row[wa] |= head;
  for (std::int64_t w = wa + 1; w < wb; ++w) row[w] = ~std::uint64_t{0};
  row[wb] |= tail;
}

std::uint64_t count_intervals(std::span<const IndexBox> boxes) {
  std::vector<std::pair<std::int64_t, std::int64_t>> spans;
  spans.reserve(boxes.size());
  for (const auto& b : boxes) spans.emplace_back(b.lo[0], b.hi[0]);
  std::sort(spans.begin(), spans.end());
  std::uint64_t total = 0;
  std::int64_t cur_lo = 0;
  std::int64_t cur_hi = -1;
  bool open = false;
  for (const auto& [lo, hi] : spans) {
    if (open && lo <= cur_hi + 1) {
      cur_hi = std::max(cur_hi, hi);
      continue;
    }
    if (open) total += static_cast<std::uint64_t>(cur_hi - cur_lo + 1);
    cur_lo = lo;
    cur_hi = hi;
    open = true;
  }
  if (open) total += static_cast<std::uint64_t>(cur_hi - cur_lo + 1);
  return total;
}

std::vector<std::int64_t> interval_cells(std::span<const IndexBox> boxes) {
  std::vector<std::pair<std::int64_t, std::int64_t>> spans;
  for (const auto& b : boxes) spans.emplace_back(b.lo[0], b.hi[0]);
  std::sort(spans.begin(), spans.end());
  std::vector<std::int64_t> cells;
  std::int64_t next = std::numeric_limits<std::int64_t>::min();
  for (const auto& [lo, hi] : spans) {
    for (std::int64_t i = std::max(lo, next); i <= hi; ++i) cells.push_back(i);
    next = std::max(next, hi + 1);
  }
  return cells;
}

// Union area of half-open rectangles by a sweep along axis 0, with a
// segment tree over the compressed axis-1 coordinates.
class CoverTree {
 public:
  explicit CoverTree(std::vector<std::int64_t> ys)
      : ys_(std::move(ys)), count_(4 * ys_.size(), 0), length_(4 * ys_.size(), 0) {}

  void update(std::size_t a, std::size_t b, int delta) { update(1, 0, ys_.size() - 1, a, b, delta); }
  std::int64_t covered() const { return length_[1]; }

 private:
  void update(std::size_t node, std::size_t l, std::size_t r, std::size_t a, std::size_t b, int delta) {
    if (b <= l || r <= a) return;
    if (a <= l && r <= b) {
      count_[node] += delta;
    } else {
      const std::size_t mid = (l + r) / 2;
      update(2 * node, l, mid, a, b, delta);
      update(2 * node + 1, mid, r, a, b, delta);
    }
    if (count_[node] > 0) {
      length_[node] = ys_[r] - ys_[l];
    } else if (r - l == 1) {
      length_[node] = 0;
    } else {
      length_[node] = length_[2 * node] + length_[2 * node + 1];
    }
  }

  std::vector<std::int64_t> ys_;
  std::vector<int> count_;
  std::vector<std::int64_t> length_;
};

std::uint64_t sweep_count(std::span<const IndexBox> boxes, std::int64_t x0, std::int64_t x1) {
  struct Event {
    std::int64_t x;
    int delta;
    std::int64_t y0;
    std::int64_t y1;
  };
  std::vector<Event> events;
  std::vector<std::int64_t> ys;
  for (const auto& b : boxes) {
    const std::int64_t lo = std::max(b.lo[0], x0);
    const std::int64_t hi = std::min(b.hi[0], x1);
    if (lo > hi) continue;
    events.push_back({lo, 1, b.lo[1], b.hi[1] + 1});
    events.push_back({hi + 1, -1, b.lo[1], b.hi[1] + 1});
    ys.push_back(b.lo[1]);
    ys.push_back(b.hi[1] + 1);
  }
  if (events.empty()) return 0;
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.x < b.x; });
  auto rank = [&](std::int64_t y) {
    return static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin());
  };
  CoverTree tree(ys);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    tree.update(rank(events[i].y0), rank(events[i].y1), events[i].delta);
    if (i + 1 < events.size()) {
      total += static_cast<std::uint64_t>(tree.covered()) *
               static_cast<std::uint64_t>(events[i + 1].x - events[i].x);
    }
  }
  return total;
}

// Splits axis 0 into strips swept independently.
std::uint64_t count_planar(std::span<const IndexBox> boxes) {
  std::int64_t x_min = boxes.front().lo[0];
  std::int64_t x_max = boxes.front().hi[0];
  for (const auto& b : boxes) {
    x_min = std::min(x_min, b.lo[0]);
    x_max = std::max(x_max, b.hi[0]);
  }
  const std::int64_t strips = std::min<std::int64_t>(4 * omp_get_max_threads(), x_max - x_min + 1);
  const std::int64_t width = (x_max - x_min + strips) / strips;
  std::uint64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(dynamic, 1)
  for (std::int64_t s = 0; s < strips; ++s) {
    const std::int64_t x0 = x_min + s * width;
    total += sweep_count(boxes, x0, std::min(x0 + width - 1, x_max));
  }
  return total;
}

// Tiled rasterization shared by the counting and the enumerating kernels.
class TiledRaster {
 public:
  TiledRaster(int dimension, std::span<const IndexBox> boxes)
      : n_(dimension), boxes_(boxes.begin(), boxes.end()) {
    std::sort(boxes_.begin(), boxes_.end(),
              [](const IndexBox& a, const IndexBox& b) { return a.lo[0] < b.lo[0]; });
    origin_ = boxes_.front().lo;
    std::array<std::int64_t, kMaxDimension> top = boxes_.front().hi;
    for (const auto& b : boxes_) {
      for (int j = 0; j < n_; ++j) {
        origin_[j] = std::min(origin_[j], b.lo[j]);
        top[j] = std::max(top[j], b.hi[j]);
      }
    }
    for (int j = 0; j < n_; ++j) extent_[j] = top[j] - origin_[j] + 1;
    words_per_row_ = (extent_[n_ - 1] + 63) / 64;
    rows_per_slice_ = 1;
    for (int j = 1; j < n_ - 1; ++j) rows_per_slice_ *= extent_[j];
    const std::int64_t slice_words = rows_per_slice_ * words_per_row_;
    tile_ = std::clamp<std::int64_t>(kTileWords / std::max<std::int64_t>(slice_words, 1), 1,
                                     extent_[0]);
    tiles_ = (extent_[0] + tile_ - 1) / tile_;
  }

  std::int64_t tiles() const { return tiles_; }

  // Rasterizes tile `t` into `buffer` and returns the first axis-0 offset.
  std::int64_t fill(std::int64_t t, std::vector<std::uint64_t>& buffer) const {
    const std::int64_t t0 = t * tile_;
    const std::int64_t t1 = std::min(t0 + tile_, extent_[0]) - 1;
    const std::int64_t slice_words = rows_per_slice_ * words_per_row_;
    buffer.assign(static_cast<std::size_t>((t1 - t0 + 1) * slice_words), 0);
    for (const auto& b : boxes_) {
      const std::int64_t b0 = b.lo[0] - origin_[0];
      if (b0 > t1) break;
      const std::int64_t e0 = b.hi[0] - origin_[0];
      if (e0 < t0) continue;
      const std::int64_t a = b.lo[n_ - 1] - origin_[n_ - 1];
      const std::int64_t z = b.hi[n_ - 1] - origin_[n_ - 1];
      for (std::int64_t i0 = std::max(b0, t0); i0 <= std::min(e0, t1); ++i0) {
        std::uint64_t* slice = buffer.data() + (i0 - t0) * slice_words;
        for_each_row(b, [&](std::int64_t row) { set_bits(slice + row * words_per_row_, a, z); });
      }
    }
    return t0;
  }

  std::uint64_t count_tile(std::int64_t t, std::vector<std::uint64_t>& buffer) const {
    fill(t, buffer);
    std::uint64_t total = 0;
    for (std::uint64_t w : buffer) total += static_cast<std::uint64_t>(std::popcount(w));
    return total;
  }

  void cells_of_tile(std::int64_t t, std::vector<std::uint64_t>& buffer,
                     std::vector<std::int64_t>& out) const {
    const std::int64_t t0 = fill(t, buffer);
    const std::int64_t total_rows = static_cast<std::int64_t>(buffer.size()) / words_per_row_;
    std::array<std::int64_t, kMaxDimension> cell{};
    for (std::int64_t r = 0; r < total_rows; ++r) {
      const std::int64_t i0 = t0 + r / rows_per_slice_;
      std::int64_t rest = r % rows_per_slice_;
      for (int j = n_ - 2; j >= 1; --j) {
        cell[j] = origin_[j] + rest % extent_[j];
        rest /= extent_[j];
      }
      cell[0] = origin_[0] + i0;
      const std::uint64_t* row = buffer.data() + r * words_per_row_;
      for (std::int64_t w = 0; w < words_per_row_; ++w) {
        std::uint64_t bits = row[w];
        while (bits != 0) {
          const int b = std::countr_zero(bits);
          bits &= bits - 1;
          cell[n_ - 1] = origin_[n_ - 1] + w * 64 + b;
          out.insert(out.end(), cell.begin(), cell.begin() + n_);
        }
      }
    }
  }

 private:
  template <typename F>
  void for_each_row(const IndexBox& b, F&& visit) const {
    if (n_ == 2) {
      visit(0);
      return;
    }
    std::array<std::int64_t, kMaxDimension> idx{};
    for (int j = 1; j < n_ - 1; ++j) idx[j] = b.lo[j];
    while (true) {
      std::int64_t row = 0;
      for (int j = 1; j < n_ - 1; ++j) row = row * extent_[j] + (idx[j] - origin_[j]);
      visit(row);
      int j = n_ - 2;
      while (j >= 1) {
        if (++idx[j] <= b.hi[j]) break;
        idx[j] = b.lo[j];
        --j;
      }
      if (j < 1) return;
    }
  }

  int n_;
  std::vector<IndexBox> boxes_;
  std::array<std::int64_t, kMaxDimension> origin_{};
  std::array<std::int64_t, kMaxDimension> extent_{};
  std::int64_t words_per_row_ = 0;
  std::int64_t rows_per_slice_ = 1;
  std::int64_t tile_ = 1;
  std::int64_t tiles_ = 0;
};

void check(int dimension) {
  if (dimension < 1 || dimension > kMaxDimension) {
    throw Error(ErrorCode::kUnsupportedDimension, "box dimension out of range");
  }
}

}  // namespace

std::vector<IndexBox> coalesce(int dimension, std::span<const IndexBox> boxes) {
  check(dimension);
  std::vector<IndexBox> current(boxes.begin(), boxes.end());
  for (int axis = 0; axis < dimension; ++axis) {
    auto key_less = [&](const IndexBox& a, const IndexBox& b) {
      for (int j = 0; j < dimension; ++j) {
        if (j == axis) continue;
        if (a.lo[j] != b.lo[j]) return a.lo[j] < b.lo[j];
        if (a.hi[j] != b.hi[j]) return a.hi[j] < b.hi[j];
      }
      return a.lo[axis] < b.lo[axis];
    };
    auto same_key = [&](const IndexBox& a, const IndexBox& b) {
      for (int j = 0; j < dimension; ++j) {
        if (j != axis && (a.lo[j] != b.lo[j] || a.hi[j] != b.hi[j])) return false;
      }
      return true;
    };
    std::sort(current.begin(), current.end(), key_less);
    std::vector<IndexBox> merged;
    merged.reserve(current.size());
    for (const auto& b : current) {
      if (!merged.empty() && same_key(merged.back(), b) && b.lo[axis] <= merged.back().hi[axis] + 1) {
        merged.back().hi[axis] = std::max(merged.back().hi[axis], b.hi[axis]);
      } else {
        merged.push_back(b);
      }
    }
    current = std::move(merged);
  }
  return current;
}

std::uint64_t count_union(int dimension, std::span<const IndexBox> boxes) {
  check(dimension);
  if (boxes.empty()) return 0;
  if (dimension == 1) return count_intervals(boxes);
  if (dimension == 2) return count_planar(boxes);
  const auto merged = coalesce(dimension, boxes);
  const TiledRaster raster(dimension, merged);
  std::uint64_t total = 0;
#pragma omp parallel reduction(+ : total)
  {
    std::vector<std::uint64_t> buffer;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t t = 0; t < raster.tiles(); ++t) total += raster.count_tile(t, buffer);
  }
  return total;
}

std::vector<std::int64_t> union_cells(int dimension, std::span<const IndexBox> boxes) {
  check(dimension);
  if (boxes.empty()) return {};
  if (dimension == 1) return interval_cells(boxes);
  const auto merged = coalesce(dimension, boxes);
  const TiledRaster raster(dimension, merged);
  std::vector<std::vector<std::int64_t>> per_tile(static_cast<std::size_t>(raster.tiles()));
#pragma omp parallel
  {
    std::vector<std::uint64_t> buffer;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t t = 0; t < raster.tiles(); ++t) {
      raster.cells_of_tile(t, buffer, per_tile[static_cast<std::size_t>(t)]);
    }
  }
  std::vector<std::int64_t> cells;
  for (auto& part : per_tile) cells.insert(cells.end(), part.begin(), part.end());
  return cells;
}

int max_depth(int dimension, std::span<const IndexBox> boxes) {
  check(dimension);
  if (boxes.empty()) return 0;
  // A deepest cell can always be taken at a corner made of lower bounds.
  std::array<std::vector<std::int64_t>, kMaxDimension> candidates;
  for (int j = 0; j < dimension; ++j) {
    for (const auto& b : boxes) candidates[j].push_back(b.lo[j]);
    std::sort(candidates[j].begin(), candidates[j].end());
    candidates[j].erase(std::unique(candidates[j].begin(), candidates[j].end()), candidates[j].end());
  }
  std::int64_t combos = 1;
  for (int j = 0; j < dimension; ++j) combos *= static_cast<std::int64_t>(candidates[j].size());
  int best = 0;
#pragma omp parallel for reduction(max : best) schedule(static)
  for (std::int64_t c = 0; c < combos; ++c) {
    std::array<std::int64_t, kMaxDimension> p{};
    std::int64_t rest = c;
    for (int j = dimension - 1; j >= 0; --j) {
      const auto m = static_cast<std::int64_t>(candidates[j].size());
      p[j] = candidates[j][static_cast<std::size_t>(rest % m)];
      rest /= m;
    }
    int depth = 0;
    for (const auto& b : boxes) {
      bool inside = true;
      for (int j = 0; j < dimension && inside; ++j) inside = b.lo[j] <= p[j] && p[j] <= b.hi[j];
      depth += inside ? 1 : 0;
    }
    best = std::max(best, depth);
  }
  return best;
}

namespace reference {
namespace {

template <typename F>
void for_each_cell(int n, const IndexBox& b, F&& visit) {
  std::array<std::int64_t, kMaxDimension> idx = b.lo;
  for (int j = 0; j < n; ++j) {
    if (b.hi[j] < b.lo[j]) return;
  }
  while (true) {
    visit(idx);
    int j = n - 1;
    while (j >= 0) {
      if (++idx[j] <= b.hi[j]) break;
      idx[j] = b.lo[j];
      --j;
    }
    if (j < 0) return;
  }
}

}  // namespace

std::vector<std::int64_t> union_cells(int dimension, std::span<const IndexBox> boxes) {
  check(dimension);
  std::vector<std::array<std::int64_t, kMaxDimension>> all;
  for (const auto& b : boxes) {
    for_each_cell(dimension, b, [&](const auto& idx) { all.push_back(idx); });
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<std::int64_t> flat;
  flat.reserve(all.size() * dimension);
  for (const auto& c : all) flat.insert(flat.end(), c.begin(), c.begin() + dimension);
  return flat;
}

std::uint64_t count_union(int dimension, std::span<const IndexBox> boxes) {
  return union_cells(dimension, boxes).size() / static_cast<std::size_t>(dimension);
}

int max_depth(int dimension, std::span<const IndexBox> boxes) {
  check(dimension);
  std::map<std::array<std::int64_t, kMaxDimension>, int> depth;
  int best = 0;
  for (const auto& b : boxes) {
    for_each_cell(dimension, b, [&](const auto& idx) { best = std::max(best, ++depth[idx]); });
  }
  return best;
}

}  // namespace reference

}  // namespace cubepack::kernels
