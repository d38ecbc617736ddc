#include "cubepack/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "cubepack/error.hpp"

namespace cubepack {

ScaleProfile::ScaleProfile(std::vector<ScaleEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].count < 1) {
      throw Error(ErrorCode::kInvalidProfile, "count at k=" + std::to_string(entries_[i].k) + " is zero");
    }
    if (i == 0) continue;
    if (entries_[i].k <= entries_[i - 1].k) {
      throw Error(ErrorCode::kInvalidProfile, "scale exponents must be strictly increasing");
    }
    if (entries_[i].count < entries_[i - 1].count) {
      throw Error(ErrorCode::kInvalidProfile, "counts must not decrease with k");
    }
  }
}

ScaleProfile build_profile(int k_min, int k_max, const std::function<std::uint64_t(int)>& count_at) {
  if (k_min < 0 || k_max < k_min) throw Error(ErrorCode::kDomain, "bad scale range");
  std::vector<ScaleEntry> entries;
  for (int k = k_min; k <= k_max; ++k) entries.push_back({k, count_at(k)});
  return ScaleProfile(std::move(entries));
}

std::uint64_t box_count(const GridCover& cover) { return cover.size(); }

DimensionEstimate estimate_dimension(const ScaleProfile& profile) {
  const auto& e = profile.entries();
  if (e.size() < 3) throw Error(ErrorCode::kInvalidProfile, "need at least 3 scales for a fit");
  const auto count = static_cast<double>(e.size());
  double mean_k = 0.0;
  double mean_y = 0.0;
  for (const auto& s : e) {
    mean_k += s.k;
    mean_y += std::log2(static_cast<double>(s.count));
  }
  mean_k /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& s : e) {
    const double dk = s.k - mean_k;
    sxx += dk * dk;
    sxy += dk * (std::log2(static_cast<double>(s.count)) - mean_y);
  }
  DimensionEstimate est;
  est.slope = sxy / sxx;
  est.intercept = mean_y - est.slope * mean_k;
  for (const auto& s : e) {
    const double fit = est.intercept + est.slope * s.k;
    est.residual = std::max(est.residual, std::abs(std::log2(static_cast<double>(s.count)) - fit));
  }
  est.k_min = e.front().k;
  est.k_max = e.back().k;
  return est;
}

namespace {

void check_window(const AssouadWindow& w) {
  if (w.k_outer < 0 || w.k_inner <= w.k_outer) {
    throw Error(ErrorCode::kDomain, "window needs 0 <= k_outer < k_inner");
  }
}

// Index of the cell of width scale^-1 containing x, tolerant of rounding at
// cell edges.
std::int64_t window_cell(double x, double scale) {
  return static_cast<std::int64_t>(std::floor(x * scale + 1e-9));
}

}  // namespace

AssouadResult assouad_profile(const CantorDescription& source, const std::vector<AssouadWindow>& windows) {
  AssouadResult result;
  const std::int64_t n = source.base();
  for (const auto& w : windows) {
    check_window(w);
    if (w.x.size() != 1) throw Error(ErrorCode::kDomain, "Cantor windows are one-dimensional");
    const double scale = std::pow(static_cast<double>(n), w.k_outer);
    if (scale > 9.0e15) throw Error(ErrorCode::kSizeLimit, "window level too deep for double precision");
    std::int64_t cylinder = std::min<std::int64_t>(window_cell(w.x[0], scale), static_cast<std::int64_t>(scale) - 1);
    bool on_set = cylinder >= 0;
    for (int level = 0; on_set && level < w.k_outer; ++level) {
      on_set = source.has_digit(cylinder % n);
      cylinder /= n;
    }
    if (!on_set) {
      ++result.skipped;
      continue;
    }
    // Sub-cylinders of the window at the inner level that meet the set.
    const int gap = w.k_inner - w.k_outer;
    const auto count = static_cast<double>(enumerate_cells(source, gap).size());
    const double exponent = std::log(count) / (gap * std::log(static_cast<double>(n)));
    result.exponent = std::max(result.exponent, exponent);
    ++result.windows_used;
  }
  return result;
}

AssouadResult assouad_profile(const std::map<int, GridCover>& pyramid,
                              const std::vector<AssouadWindow>& windows) {
  AssouadResult result;
  for (const auto& w : windows) {
    check_window(w);
    const auto inner = pyramid.find(w.k_inner);
    if (inner == pyramid.end()) {
      throw Error(ErrorCode::kPrecondition, "pyramid lacks level " + std::to_string(w.k_inner));
    }
    const GridCover& fine = inner->second;
    const int dim = fine.dimension();
    if (static_cast<int>(w.x.size()) != dim) throw Error(ErrorCode::kDomain, "window dimension mismatch");
    std::vector<std::int64_t> coarse(static_cast<std::size_t>(dim));
    const double scale = std::ldexp(1.0, w.k_outer);
    for (int a = 0; a < dim; ++a) coarse[static_cast<std::size_t>(a)] = window_cell(w.x[static_cast<std::size_t>(a)], scale);
    const auto outer = pyramid.find(w.k_outer);
    if (outer != pyramid.end() && !outer->second.contains(coarse)) {
      ++result.skipped;
      continue;
    }
    const int shift = w.k_inner - w.k_outer;
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < fine.size(); ++i) {
      const auto c = fine.cell(i);
      bool inside = true;
      for (int a = 0; a < dim && inside; ++a) inside = (c[static_cast<std::size_t>(a)] >> shift) == coarse[static_cast<std::size_t>(a)];
      count += inside ? 1 : 0;
    }
    if (count == 0) {
      ++result.skipped;
      continue;
    }
    result.exponent = std::max(result.exponent, std::log2(static_cast<double>(count)) / shift);
    ++result.windows_used;
  }
  return result;
}

std::vector<AssouadWindow> sample_cantor_windows(const CantorDescription& source, std::size_t count,
                                                 std::uint64_t seed, int max_outer, int max_gap) {
  if (max_outer < 0 || max_gap < 1) throw Error(ErrorCode::kDomain, "bad window depth limits");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> letter(0, source.alphabet().size() - 1);
  std::uniform_int_distribution<int> outer(0, max_outer);
  std::uniform_int_distribution<int> gap(1, max_gap);
  std::vector<AssouadWindow> windows;
  for (std::size_t i = 0; i < count; ++i) {
    // A point of the set: 30 random admissible digits.
    double x = 0.0;
    for (int d = 0; d < 30; ++d) {
      x = (x + static_cast<double>(source.alphabet()[letter(rng)])) / static_cast<double>(source.base());
    }
    const int k_outer = outer(rng);
    windows.push_back({{x}, k_outer, k_outer + gap(rng)});
  }
  return windows;
}

}  // namespace cubepack
