#include "cubepack/audits.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "cubepack/additive_basis.hpp"
#include "cubepack/error.hpp"
#include "cubepack/union_kernel.hpp"

namespace cubepack {

std::vector<double> separated_radii(double delta) {
  if (!(delta > 0.0 && delta <= 1.0 / 200.0)) throw Error(ErrorCode::kDomain, "separated radii need delta <= 1/200");
  std::vector<double> radii;
  for (int i = 0;; ++i) {
    const double r = 0.5 + i * 100.0 * delta;
    if (!(r < 1.0)) break;
    radii.push_back(r);
  }
  return radii;
}

int overlap_max(const SizePacking& packing, int k, FaceSelector face) {
  const int n = packing.dimension();
  if (face.axis < 0 || face.axis >= n) throw Error(ErrorCode::kDomain, "face axis out of range");
  const double delta = std::ldexp(1.0, -k);
  std::vector<IndexBox> boxes;
  for (double r : separated_radii(delta)) {
    const auto center = packing.center_for(r);
    if (!center) throw Error(ErrorCode::kPrecondition, "packing has no cube of side " + std::to_string(r));
    IndexBox box;
    for (int j = 0; j < n; ++j) {
      const double c = (*center)[static_cast<std::size_t>(j)];
      double lo = c - r / 2 - delta;
      double hi = c + r / 2 + delta;
      if (j == face.axis) {
        const double plane = face.high ? c + r / 2 : c - r / 2;
        lo = plane - delta;
        hi = plane + delta;
      }
      box.lo[j] = cell_index(lo, k + 2);
      box.hi[j] = cell_index(hi, k + 2);
    }
    boxes.push_back(box);
  }
  return kernels::max_depth(n, boxes);
}

OverlapAudit audit_lower_bound(const SizePacking& packing, int k) {
  OverlapAudit audit;
  audit.k = k;
  audit.delta = std::ldexp(1.0, -k);
  audit.radii = separated_radii(audit.delta);
  audit.M = overlap_max(packing, k);
  audit.bound_overlap = 0.25 * audit.M * audit.delta;
  audit.bound_antichain = 1.0 / (400.0 * audit.M);
  audit.bound_sqrt = 0.01 * std::sqrt(audit.delta);
  audit.measured_area = cover_area(packing_cell_count(packing, k), packing.dimension(), k);
  audit.pass = audit.measured_area >= std::max(audit.bound_overlap, audit.bound_antichain) &&
               audit.measured_area >= audit.bound_sqrt;
  return audit;
}

namespace {

void check_ratio(double r) {
  if (!(r > 0.0 && r <= 1.0)) throw Error(ErrorCode::kDomain, "shrink ratio must lie in (0,1]");
}

}  // namespace

GridCover shrink_cover(const SizePacking& packing, double r, int k) {
  check_ratio(r);
  const auto boxes = packing_boxes(packing, k, r);
  return GridCover(packing.dimension(), k, kernels::union_cells(packing.dimension(), boxes));
}

std::uint64_t shrink_count(const SizePacking& packing, double r, int k) {
  check_ratio(r);
  return kernels::count_union(packing.dimension(), packing_boxes(packing, k, r));
}

double StripClasses::measure(int i) const {
  double total = 0.0;
  for (const auto& m : classes.at(static_cast<std::size_t>(i))) total += m.hi - m.lo;
  return total;
}

int StripClasses::largest() const {
  int best = 0;
  double best_measure = -1.0;
  std::size_t best_members = 0;
  for (int i = 0; i < static_cast<int>(classes.size()); ++i) {
    const double m = measure(i);
    const std::size_t members = classes[static_cast<std::size_t>(i)].size();
    if (m > best_measure || (m == best_measure && members > best_members)) {
      best = i;
      best_measure = m;
      best_members = members;
    }
  }
  return best;
}

StripClasses strip_classes(const SizePacking& packing, int strips, MarginRule margin) {
  if (strips < 2) throw Error(ErrorCode::kDomain, "need at least 2 strips");
  if (packing.dimension() < 2) throw Error(ErrorCode::kDomain, "strips need a second coordinate");
  StripClasses result;
  result.strips = strips;
  result.margin = margin;
  result.classes.resize(static_cast<std::size_t>(strips));
  // m(t) = alpha t, so the condition is t > max(c - i/S, (i+1)/S - c) / alpha.
  const double alpha = margin == MarginRule::kQuarter ? 0.25 : 1.0 / std::log(static_cast<double>(strips));
  for (int i = 0; i < strips; ++i) {
    const double lo_edge = static_cast<double>(i) / strips;
    const double hi_edge = static_cast<double>(i + 1) / strips;
    auto& members = result.classes[static_cast<std::size_t>(i)];
    for (std::size_t e = 0; e < packing.size(); ++e) {
      const double c = packing.center(e)[1];
      const double threshold = std::max(c - lo_edge, hi_edge - c) / alpha;
      if (packing.is_piecewise()) {
        const auto& piece = packing.pieces()[e];
        const double lo = std::max(piece.t_lo, threshold);
        if (lo < piece.t_hi) members.push_back({e, lo, piece.t_hi});
      } else {
        const double t = packing.samples()[e].t;
        if (t > threshold) members.push_back({e, t, t});
      }
    }
  }
  return result;
}

std::vector<SliceEstimate> dual_slice_dim(const SizePacking& packing, const StripClasses& classes, int i,
                                          std::span<const double> r_values, int k_min, int k_max) {
  if (i < 0 || i >= static_cast<int>(classes.classes.size())) throw Error(ErrorCode::kDomain, "strip index out of range");
  const auto& members = classes.classes[static_cast<std::size_t>(i)];
  if (members.empty()) throw Error(ErrorCode::kPrecondition, "strip class " + std::to_string(i) + " is empty");
  if (k_min < 0 || k_max > 40 || k_max - k_min < 2) throw Error(ErrorCode::kDomain, "bad slice scale window");
  auto slice = [&](double r) {
    std::vector<ScaleEntry> entries;
    std::vector<std::pair<std::int64_t, std::int64_t>> runs;
    for (int k = k_min; k <= k_max; ++k) {
      runs.clear();
      // The piece (lo, hi] maps to the interval (r lo + c_1, r hi + c_1].
      for (const auto& m : members) {
        const double c = packing.center(m.entry)[0];
        runs.emplace_back(cell_index(r * m.lo + c, k), cell_index(r * m.hi + c, k));
      }
      std::sort(runs.begin(), runs.end());
      std::uint64_t count = 0;
      std::int64_t next = std::numeric_limits<std::int64_t>::min();
      for (const auto& [a, b] : runs) {
        const std::int64_t from = std::max(a, next);
        if (b >= from) count += static_cast<std::uint64_t>(b - from + 1);
        next = std::max(next, b + 1);
      }
      entries.push_back({k, count});
    }
    return SliceEstimate{r, estimate_dimension(ScaleProfile(std::move(entries)))};
  };
  std::vector<SliceEstimate> out(r_values.size());
  std::vector<std::exception_ptr> failures(r_values.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t j = 0; j < r_values.size(); ++j) {
    try {
      out[j] = slice(r_values[j]);
    } catch (...) {
      failures[j] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return out;
}

SizePacking restricted_samples(const RestrictedPacking& rp, int k) {
  const auto& e = rp.parameter_set;
  const std::int64_t n = e.base();
  const auto anchors = enumerate_cells(e, rp.center_level);
  if (rp.centers.size() != anchors.size()) {
    throw Error(ErrorCode::kPrecondition, "need one center per level-" + std::to_string(rp.center_level) + " cylinder");
  }
  const int level = std::max(rp.center_level, static_cast<int>(std::ceil(k * std::log(2.0) / std::log(static_cast<double>(n)) - 1e-12)));
  const auto cylinders = enumerate_cells(e, level);
  std::uint64_t group = 1;
  for (int j = rp.center_level; j < level; ++j) group *= static_cast<std::uint64_t>(n);
  const double width = std::pow(static_cast<double>(n), -level);
  const double lo_offset = static_cast<double>(e.alphabet().front()) / static_cast<double>(n - 1);
  const double hi_offset = static_cast<double>(e.alphabet().back()) / static_cast<double>(n - 1);
  std::vector<PackingSample> samples;
  for (std::uint64_t c : cylinders) {
    const auto anchor = std::lower_bound(anchors.begin(), anchors.end(), c / group) - anchors.begin();
    const Point& center = rp.centers[static_cast<std::size_t>(anchor)];
    for (double t : {(static_cast<double>(c) + lo_offset) * width, (static_cast<double>(c) + hi_offset) * width}) {
      if (t > 0.0 && t < 1.0) samples.push_back({t, center});
    }
  }
  std::stable_sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
  samples.erase(std::unique(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.t == b.t; }),
                samples.end());
  return SizePacking::from_samples(rp.dimension, std::move(samples));
}

RestrictedAudit restricted_audit(const RestrictedPacking& rp, int k_min, int k_max) {
  auto profile = build_profile(k_min, k_max, [&](int k) {
    return packing_cell_count(restricted_samples(rp, k), k);
  });
  const auto estimate = estimate_dimension(profile);
  const double bound = rp.dimension - 1 + rp.s() / 2.0;
  return RestrictedAudit{std::move(profile), estimate, bound, bound - 0.1, estimate.slope >= bound - 0.1};
}

F3Parameters f3_parameters(double sigma, int verify_levels) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw Error(ErrorCode::kDomain, "sigma must lie in (0,1)");
  const int q = std::min(20, static_cast<int>(std::ceil(1.0 / sigma - 1e-12)));
  F3Parameters f;
  f.sigma = sigma;
  f.base = std::int64_t{1} << (2 * q);
  const auto basis = construct_basis(f.base);
  f.basis_size = basis.size();
  std::vector<std::int64_t> alphabet;
  if (f.base <= (std::int64_t{1} << 24)) {
    alphabet = symmetrize(basis.elements, f.base);
  } else {
    // Too large to re-verify the cover; the construction is the same.
    alphabet = basis.elements;
    for (std::int64_t b : basis.elements) alphabet.push_back((f.base - b) % f.base);
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  }
  f.alphabet_size = alphabet.size();
  f.formula_value = std::log(static_cast<double>(f.alphabet_size)) / std::log(static_cast<double>(f.base));
  f.bound = 0.5 + std::log(4.0) / std::log(static_cast<double>(f.base));
  if (f.base <= (std::int64_t{1} << 24)) {
    const CantorDescription d(f.base, std::move(alphabet));
    for (int level = 1; level <= verify_levels; ++level) {
      bool ok = difference_covers(d, level);
      try {
        const double expected = std::pow(static_cast<double>(f.alphabet_size), level);
        ok = ok && static_cast<double>(enumerate_cells(d, level).size()) == expected;
      } catch (const Error&) {
        ok = false;
      }
      f.verified_levels.push_back(ok);
    }
  }
  return f;
}

}  // namespace cubepack
