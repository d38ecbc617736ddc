#include "cubepack/annealing.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <random>

#include "cubepack/error.hpp"
#include "cubepack/union_kernel.hpp"

namespace cubepack {
namespace {

constexpr double kCooling = 0.995;
constexpr std::uint64_t kMaxGridCells = std::uint64_t{1} << 27;

// Per-cell multiplicities on the window [-1/2, 3/2]^n that holds every cube.
class CountGrid {
 public:
  CountGrid(int dimension, int k) : n_(dimension), offset_((std::int64_t{1} << (k - 1)) + 1) {
    side_ = (std::int64_t{1} << (k + 1)) + 3;
    std::uint64_t cells = 1;
    for (int j = 0; j < n_; ++j) cells *= static_cast<std::uint64_t>(side_);
    if (cells > kMaxGridCells) throw Error(ErrorCode::kSizeLimit, "annealing grid too fine");
    counts_.assign(cells, 0);
  }

  std::vector<std::uint32_t> linear(const std::vector<std::int64_t>& flat) const {
    std::vector<std::uint32_t> out;
    out.reserve(flat.size() / static_cast<std::size_t>(n_));
    for (std::size_t i = 0; i < flat.size(); i += static_cast<std::size_t>(n_)) {
      std::int64_t index = 0;
      for (int j = 0; j < n_; ++j) {
        const std::int64_t c = flat[i + static_cast<std::size_t>(j)] + offset_;
        if (c < 0 || c >= side_) throw Error(ErrorCode::kDomain, "cube leaves the annealing window");
        index = index * side_ + c;
      }
      out.push_back(static_cast<std::uint32_t>(index));
    }
    return out;
  }

  void add(const std::vector<std::uint32_t>& cells) {
    for (std::uint32_t c : cells) occupied_ += (counts_[c]++ == 0) ? 1 : 0;
  }
  void remove(const std::vector<std::uint32_t>& cells) {
    for (std::uint32_t c : cells) occupied_ -= (--counts_[c] == 0) ? 1 : 0;
  }
  std::uint64_t occupied() const { return occupied_; }

 private:
  int n_;
  std::int64_t offset_;
  std::int64_t side_ = 0;
  std::vector<std::uint32_t> counts_;
  std::uint64_t occupied_ = 0;
};

std::vector<std::uint32_t> entry_cells(const SizePacking& p, std::size_t entry, int k, const CountGrid& grid) {
  std::vector<IndexBox> boxes;
  append_entry_boxes(p, entry, k, 1.0, boxes);
  return grid.linear(kernels::union_cells(p.dimension(), boxes));
}

Point jitter(const Point& center, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Point offset(center.size());
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& o : offset) {
      o = unit(rng);
      norm2 += o * o;
    }
  } while (norm2 > 1.0);
  Point moved(center.size());
  for (std::size_t j = 0; j < center.size(); ++j) moved[j] = std::clamp(center[j] + radius * offset[j], 0.0, 1.0);
  return moved;
}

}  // namespace

SizePacking annealing_start(int dimension, int pieces, std::uint64_t seed) {
  if (pieces < 1) throw Error(ErrorCode::kDomain, "need at least one piece");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<PackingPiece> list;
  for (int j = 0; j < pieces; ++j) {
    Point c(static_cast<std::size_t>(dimension));
    for (double& x : c) x = unit(rng);
    list.push_back({static_cast<double>(j) / pieces, static_cast<double>(j + 1) / pieces, std::move(c)});
  }
  return SizePacking::from_pieces(dimension, std::move(list));
}

AnnealingResult adversarial_minimize(const SizePacking& initial, int k, std::uint64_t budget, std::uint64_t seed) {
  if (k < 1) throw Error(ErrorCode::kDomain, "annealing scale must be at least 1");
  const double delta = std::ldexp(1.0, -k);
  CountGrid grid(initial.dimension(), k);
  SizePacking current = initial;
  std::vector<std::vector<std::uint32_t>> cells;
  for (std::size_t e = 0; e < current.size(); ++e) {
    cells.push_back(entry_cells(current, e, k, grid));
    grid.add(cells.back());
  }
  AnnealingResult result{current, grid.occupied(), grid.occupied(), 0, seed};
  if (current.size() == 0) return result;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, current.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double t0 = std::max(1.0, 0.01 * static_cast<double>(result.initial_count));
  double temperature = t0;
  for (std::uint64_t step = 0; step < budget; ++step, temperature *= kCooling) {
    const std::size_t e = pick(rng);
    const Point old_center = current.center(e);
    const double radius = std::max(delta, 0.25 * temperature / t0);
    current.set_center(e, jitter(old_center, radius, rng));
    const std::uint64_t before = grid.occupied();
    auto moved = entry_cells(current, e, k, grid);
    grid.remove(cells[e]);
    grid.add(moved);
    const double change = static_cast<double>(grid.occupied()) - static_cast<double>(before);
    if (change <= 0.0 || unit(rng) < std::exp(-change / temperature)) {
      cells[e] = std::move(moved);
      ++result.accepted;
      if (grid.occupied() < result.best_count) {
        result.best_count = grid.occupied();
        result.packing = current;
      }
    } else {
      grid.remove(moved);
      grid.add(cells[e]);
      current.set_center(e, old_center);
    }
  }
  return result;
}

AnnealingResult adversarial_minimize(int dimension, int k, std::uint64_t budget,
                                     std::span<const std::uint64_t> seeds, int pieces) {
  if (seeds.empty()) throw Error(ErrorCode::kDomain, "need at least one seed");
  std::vector<std::optional<AnnealingResult>> runs(seeds.size());
  std::vector<std::exception_ptr> failures(seeds.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    try {
      runs[i] = adversarial_minimize(annealing_start(dimension, pieces, seeds[i]), k, budget, seeds[i]);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i]->best_count < runs[best]->best_count) best = i;
  }
  return std::move(*runs[best]);
}

}  // namespace cubepack
