#include <algorithm>
#include <bit>
#include <string>

#include "cubepack/cantor.hpp"
#include "cubepack/error.hpp"

namespace cubepack {
namespace {

constexpr int kMaxCellLevel = 26;
constexpr int kMaxSplitLevel = 62;

}  // namespace

BlockedDescription::BlockedDescription(std::vector<std::int64_t> lengths) : lengths_(std::move(lengths)) {
  if (lengths_.empty()) throw Error(ErrorCode::kDomain, "block schedule must be nonempty");
  for (std::int64_t len : lengths_) {
    if (len < 1) throw Error(ErrorCode::kDomain, "block lengths must be positive");
    if (total_ > (std::int64_t{1} << 40)) throw Error(ErrorCode::kSizeLimit, "block schedule too long");
    total_ += len;
    ends_.push_back(total_);
  }
}

// Blocks are 1-based; odd blocks belong to A.
bool BlockedDescription::free_in_a(std::int64_t position) const {
  if (position < 1) throw Error(ErrorCode::kDomain, "positions start at 1");
  if (position > total_) return true;
  const auto block = std::lower_bound(ends_.begin(), ends_.end(), position) - ends_.begin() + 1;
  return block % 2 == 1;
}

bool BlockedDescription::free_in_b(std::int64_t position) const {
  if (position < 1) throw Error(ErrorCode::kDomain, "positions start at 1");
  if (position > total_) return true;
  return !free_in_a(position);
}

std::int64_t BlockedDescription::free_count_a(std::int64_t k) const {
  std::int64_t count = 0;
  std::int64_t start = 0;
  for (std::size_t j = 0; j < ends_.size() && start < k; ++j) {
    const std::int64_t stop = std::min(ends_[j], k);
    if (j % 2 == 0) count += stop - start;
    start = ends_[j];
  }
  if (k > total_) count += k - total_;
  return count;
}

std::int64_t BlockedDescription::free_count_b(std::int64_t k) const {
  std::int64_t count = 0;
  std::int64_t start = 0;
  for (std::size_t j = 0; j < ends_.size() && start < k; ++j) {
    const std::int64_t stop = std::min(ends_[j], k);
    if (j % 2 == 1) count += stop - start;
    start = ends_[j];
  }
  if (k > total_) count += k - total_;
  return count;
}

std::vector<std::int64_t> BlockedDescription::free_positions_a(std::int64_t k) const {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 1; p <= k; ++p) {
    if (free_in_a(p)) out.push_back(p);
  }
  return out;
}

// Bit (k - p) holds position p.
std::uint64_t BlockedDescription::mask_a(int k) const {
  std::uint64_t mask = 0;
  for (int p = 1; p <= k; ++p) {
    if (free_in_a(p)) mask |= std::uint64_t{1} << (k - p);
  }
  return mask;
}

std::uint64_t BlockedDescription::mask_b(int k) const {
  std::uint64_t mask = 0;
  for (int p = 1; p <= k; ++p) {
    if (free_in_b(p)) mask |= std::uint64_t{1} << (k - p);
  }
  return mask;
}

std::pair<std::uint64_t, std::uint64_t> BlockedDescription::split(std::uint64_t m, int k) const {
  if (k < 0 || k > kMaxSplitLevel) throw Error(ErrorCode::kDomain, "split level must be in [0, 62]");
  if (k < 64 && (m >> k) != 0) throw Error(ErrorCode::kDomain, "integer has more than k binary digits");
  const std::uint64_t a_mask = mask_a(k);
  return {m & a_mask, m & ~a_mask};
}

// A tail past level k is entirely free iff no later position is blocked.
bool BlockedDescription::tail_full_a(int k) const {
  for (std::size_t j = 1; j < ends_.size(); j += 2) {
    if (ends_[j] > k) return false;
  }
  return true;
}

bool BlockedDescription::tail_full_b(int k) const {
  for (std::size_t j = 0; j < ends_.size(); j += 2) {
    if (ends_[j] > k) return false;
  }
  return true;
}

std::vector<std::uint64_t> BlockedDescription::prefix_cells(std::uint64_t mask, bool tail_full, int k) const {
  if (std::popcount(mask) > 24) throw Error(ErrorCode::kSizeLimit, "too many free digits to enumerate");
  std::vector<std::uint64_t> cells;
  std::uint64_t sub = 0;
  do {
    cells.push_back(sub);
    // A full tail adds the right endpoint of the cylinder.
    if (tail_full && sub + 1 < (std::uint64_t{1} << k)) cells.push_back(sub + 1);
    sub = (sub - mask) & mask;
  } while (sub != 0);
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

std::vector<std::uint64_t> BlockedDescription::cells_a(int k) const {
  if (k < 0 || k > kMaxCellLevel) throw Error(ErrorCode::kDomain, "cell level must be in [0, 26]");
  return prefix_cells(mask_a(k), tail_full_a(k), k);
}

std::vector<std::uint64_t> BlockedDescription::cells_b(int k) const {
  if (k < 0 || k > kMaxCellLevel) throw Error(ErrorCode::kDomain, "cell level must be in [0, 26]");
  return prefix_cells(mask_b(k), tail_full_b(k), k);
}

std::vector<std::uint64_t> BlockedDescription::cells_f1(int k) const {
  std::vector<std::uint64_t> cells = cells_a(k);
  const std::uint64_t top = std::uint64_t{1} << k;
  // B's cylinder j always holds j / 2^k and points just above it, so 1 - B
  // meets cells 2^k - j - 1 and 2^k - j.
  for (std::uint64_t j : prefix_cells(mask_b(k), false, k)) {
    cells.push_back(top - j - 1);
    if (j > 0) cells.push_back(top - j);
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

std::vector<BlockedDescription::BlockEnd> BlockedDescription::block_end_exponents_a() const {
  std::vector<BlockEnd> out;
  for (std::size_t j = 0; j < ends_.size(); ++j) {
    const std::int64_t free = free_count_a(ends_[j]);
    out.push_back({static_cast<std::int64_t>(j + 1), ends_[j], free,
                   static_cast<double>(free) / static_cast<double>(ends_[j])});
  }
  return out;
}

BlockedDescription build_blocked(std::vector<std::int64_t> lengths) {
  return BlockedDescription(std::move(lengths));
}

}  // namespace cubepack
