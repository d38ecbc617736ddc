#pragma once

// Digit-restricted Cantor sets and the block-scheduled binary sets used as
// generators for lifted packings.

#include <cstdint>
#include <utility>
#include <vector>

namespace cubepack {

/// Reals in [0,1] whose base-`base` expansion uses only digits of `alphabet`.
class CantorDescription {
 public:
  CantorDescription(std::int64_t base, std::vector<std::int64_t> alphabet);

  std::int64_t base() const { return base_; }
  const std::vector<std::int64_t>& alphabet() const { return alphabet_; }
  bool has_digit(std::int64_t d) const;
  /// log|C| / log n
  double theoretical_dim() const;

  friend bool operator==(const CantorDescription&, const CantorDescription&) = default;

 private:
  std::int64_t base_;
  std::vector<std::int64_t> alphabet_;  // sorted, unique
};

CantorDescription build_cantor(std::int64_t base, std::vector<std::int64_t> alphabet);

/// Level-k cylinders: the integers below n^k whose k base-n digits all lie in
/// the alphabet, sorted. Throws kSizeLimit above `budget` cells.
std::vector<std::uint64_t> enumerate_cells(const CantorDescription& d, int k,
                                           std::uint64_t budget = 10'000'000);

/// True iff every integer m in [0, n^k - 1] is within 1 of some difference
/// a - b of level-k cells. Decided digit by digit with a three-state carry
/// automaton, so no enumeration is needed.
bool difference_covers(const CantorDescription& d, int k);

/// Same question for an explicit sorted cell set at modulus `modulus`.
bool difference_covers(const std::vector<std::uint64_t>& cells, std::uint64_t modulus);

/// True iff [-n, n] is covered by the intervals [e - 1, e + 1], e in C - C,
/// i.e. the difference set C_n - C_n is all of [-1, 1]. Equivalent to
/// difference_covers holding at every level.
bool difference_self_covers(const CantorDescription& d);

struct Witness {
  std::vector<std::int64_t> x_digits;
  std::vector<std::int64_t> y_digits;
  double x = 0.0;
  double y = 0.0;
};

/// Digit strings x, y over the alphabet with |x - y - t| <= n^-k.
///
/// Chosen greedily from the most significant digit, keeping the scaled
/// residual n^j (t - (x - y)) inside [-1, 1]. A digit pair whose difference
/// is the floor of the scaled residual (keeping it in [0, 1)) is preferred;
/// otherwise, and among pairs with equal difference, the smallest x digit and
/// then the smallest y digit win.
/// The choice at each digit depends only on the residual, so the level-k
/// answer is a prefix of the level-(k+1) answer. Exact rational arithmetic.
Witness find_witnesses(const CantorDescription& d, double t, int k);

double digits_value(const std::vector<std::int64_t>& digits, std::int64_t base);

/// Binary set with a block schedule: block j (1-based) covers the next
/// lengths[j-1] binary positions; part A may use any digit at positions of
/// odd blocks and has zeros elsewhere, part B the reverse. Positions past the
/// schedule are free for both parts. F1 = A u (1 - B).
class BlockedDescription {
 public:
  explicit BlockedDescription(std::vector<std::int64_t> lengths);

  const std::vector<std::int64_t>& lengths() const { return lengths_; }
  std::int64_t scheduled_length() const { return total_; }

  /// Position p >= 1 (1 = most significant binary digit).
  bool free_in_a(std::int64_t position) const;
  bool free_in_b(std::int64_t position) const;
  std::int64_t free_count_a(std::int64_t k) const;
  std::int64_t free_count_b(std::int64_t k) const;

  /// Positions of A's free digits among the first k (1-based).
  std::vector<std::int64_t> free_positions_a(std::int64_t k) const;

  /// Splits a k-digit binary integer m into a + b, a a level-k prefix of A and
  /// b one of B (positions past the schedule go to A). k <= 62.
  std::pair<std::uint64_t, std::uint64_t> split(std::uint64_t m, int k) const;

  /// Sorted dyadic cells at level k (k <= 26) meeting A, B and F1.
  std::vector<std::uint64_t> cells_a(int k) const;
  std::vector<std::uint64_t> cells_b(int k) const;
  std::vector<std::uint64_t> cells_f1(int k) const;

  struct BlockEnd {
    std::int64_t block;
    std::int64_t level;     // binary digits consumed through this block
    std::int64_t free_a;    // free digits of A among them
    double exponent;        // free_a / level = log2 N_A / level
  };
  std::vector<BlockEnd> block_end_exponents_a() const;

  friend bool operator==(const BlockedDescription&, const BlockedDescription&) = default;

 private:
  std::uint64_t mask_a(int k) const;
  std::uint64_t mask_b(int k) const;
  std::vector<std::uint64_t> prefix_cells(std::uint64_t mask, bool tail_full, int k) const;
  bool tail_full_a(int k) const;
  bool tail_full_b(int k) const;

  std::vector<std::int64_t> lengths_;
  std::vector<std::int64_t> ends_;  // cumulative block ends
  std::int64_t total_ = 0;
};

BlockedDescription build_blocked(std::vector<std::int64_t> lengths);

}  // namespace cubepack
