#include "cubepack/cantor.hpp"

#include <algorithm>
#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>

#include "cubepack/error.hpp"

namespace cubepack {
namespace {

using boost::multiprecision::cpp_int;

cpp_int floor_div(const cpp_int& a, const cpp_int& b) {
  cpp_int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// Membership table for C - C, indexed by difference + (n - 1).
std::vector<char> difference_table(const CantorDescription& d) {
  const std::int64_t n = d.base();
  std::vector<char> table(static_cast<std::size_t>(2 * n - 1), 0);
  for (std::int64_t a : d.alphabet()) {
    for (std::int64_t b : d.alphabet()) table[static_cast<std::size_t>(a - b + n - 1)] = 1;
  }
  return table;
}

}  // namespace

CantorDescription::CantorDescription(std::int64_t base, std::vector<std::int64_t> alphabet)
    : base_(base), alphabet_(std::move(alphabet)) {
  if (base_ < 2) throw Error(ErrorCode::kDomain, "base must be at least 2");
  if (alphabet_.empty()) throw Error(ErrorCode::kDomain, "alphabet must be nonempty");
  for (std::int64_t digit : alphabet_) {
    if (digit < 0 || digit >= base_) {
      throw Error(ErrorCode::kDomain,
                  "digit " + std::to_string(digit) + " not in [0, " + std::to_string(base_) + ")");
    }
  }
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
}

bool CantorDescription::has_digit(std::int64_t d) const {
  return std::binary_search(alphabet_.begin(), alphabet_.end(), d);
}

double CantorDescription::theoretical_dim() const {
  return std::log(static_cast<double>(alphabet_.size())) / std::log(static_cast<double>(base_));
}

CantorDescription build_cantor(std::int64_t base, std::vector<std::int64_t> alphabet) {
  return CantorDescription(base, std::move(alphabet));
}

std::vector<std::uint64_t> enumerate_cells(const CantorDescription& d, int k, std::uint64_t budget) {
  if (k < 0) throw Error(ErrorCode::kDomain, "level must be non-negative");
  if (static_cast<double>(k) * std::log2(static_cast<double>(d.base())) >= 63.0) {
    throw Error(ErrorCode::kSizeLimit, "n^k does not fit in 64 bits");
  }
  const double count = std::pow(static_cast<double>(d.alphabet().size()), k);
  if (count > static_cast<double>(budget)) {
    throw Error(ErrorCode::kSizeLimit, "|C|^k exceeds the enumeration budget");
  }
  std::vector<std::uint64_t> cells{0};
  const auto n = static_cast<std::uint64_t>(d.base());
  for (int level = 0; level < k; ++level) {
    std::vector<std::uint64_t> next;
    next.reserve(cells.size() * d.alphabet().size());
    for (std::uint64_t c : cells) {
      for (std::int64_t digit : d.alphabet()) next.push_back(c * n + static_cast<std::uint64_t>(digit));
    }
    cells = std::move(next);
  }
  return cells;
}

bool difference_covers(const CantorDescription& d, int k) {
  if (k < 0) throw Error(ErrorCode::kDomain, "level must be non-negative");
  const std::int64_t n = d.base();
  const auto diff = difference_table(d);
  auto in_diff = [&](std::int64_t v) {
    return v > -n && v < n && diff[static_cast<std::size_t>(v + n - 1)];
  };
  // transitions[carry + 1][digit] = bitmask of outgoing carries (bit c' + 1).
  std::array<std::vector<std::uint8_t>, 3> transitions;
  for (int c = -1; c <= 1; ++c) {
    auto& row = transitions[static_cast<std::size_t>(c + 1)];
    row.resize(static_cast<std::size_t>(n));
    for (std::int64_t m = 0; m < n; ++m) {
      std::uint8_t out = 0;
      for (int next = -1; next <= 1; ++next) {
        if (in_diff(m + n * next - c)) out |= static_cast<std::uint8_t>(1u << (next + 1));
      }
      row[static_cast<std::size_t>(m)] = out;
    }
  }
  // Reachable carry sets over all digit strings of m, least significant first.
  std::uint8_t reachable = 1u << 0b111;
  for (int level = 0; level < k; ++level) {
    std::uint8_t next = 0;
    for (unsigned subset = 0; subset < 8; ++subset) {
      if (!(reachable & (1u << subset))) continue;
      for (std::int64_t m = 0; m < n; ++m) {
        unsigned image = 0;
        for (int c = 0; c < 3; ++c) {
          if (subset & (1u << c)) image |= transitions[static_cast<std::size_t>(c)][static_cast<std::size_t>(m)];
        }
        next |= static_cast<std::uint8_t>(1u << image);
      }
    }
    if (next == reachable) break;  // fixed point
    reachable = next;
  }
  // Every reachable carry set must contain carry 0.
  for (unsigned subset = 0; subset < 8; ++subset) {
    if ((reachable & (1u << subset)) && !(subset & 0b010)) return false;
  }
  return true;
}

bool difference_covers(const std::vector<std::uint64_t>& cells, std::uint64_t modulus) {
  if (modulus == 0) return true;
  if (cells.empty()) return false;
  const std::uint64_t words = (modulus + 64) / 64 + 1;
  std::vector<std::uint64_t> set_bits(words, 0);
  for (std::uint64_t c : cells) {
    if (c >= modulus) throw Error(ErrorCode::kDomain, "cell outside [0, modulus)");
    set_bits[c >> 6] |= std::uint64_t{1} << (c & 63);
  }
  // Non-negative differences: union over b of the cell set shifted down by b.
  std::vector<std::uint64_t> diffs(words, 0);
  for (std::uint64_t b : cells) {
    const std::uint64_t ws = b >> 6;
    const unsigned bs = static_cast<unsigned>(b & 63);
    for (std::uint64_t w = 0; w + ws < words; ++w) {
      std::uint64_t v = set_bits[w + ws] >> bs;
      if (bs != 0 && w + ws + 1 < words) v |= set_bits[w + ws + 1] << (64 - bs);
      diffs[w] |= v;
    }
  }
  auto has = [&](std::uint64_t v) { return (diffs[v >> 6] >> (v & 63)) & 1u; };
  for (std::uint64_t m = 0; m < modulus; ++m) {
    if (has(m) || has(m + 1) || (m > 0 && has(m - 1))) continue;
    return false;
  }
  return true;
}

bool difference_self_covers(const CantorDescription& d) {
  const std::int64_t n = d.base();
  const auto diff = difference_table(d);
  std::int64_t reached = -n;
  for (std::int64_t v = -(n - 1); v <= n - 1; ++v) {
    if (!diff[static_cast<std::size_t>(v + n - 1)]) continue;
    if (v - 1 > reached) return false;
    reached = std::max(reached, v + 1);
  }
  return reached >= n;
}

double digits_value(const std::vector<std::int64_t>& digits, std::int64_t base) {
  long double value = 0.0L;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    value = (value + static_cast<long double>(*it)) / static_cast<long double>(base);
  }
  return static_cast<double>(value);
}

Witness find_witnesses(const CantorDescription& d, double t, int k) {
  if (!(t > 0.0 && t < 1.0)) throw Error(ErrorCode::kDomain, "target must lie in (0,1)");
  if (k < 0) throw Error(ErrorCode::kDomain, "level must be non-negative");
  if (!difference_self_covers(d)) {
    throw Error(ErrorCode::kNotRepresentable, "difference set of the alphabet does not cover [0,1]");
  }
  const std::int64_t n = d.base();
  std::vector<char> member(static_cast<std::size_t>(n), 0);
  for (std::int64_t digit : d.alphabet()) member[static_cast<std::size_t>(digit)] = 1;

  // t = mantissa * 2^-shift exactly; residual = numerator * 2^-shift.
  int exponent = 0;
  const double fraction = std::frexp(t, &exponent);
  const auto mantissa = static_cast<std::int64_t>(std::ldexp(fraction, 53));
  const int shift = 53 - exponent;
  const cpp_int denom = cpp_int(1) << shift;
  cpp_int numerator = mantissa;

  Witness w;
  for (int level = 0; level < k; ++level) {
    const cpp_int scaled = numerator * n;
    const auto lo = static_cast<std::int64_t>(-floor_div(-(scaled - denom), denom));
    const auto hi = static_cast<std::int64_t>(floor_div(scaled + denom, denom));
    // The floor difference keeps the residual in [0,1); prefer it.
    const auto floor_diff = static_cast<std::int64_t>(floor_div(scaled, denom));
    bool found = false;
    bool found_floor = false;
    std::int64_t best_x = 0;
    std::int64_t best_y = 0;
    for (std::int64_t diff = lo; diff <= hi; ++diff) {
      if (diff <= -n || diff >= n) continue;
      const bool is_floor = diff == floor_diff;
      for (std::int64_t x : d.alphabet()) {
        const std::int64_t y = x - diff;
        if (y < 0 || y >= n || !member[static_cast<std::size_t>(y)]) continue;
        const bool better = !found || (is_floor && !found_floor) ||
                            (is_floor == found_floor && (x < best_x || (x == best_x && y < best_y)));
        if (better) {
          found = true;
          found_floor = is_floor;
          best_x = x;
          best_y = y;
        }
        break;  // smallest x for this difference
      }
    }
    if (!found) throw Error(ErrorCode::kNotRepresentable, "no digit pair keeps the residual in range");
    numerator = scaled - cpp_int(best_x - best_y) * denom;
    w.x_digits.push_back(best_x);
    w.y_digits.push_back(best_y);
  }
  w.x = digits_value(w.x_digits, n);
  w.y = digits_value(w.y_digits, n);
  return w;
}

}  // namespace cubepack
