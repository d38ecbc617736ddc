#include "cubepack/additive_basis.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "cubepack/error.hpp"

namespace cubepack {
namespace {

constexpr std::int64_t kMaxExhaustiveModulus = 40;

std::int64_t ceil_sqrt(std::int64_t n) {
  auto m = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (m * m < n) ++m;
  while (m > 0 && (m - 1) * (m - 1) >= n) --m;
  return m;
}

std::uint64_t rotate(std::uint64_t mask, std::int64_t by, std::int64_t n, std::uint64_t full) {
  if (by == 0) return mask;
  return ((mask << by) | (mask >> (n - by))) & full;
}

// Lexicographically first basis {0, first, ...} of exactly `size` elements.
std::optional<std::vector<std::int64_t>> search_branch(std::int64_t n, std::int64_t size,
                                                       std::int64_t first) {
  const std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  std::vector<std::int64_t> chosen{0, first};
  chosen.reserve(static_cast<std::size_t>(size));
  auto covers = [&]() {
    std::uint64_t mask = 0;
    for (std::int64_t e : chosen) mask |= std::uint64_t{1} << e;
    std::uint64_t sums = 0;
    for (std::int64_t e : chosen) sums |= rotate(mask, e, n, full);
    return sums == full;
  };
  // Iterative odometer over increasing tails.
  const auto tail = static_cast<std::size_t>(size - 2);
  if (tail == 0) {
    if (covers()) return chosen;
    return std::nullopt;
  }
  std::vector<std::int64_t> idx(tail);
  for (std::size_t i = 0; i < tail; ++i) idx[i] = first + 1 + static_cast<std::int64_t>(i);
  if (idx.back() >= n) return std::nullopt;
  while (true) {
    chosen.resize(2);
    chosen.insert(chosen.end(), idx.begin(), idx.end());
    if (covers()) return chosen;
    std::size_t i = tail;
    while (i > 0) {
      --i;
      const std::int64_t limit = n - static_cast<std::int64_t>(tail - i);
      if (idx[i] < limit) {
        ++idx[i];
        for (std::size_t j = i + 1; j < tail; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return std::nullopt;
    }
  }
}

}  // namespace

double basis_size_bound(std::int64_t n) {
  const auto x = static_cast<double>(n);
  return 2.0 * std::sqrt(x * std::log(x)) + 2.0;
}

double basis_size_bound_log2(std::int64_t n) {
  const auto x = static_cast<double>(n);
  return 2.0 * std::sqrt(x * std::log2(x)) + 2.0;
}

AdditiveBasis construct_basis(std::int64_t n) {
  if (n <= 0) throw Error(ErrorCode::kDomain, "modulus must be positive");
  const std::int64_t m = ceil_sqrt(n);
  std::vector<std::int64_t> elements;
  for (std::int64_t i = 0; i < m; ++i) elements.push_back(i % n);
  for (std::int64_t j = 0; j * m < n; ++j) elements.push_back(j * m);
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return AdditiveBasis{n, std::move(elements), basis_size_bound(n)};
}

bool verify_cover(const std::vector<std::int64_t>& elements, std::int64_t n) {
  if (n <= 0) throw Error(ErrorCode::kDomain, "modulus must be positive");
  for (std::int64_t e : elements) {
    if (e < 0 || e >= n) {
      throw Error(ErrorCode::kDomain, "element " + std::to_string(e) + " outside [0, n)");
    }
  }
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  std::int64_t missing = n;
  for (std::int64_t a : elements) {
    for (std::int64_t b : elements) {
      auto& h = hit[static_cast<std::size_t>((a + b) % n)];
      if (!h) {
        h = 1;
        --missing;
      }
    }
  }
  return missing == 0;
}

AdditiveBasis minimal_basis(std::int64_t n) {
  if (n <= 0) throw Error(ErrorCode::kDomain, "modulus must be positive");
  if (n > kMaxExhaustiveModulus) {
    throw Error(ErrorCode::kSizeLimit, "exhaustive basis search is limited to n <= 40");
  }
  if (n == 1) return AdditiveBasis{1, {0}, basis_size_bound(1)};
  // s elements give at most s(s+1)/2 distinct sums.
  std::int64_t size = 2;
  while (size * (size + 1) / 2 < n) ++size;
  const int workers = omp_get_max_threads();
  for (;; ++size) {
    for (std::int64_t start = 1; start < n; start += workers) {
      const std::int64_t stop = std::min<std::int64_t>(n, start + workers);
      std::vector<std::optional<std::vector<std::int64_t>>> found(
          static_cast<std::size_t>(stop - start));
#pragma omp parallel for schedule(dynamic, 1)
      for (std::int64_t first = start; first < stop; ++first) {
        found[static_cast<std::size_t>(first - start)] = search_branch(n, size, first);
      }
      for (auto& f : found) {
        if (f) return AdditiveBasis{n, std::move(*f), basis_size_bound(n)};
      }
    }
  }
}

std::vector<std::int64_t> symmetrize(const std::vector<std::int64_t>& elements, std::int64_t n) {
  if (!verify_cover(elements, n)) {
    throw Error(ErrorCode::kPrecondition, "set is not an additive basis of Z_n");
  }
  std::vector<std::int64_t> alphabet = elements;
  for (std::int64_t e : elements) alphabet.push_back((n - e) % n);
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  return alphabet;
}

}  // namespace cubepack
