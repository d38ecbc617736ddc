#pragma once

// Additive bases of order two in Z_n: sets B with B + B = Z_n (mod n).

#include <cstdint>
#include <vector>

namespace cubepack {

struct AdditiveBasis {
  std::int64_t modulus = 1;
  std::vector<std::int64_t> elements;  // sorted, within [0, modulus)
  /// 2 (n ln n)^{1/2} + 2, the size guarantee a construction must meet for n >= 2.
  double bound_certificate = 0.0;

  std::size_t size() const { return elements.size(); }
};

double basis_size_bound(std::int64_t n);
/// Same bound with log base 2 in place of ln (a stronger requirement for n >= 2).
double basis_size_bound_log2(std::int64_t n);

/// Digit split basis: with m = ceil(sqrt(n)), {0..m-1} united with the
/// multiples of m below n. Size at most 2m - 1.
AdditiveBasis construct_basis(std::int64_t n);

/// True iff every residue mod n is a sum of two (not necessarily distinct)
/// elements of `elements`. Brute force over all pairs.
bool verify_cover(const std::vector<std::int64_t>& elements, std::int64_t n);

/// Smallest basis containing 0, lexicographically first among those of
/// minimum size. Exhaustive; n <= 40.
AdditiveBasis minimal_basis(std::int64_t n);

/// C = B u ((n - B) mod n). Requires verify_cover(B, n).
std::vector<std::int64_t> symmetrize(const std::vector<std::int64_t>& elements, std::int64_t n);

}  // namespace cubepack
