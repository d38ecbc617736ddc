#include <cmath>
#include <map>

#include "cubepack/dimension.hpp"
#include "cubepack/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cubepack;

TEST_SUITE("dimension") {
  TEST_CASE("box count examples") {
    CHECK(box_count(boundary_cells(AxisCubeBoundary({0.5, 0.5}, 0.5), 3)) == 16);
    CHECK(box_count(GridCover(2, 4)) == 0);
    // A segment at an off-grid height: one cell per column.
    for (int k : {3, 6, 9}) {
      std::vector<std::int64_t> flat;
      for (std::int64_t i = 0; i < (std::int64_t{1} << k); ++i) {
        flat.push_back(i);
        flat.push_back(oracle::floor_cell(0.3, k));
      }
      CHECK(box_count(GridCover(2, k, flat)) == (std::uint64_t{1} << k));
    }
  }

  TEST_CASE("exact power laws") {
    auto p1 = build_profile(4, 10, [](int k) { return std::uint64_t{1} << k; });
    auto e1 = estimate_dimension(p1);
    CHECK(e1.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e1.residual < 1e-12);
    CHECK(e1.k_min == 4);
    CHECK(e1.k_max == 10);
    auto p2 = build_profile(4, 10, [](int k) { return std::uint64_t{1} << (2 * k); });
    CHECK(estimate_dimension(p2).slope == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("middle-third counts at base-3 scales") {
    std::vector<ScaleEntry> entries;
    for (int j = 4; j <= 12; ++j) {
      entries.push_back({static_cast<int>(std::lround(j * std::log2(3.0))), std::uint64_t{1} << j});
    }
    const auto e = estimate_dimension(ScaleProfile(entries));
    CHECK(std::abs(e.slope - std::log(2.0) / std::log(3.0)) <= 0.02);
  }

  TEST_CASE("profile validation") {
    CHECK_THROWS_AS(ScaleProfile({{3, 4}, {3, 8}}), Error);
    CHECK_THROWS_AS(ScaleProfile({{3, 0}}), Error);
    CHECK_THROWS_AS(ScaleProfile({{3, 8}, {4, 4}}), Error);
    try {
      estimate_dimension(ScaleProfile({{1, 2}, {2, 4}}));
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidProfile);
    }
  }

  TEST_CASE("window count in a homogeneous digit set") {
    const CantorDescription c9(9, {0, 1, 2, 3, 6, 7, 8});
    // Brute force: level-3 cylinders below the level-1 cylinder of x = 0.
    std::size_t count = 0;
    for (auto v : oracle::digit_cells(9, c9.alphabet(), 3)) count += v / 81 == 0;
    CHECK(count == 49);
    const auto r = assouad_profile(c9, {{{0.0}, 1, 3}});
    CHECK(r.windows_used == 1);
    CHECK(r.exponent == doctest::Approx(std::log(49.0) / std::log(81.0)));
    CHECK(r.exponent == doctest::Approx(c9.theoretical_dim()));
  }

  TEST_CASE("interval and point") {
    const CantorDescription full(2, {0, 1});
    CHECK(assouad_profile(full, {{{0.3}, 2, 7}}).exponent == doctest::Approx(1.0));
    const CantorDescription point(2, {0});
    CHECK(assouad_profile(point, {{{0.0}, 1, 6}}).exponent == doctest::Approx(0.0));
  }

  TEST_CASE("pyramid windows") {
    std::map<int, GridCover> pyramid;
    for (int k = 0; k <= 8; ++k) {
      std::vector<std::int64_t> flat;
      for (std::int64_t i = 0; i < (std::int64_t{1} << k); ++i) flat.push_back(i);
      pyramid.emplace(k, GridCover(1, k, flat));
    }
    auto r = assouad_profile(pyramid, {{{0.4}, 2, 6}, {{0.9}, 1, 8}});
    CHECK(r.exponent == doctest::Approx(1.0));
    CHECK(r.windows_used == 2);
    // A window away from the set is skipped.
    std::map<int, GridCover> half;
    for (int k = 0; k <= 8; ++k) {
      std::vector<std::int64_t> flat;
      for (std::int64_t i = 0; i < (std::int64_t{1} << k) / 2; ++i) flat.push_back(i);
      if (flat.empty()) flat.push_back(0);
      half.emplace(k, GridCover(1, k, flat));
    }
    auto s = assouad_profile(half, {{{0.9}, 2, 5}});
    CHECK(s.skipped == 1);
    CHECK(s.windows_used == 0);
  }

  TEST_CASE("windows never exceed the similarity dimension") {
    const CantorDescription c9(9, {0, 1, 2, 3, 6, 7, 8});
    const auto windows = sample_cantor_windows(c9, 50, 4);
    CHECK(windows.size() == 50);
    double last = 0.0;
    std::vector<AssouadWindow> prefix;
    for (const auto& w : windows) {
      prefix.push_back(w);
      const double e = assouad_profile(c9, prefix).exponent;
      CHECK(e >= last);
      last = e;
    }
    CHECK(last <= c9.theoretical_dim() + 0.01);
  }
}
