#include <cmath>
#include <random>

#include "cubepack/additive_basis.hpp"
#include "cubepack/annealing.hpp"
#include "cubepack/audits.hpp"
#include "cubepack/error.hpp"
#include "cubepack/families.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cubepack;

TEST_SUITE("audits") {
  TEST_CASE("separated radii") {
    const auto r = separated_radii(1.0 / 1600);
    REQUIRE(r.size() == 8);
    CHECK(r.front() == 0.5);
    CHECK(r.back() == 15.0 / 16);
    for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] - r[i - 1] == doctest::Approx(1.0 / 16));
    CHECK(separated_radii(1.0 / 200).size() >= 1);
    CHECK_THROWS_AS(separated_radii(1.0 / 100), Error);
  }

  TEST_CASE("overlap of aligned, concentric and two-cluster packings") {
    for (int k : {8, 10}) {
      const auto radii = separated_radii(std::ldexp(1.0, -k));
      CHECK(overlap_max(aligned_packing(2), k) == static_cast<int>(radii.size()));
      CHECK(overlap_max(concentric_packing(2), k) == 1);
      CHECK(overlap_max(two_cluster_packing(2, k), k) == static_cast<int>(radii.size() / 2));
    }
    // Low left faces of the concentric packing are as separated as the right ones.
    CHECK(overlap_max(concentric_packing(3), 9, {1, false}) == 1);
  }

  TEST_CASE("audit examples at delta 2^-10") {
    const auto c = audit_lower_bound(concentric_packing(2), 10);
    CHECK(c.M == 1);
    CHECK(c.bound_antichain == doctest::Approx(1.0 / 400));
    CHECK(c.bound_sqrt == doctest::Approx(0.01 / 32));
    CHECK(c.measured_area >= 1.0 / 400);
    CHECK(c.pass);
    const auto a = audit_lower_bound(aligned_packing(2), 10);
    CHECK(a.M == static_cast<int>(a.radii.size()));
    CHECK(a.bound_overlap == doctest::Approx(0.25 * a.M / 1024));
    CHECK(a.pass);
  }

  TEST_CASE("shrink") {
    std::mt19937_64 rng(3);
    const auto p = random_packing(2, 40, 5);
    for (int k : {6, 9}) {
      CHECK(shrink_cover(p, 1.0, k) == packing_cover(p, k));
      CHECK(shrink_count(p, 1.0, k) == packing_cell_count(p, k));
    }
    CHECK_THROWS_AS(shrink_cover(p, 0.0, 5), Error);
    CHECK_THROWS_AS(shrink_cover(p, 1.5, 5), Error);
    const auto single = SizePacking::from_samples(2, {{0.6, {0.4, 0.5}}});
    CHECK(shrink_cover(single, 0.5, 8) == boundary_cells(AxisCubeBoundary({0.4, 0.5}, 0.3), 8));
    // Constant centers fill a solid annulus.
    const auto solid = shrink_count(concentric_packing(2), 0.7, 8);
    const double side = 0.7 * 256;
    CHECK(std::abs(static_cast<double>(solid) - side * side) <= 4 * side + 8);
  }

  TEST_CASE("strip classes") {
    const auto c = strip_classes(concentric_packing(2), 100, MarginRule::kQuarter);
    REQUIRE(c.classes[49].size() == 1);
    CHECK(c.classes[49][0].lo == doctest::Approx(0.04));
    CHECK(c.classes[49][0].hi == 1.0);
    CHECK(c.measure(49) == doctest::Approx(0.96));
    CHECK(c.largest() == 49);

    const auto tiny = SizePacking::from_pieces(2, {{0.0, 0.1, {0.5, 0.5}}});
    CHECK(strip_classes(tiny, 100, MarginRule::kQuarter).classes[0].empty());

    const auto g = strip_classes(concentric_packing(2), 200, MarginRule::kLogK);
    REQUIRE(g.classes[99].size() == 1);
    CHECK(g.classes[99][0].lo == doctest::Approx(0.005 * std::log(200.0)));
  }

  TEST_CASE("strip classes agree with the crossing predicate") {
    const auto p = random_packing(2, 200, 8);
    const auto c = strip_classes(p, 100, MarginRule::kQuarter);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
      const double t = u(rng);
      const auto center = p.center_for(t);
      if (!center) continue;
      const double y = (*center)[1];
      for (int i = 0; i < 100; i += 7) {
        const bool crosses = y - t / 4 < i / 100.0 && (i + 1) / 100.0 < y + t / 4;
        bool listed = false;
        for (const auto& m : c.classes[static_cast<std::size_t>(i)]) listed = listed || (m.lo < t && t <= m.hi);
        CHECK(crosses == listed);
      }
    }
    // Every piece reaching size 8/strips lies in some class.
    for (std::size_t e = 0; e < p.size(); ++e) {
      if (p.pieces()[e].t_hi < 0.08) continue;
      bool found = false;
      for (const auto& cls : c.classes)
        for (const auto& m : cls) found = found || m.entry == e;
      CHECK(found);
    }
  }

  TEST_CASE("slices of a constant packing") {
    const auto p = concentric_packing(2);
    const auto c = strip_classes(p, 100, MarginRule::kQuarter);
    const std::vector<double> rs{0.6, 0.8};
    for (const auto& s : dual_slice_dim(p, c, 49, rs)) CHECK(std::abs(s.estimate.slope - 1.0) < 0.02);
    const auto tiny = SizePacking::from_pieces(2, {{0.0, 0.1, {0.5, 0.5}}});
    try {
      dual_slice_dim(tiny, strip_classes(tiny, 100, MarginRule::kQuarter), 0, rs);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kPrecondition);
    }
  }

  TEST_CASE("restricted bounds") {
    const auto third = restricted_random(CantorDescription(3, {0, 2}), 2, 1);
    CHECK(third.s() == doctest::Approx(std::log(2.0) / std::log(3.0)));
    const auto a = restricted_audit(third, 8, 12);
    CHECK(a.bound == doctest::Approx(1 + std::log(2.0) / (2 * std::log(3.0))));
    CHECK(a.floor == doctest::Approx(a.bound - 0.1));
    const auto full = restricted_random(CantorDescription(2, {0, 1}), 2, 1);
    CHECK(restricted_audit(full, 8, 10).bound == doctest::Approx(1.5));
    const auto point = restricted_random(CantorDescription(3, {1}), 2, 1);
    const auto pa = restricted_audit(point, 8, 12);
    CHECK(pa.bound == doctest::Approx(1.0));
    CHECK(pa.pass);
  }

  TEST_CASE("restricted samples lie in the parameter set") {
    const RestrictedPacking rp = restricted_random(CantorDescription(3, {0, 2}), 2, 9, 2);
    const auto p = restricted_samples(rp, 8);
    CHECK(p.size() > 0);
    for (const auto& s : p.samples()) {
      // Ternary digits of t avoid 1, allowing a trailing 1 for 1/3-type endpoints.
      double x = s.t;
      bool ok = true;
      for (int d = 0; d < 10; ++d) {
        x *= 3;
        const int digit = static_cast<int>(std::floor(x + 1e-9));
        x -= digit;
        if (digit == 1 && x > 1e-6) ok = false;
      }
      CHECK(ok);
    }
  }

  TEST_CASE("F3 parameters") {
    const auto f = f3_parameters(0.1);
    CHECK(f.base == (std::int64_t{1} << 20));
    CHECK(f.formula_value <= 0.6);
    CHECK(f.bound == doctest::Approx(0.6));
    for (bool v : f.verified_levels) CHECK(v);
    const auto small = f3_parameters(0.5);
    CHECK(small.base == 16);
    CHECK(small.alphabet_size == symmetrize(construct_basis(16).elements, 16).size());
  }
}

TEST_SUITE("annealing") {
  TEST_CASE("zero budget keeps the start") {
    const auto start = annealing_start(2, 8, 3);
    const auto r = adversarial_minimize(start, 6, 0, 3);
    CHECK(r.best_count == r.initial_count);
    CHECK(r.best_count == packing_cell_count(start, 6));
    for (std::size_t e = 0; e < start.size(); ++e) CHECK(r.packing.center(e) == start.center(e));
  }

  TEST_CASE("single size matches the center lattice minimum") {
    std::uint64_t best = ~std::uint64_t{0};
    for (int i = 0; i <= 32; ++i)
      for (int j = 0; j <= 32; ++j)
        best = std::min<std::uint64_t>(best, oracle::boundary_cells(3, {i / 32.0, j / 32.0}, 0.5).size());
    CHECK(best == 16);
    const auto p = SizePacking::from_samples(2, {{0.5, {0.37, 0.61}}});
    CHECK(adversarial_minimize(p, 3, 300, 1).best_count == best);
  }

  TEST_CASE("longer runs never end worse") {
    const auto start = annealing_start(2, 16, 5);
    std::uint64_t last = ~std::uint64_t{0};
    for (std::uint64_t budget : {0, 50, 200, 800}) {
      const auto r = adversarial_minimize(start, 7, budget, 11);
      CHECK(r.best_count <= last);
      CHECK(r.best_count == packing_cell_count(r.packing, 7));
      last = r.best_count;
    }
  }

  TEST_CASE("multi-seed runs are deterministic") {
    const std::vector<std::uint64_t> seeds{1, 2, 3};
    const auto a = adversarial_minimize(2, 6, 100, seeds, 8);
    const auto b = adversarial_minimize(2, 6, 100, seeds, 8);
    CHECK(a.best_count == b.best_count);
    CHECK(a.seed == b.seed);
    for (auto s : seeds) CHECK(adversarial_minimize(annealing_start(2, 8, s), 6, 100, s).best_count >= a.best_count);
  }
}
