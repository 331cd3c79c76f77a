#include <doctest.h>

#include <algorithm>
#include <vector>

#include "tll/configuration.hpp"
#include "tll/error.hpp"
#include "tll/random.hpp"

using tll::Configuration;
using tll::Domain;

namespace {

std::vector<double> pos(const Configuration& c) { return {c.positions().begin(), c.positions().end()}; }

}  // namespace

TEST_CASE("build_tower_config") {
  CHECK(pos(tll::build_tower_config(1, 2, {})) == std::vector<double>{0, 0, 1, 1});
  const std::vector<int> one{1};
  CHECK(pos(tll::build_tower_config(2, 1, one)) == std::vector<double>{0, 1, 1, 2});
  const std::vector<int> ends{0, 2};
  const auto c = tll::build_tower_config(2, 2, ends);
  CHECK(pos(c) == std::vector<double>{0, 0, 0, 1, 1, 2, 2, 2});
  CHECK(c.size() == 8);

  const std::vector<int> outside{3};
  CHECK_THROWS_AS(tll::build_tower_config(2, 1, outside), tll::Error);
  const std::vector<int> repeated{1, 1};
  CHECK_THROWS_AS(tll::build_tower_config(2, 1, repeated), tll::Error);
  // n = 0: every particle on the single site
  CHECK(pos(tll::build_tower_config(0, 3, {})) == std::vector<double>{0, 0, 0});
}

TEST_CASE("configuration invariants") {
  CHECK_THROWS_AS(Configuration(Domain::interval(2), {0.0, 1.5, 1.0}), tll::Error);
  CHECK_THROWS_AS(Configuration(Domain::interval(2), {0.0, 2.5}), tll::Error);
  CHECK_THROWS_AS(Configuration(Domain::interval(2), {}), tll::Error);
  CHECK_THROWS_AS(Configuration(Domain::ring(3), {0.0, 3.0}), tll::Error);
  const auto wrapped = Configuration::from_unsorted(Domain::ring(3), {3.5, -0.25, 1.0});
  CHECK(pos(wrapped) == std::vector<double>{0.5, 1.0, 2.75});
  CHECK(Domain::ring(3).n() == 2);
  CHECK(Domain::ring(3).length() == 3);
  CHECK_THROWS_AS(Domain::ring(1), tll::Error);
}

TEST_CASE("profile_of") {
  const auto p = tll::profile_of(Configuration(Domain::interval(2), {0, 1, 1, 2}), 1e-6);
  REQUIRE(p);
  CHECK(p->heights == std::vector<int>{1, 2, 1});
  CHECK_FALSE(tll::profile_of(Configuration(Domain::interval(1), {0, 0.5, 1}), 1e-6));
  // snapping within tolerance, including the ring seam
  const auto ring = tll::profile_of(Configuration(Domain::ring(3), {0.0, 1.0 + 1e-8, 2.9999999}), 1e-6);
  REQUIRE(ring);
  CHECK(ring->heights == std::vector<int>{2, 1, 0});
}

TEST_CASE("decompose_N") {
  CHECK(tll::decompose_N(7, 2) == tll::Decomposition{2, 1});
  CHECK(tll::decompose_N(3, 2) == tll::Decomposition{1, 0});
  CHECK(tll::decompose_N(9, 2) == tll::Decomposition{3, 0});
  try {
    tll::decompose_N(2, 2);
    FAIL("expected density error");
  } catch (const tll::Error& e) {
    CHECK(e.kind() == tll::ErrorKind::DensityBelowOne);
  }
}

TEST_CASE("build/profile/decompose round trip over all small cases") {
  for (int n = 0; n <= 10; ++n) {
    for (int m = 1; m <= 4; ++m) {
      // every subset for small n, a stride of subsets otherwise
      const unsigned total = 1u << (n + 1);
      const unsigned stride = n <= 6 ? 1u : 37u;
      for (unsigned mask = 0; mask < total; mask += stride) {
        std::vector<int> tall;
        for (int s = 0; s <= n; ++s) {
          if (mask & (1u << s)) tall.push_back(s);
        }
        if (static_cast<int>(tall.size()) > n) continue;
        const auto c = tll::build_tower_config(n, m, tall);
        const auto N = static_cast<std::int64_t>(m) * (n + 1) + static_cast<std::int64_t>(tall.size());
        REQUIRE(static_cast<std::int64_t>(c.size()) == N);
        const auto d = tll::decompose_N(N, n);
        REQUIRE(d.m == m);
        REQUIRE(d.r == static_cast<int>(tall.size()));
        const auto p = tll::profile_of(c);
        REQUIRE(p);
        for (int s = 0; s <= n; ++s) {
          const bool is_tall = std::find(tall.begin(), tall.end(), s) != tall.end();
          REQUIRE(p->heights[static_cast<std::size_t>(s)] == (is_tall ? m + 1 : m));
        }
        REQUIRE(p->is_ground_state_shape());
      }
    }
  }
}

TEST_CASE("density_of") {
  CHECK(tll::density_of({{2, 2, 2}}) == 2.0);
  CHECK(tll::density_of({{2, 3}}) == 2.5);
  CHECK(tll::density_of({{1, 2, 2}}) == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("sample_overlap_degenerate") {
  const std::vector<double> lattice{0.0};
  CHECK(pos(tll::sample_overlap_degenerate(2, 1, lattice, 0)) == std::vector<double>{0, 1, 2});
  const std::vector<double> two{0.0, 0.3};
  const auto c = tll::sample_overlap_degenerate(2, 2, two, 0);
  CHECK(c.domain() == Domain::ring(3));
  const auto x = pos(c);
  const std::vector<double> expected{0, 0.3, 1, 1.3, 2, 2.3};
  REQUIRE(x.size() == expected.size());
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == doctest::Approx(expected[i]));

  const std::vector<double> unsorted{0.5, 0.2};
  CHECK_THROWS_AS(tll::sample_overlap_degenerate(2, 2, unsorted, 0), tll::Error);
  const std::vector<double> out_of_range{1.0};
  CHECK_THROWS_AS(tll::sample_overlap_degenerate(2, 1, out_of_range, 0), tll::Error);

  // m particles per unit cell (without spread), spread family gaps >= 1
  tll::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int L = tll::uniform_int(rng, 2, 8);
    const int m = tll::uniform_int(rng, 1, 3);
    std::vector<double> offsets(static_cast<std::size_t>(m));
    for (double& o : offsets) o = tll::uniform01(rng);
    std::sort(offsets.begin(), offsets.end());
    const auto plain = tll::sample_overlap_degenerate(L - 1, m, offsets, trial);
    std::vector<int> per_cell(static_cast<std::size_t>(L), 0);
    for (double v : plain.positions()) ++per_cell[static_cast<std::size_t>(v)];
    for (int k : per_cell) REQUIRE(k == m);

    const auto spread = tll::sample_overlap_degenerate(L - 1, m, offsets, trial, true);
    const std::size_t extra = spread.size() - plain.size();
    REQUIRE(extra >= 1);
    REQUIRE(extra <= static_cast<std::size_t>(L));
  }
}
