#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tll/bounds.hpp"
#include "tll/error.hpp"
#include "tll/optimizer.hpp"

using tll::Configuration;
using tll::Domain;
using tll::PotentialSpec;

namespace {

std::vector<double> pos(const Configuration& c) { return {c.positions().begin(), c.positions().end()}; }

std::vector<PotentialSpec> family() {
  return {PotentialSpec::overlap(), PotentialSpec::step(), PotentialSpec::power_law(2.0),
          PotentialSpec::power_law(1.5)};
}

}  // namespace

TEST_CASE("brute_force_min examples") {
  const auto a = tll::brute_force_min(1, 4, PotentialSpec::overlap(), 0.5);
  CHECK(a.best_energy == 2.0);
  REQUIRE(a.certificate);
  CHECK(a.certificate->optimal());
  CHECK(tll::certify(a, 1, 4).optimal());

  const auto b = tll::brute_force_min(2, 3, PotentialSpec::power_law(2.0), 0.25);
  CHECK(b.best_energy == 0.0);
  CHECK(pos(b.best_config) == std::vector<double>{0, 1, 2});

  // grid argmin set computed by an independent exact-rational enumeration
  const auto c = tll::brute_force_min(2, 5, PotentialSpec::power_law(2.0), 0.25, true);
  CHECK(c.best_energy == 2.0);
  REQUIRE(c.argmin_set.size() == 3);
  CHECK(pos(c.argmin_set[0]) == std::vector<double>{0, 0, 1, 1, 2});
  CHECK(pos(c.argmin_set[1]) == std::vector<double>{0, 0, 1, 2, 2});
  CHECK(pos(c.argmin_set[2]) == std::vector<double>{0, 1, 1, 2, 2});
  CHECK(pos(c.best_config) == pos(c.argmin_set[0]));
}

TEST_CASE("brute_force_min argument checks") {
  try {
    tll::brute_force_min(10, 12, PotentialSpec::overlap(), 0.05);
    FAIL("expected budget error");
  } catch (const tll::Error& e) {
    CHECK(e.kind() == tll::ErrorKind::Budget);
  }
  CHECK_THROWS_AS(tll::brute_force_min(2, 3, PotentialSpec::overlap(), 0.3), tll::Error);
  CHECK(tll::multiset_count(9, 6, 10'000'000) == 3003);
  CHECK(tll::multiset_count(1000, 10, 100) == 101);
  // below density one no certificate is issued
  CHECK_FALSE(tll::brute_force_min(3, 2, PotentialSpec::overlap(), 0.5).certificate);
}

TEST_CASE("certify") {
  CHECK(tll::certify(5.0 + 1e-9, 2, 7, 1e-6).optimal());
  const auto gap = tll::certify(5.7, 2, 7, 1e-6);
  CHECK_FALSE(gap.optimal());
  CHECK(gap.gap == doctest::Approx(0.7));
  CHECK_THROWS_AS(tll::certify(0.0, 4, 3), tll::Error);
}

TEST_CASE("anneal examples") {
  const tll::AnnealSchedule schedule;
  SUBCASE("strict potential finds a certified tower lattice") {
    const auto r = tll::anneal(2, 7, PotentialSpec::power_law(2.0), schedule, 1);
    CHECK(r.best_energy == doctest::Approx(5.0).epsilon(1e-7));
    REQUIRE(r.certificate);
    CHECK(r.certificate->optimal());
    const auto profile = tll::profile_of(r.best_config);
    REQUIRE(profile);
    auto heights = profile->heights;
    std::sort(heights.begin(), heights.end());
    CHECK(heights == std::vector<int>{2, 2, 3});
  }
  SUBCASE("zero-energy spread") {
    const auto r = tll::anneal(3, 4, PotentialSpec::overlap(), schedule, 5);
    CHECK(r.best_energy <= 1e-9);
  }
  SUBCASE("two particles under the step potential") {
    const auto r = tll::anneal(1, 2, PotentialSpec::step(), schedule, 3);
    CHECK(r.best_energy == 0.0);
    CHECK(r.best_config.positions()[1] - r.best_config.positions()[0] >= 1.0);
  }
  SUBCASE("ring domain") {
    const auto r = tll::anneal(Domain::ring(3), 6, PotentialSpec::power_law(2.0), schedule, 8);
    CHECK(r.best_energy == doctest::Approx(tll::ground_energy(2, 6)).epsilon(1e-7));
    CHECK_FALSE(r.certificate);
  }
}

TEST_CASE("anneal is deterministic per seed") {
  tll::AnnealSchedule schedule;
  schedule.restarts = 3;
  const auto a = tll::anneal(2, 5, PotentialSpec::power_law(1.5), schedule, 99);
  const auto b = tll::anneal(2, 5, PotentialSpec::power_law(1.5), schedule, 99);
  CHECK(a.best_energy == b.best_energy);
  CHECK(pos(a.best_config) == pos(b.best_config));
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("anneal never beats brute force by more than tolerance nor goes below the bound") {
  tll::AnnealSchedule schedule;
  schedule.restarts = 4;
  for (int n = 0; n <= 2; ++n) {
    for (int N = 1; N <= 6; ++N) {
      for (const auto& spec : family()) {
        CAPTURE(n);
        CAPTURE(N);
        CAPTURE(spec.name());
        const auto brute = tll::brute_force_min(n, N, spec, 0.25);
        const auto sa = tll::anneal(n, N, spec, schedule, static_cast<std::uint64_t>(10 * n + N));
        REQUIRE(sa.best_energy <= brute.best_energy + 1e-6);
        if (N >= n + 1) REQUIRE(sa.best_energy >= tll::chain_lower_bound(n, N).lower_bound - 1e-12);
      }
    }
  }
}

TEST_CASE("polish snaps near-tower configurations back") {
  std::vector<double> x{0.0, 0.03, 0.97, 1.02, 2.0, 1.99};
  std::sort(x.begin(), x.end());
  const double e = tll::polish(x, Domain::interval(2), PotentialSpec::power_law(2.0));
  CHECK(e == doctest::Approx(tll::ground_energy(2, 6)).epsilon(1e-9));
}

TEST_CASE("local_stability_test") {
  const auto pl = PotentialSpec::power_law(2.0);
  SUBCASE("flat tower lattice is stable for every family member") {
    const auto c = tll::config_from_profile({{2, 2, 2, 2}}, tll::DomainKind::Ring);
    for (const auto& spec : family()) {
      const auto report = tll::local_stability_test(c, tll::periodize(spec, 4), {0.5, 2.5}, 200, 4);
      CHECK(report.stable());
      CHECK(report.min_delta >= -1e-9);
      CHECK_FALSE(report.violating);
    }
  }
  SUBCASE("height difference two is unstable") {
    const auto c = tll::config_from_profile({{1, 3, 1, 3}}, tll::DomainKind::Ring);
    const auto p = tll::periodize(pl, 4);
    // moving one particle of the 3-tower onto the neighbouring 1-site: 2 - 3 = -1
    const Configuration moved(tll::Domain::ring(4), {0, 1, 1, 2, 2, 3, 3, 3});
    CHECK(tll::ring_energy(moved, p).total - tll::ring_energy(c, p).total == -1.0);

    const auto report = tll::local_stability_test(c, p, {0.5, 2.5}, 200, 4);
    CHECK(report.min_delta < -1e-9);
    REQUIRE(report.violating);
    CHECK(tll::ring_energy(*report.violating, p).total < tll::ring_energy(c, p).total);
    CHECK(report.violating->size() == c.size());
  }
  SUBCASE("rigid shift of one overlap offset family costs nothing") {
    const std::vector<double> offsets{0.1, 0.45, 0.8};
    const auto base = tll::sample_overlap_degenerate(3, 3, offsets, 0);
    const std::vector<double> shifted_offsets{0.1, 0.6, 0.8};
    const auto shifted = tll::sample_overlap_degenerate(3, 3, shifted_offsets, 0);
    const auto p = tll::periodize(PotentialSpec::overlap(), 4);
    CHECK(tll::ring_energy(shifted, p).total == doctest::Approx(tll::ring_energy(base, p).total).epsilon(1e-12));
    const auto report = tll::local_stability_test(base, p, {1.0, 2.5}, 200, 2);
    CHECK(report.stable());
  }
  CHECK_THROWS_AS(tll::local_stability_test(tll::config_from_profile({{1, 1}}, tll::DomainKind::Interval),
                                            tll::periodize(pl, 2), {0.0, 1.0}, 10, 0),
                  tll::Error);
  CHECK_THROWS_AS(tll::local_stability_test(tll::config_from_profile({{1, 1}}, tll::DomainKind::Ring),
                                            tll::periodize(pl, 2), {0.0, 0.5}, 10, 0),
                  tll::Error);
}

TEST_CASE("uniqueness_probe") {
  SUBCASE("strict potential, r = 0") {
    const auto report = tll::uniqueness_probe(2, 2, 0, PotentialSpec::power_law(2.0), 200, 0.05, 17);
    CHECK(report.unique());
    CHECK(report.ground_energy == 3.0);
  }
  SUBCASE("step potential") {
    const auto report = tll::uniqueness_probe(1, 3, 0, PotentialSpec::step(), 200, 0.05, 17);
    CHECK(report.unique());
  }
  SUBCASE("strict potential with tall sites") {
    const auto report = tll::uniqueness_probe(3, 1, 2, PotentialSpec::power_law(1.5), 200, 0.05, 3);
    CHECK(report.unique());
  }
  SUBCASE("overlap with one extra particle is degenerate") {
    const auto report = tll::uniqueness_probe(2, 1, 1, PotentialSpec::overlap(), 200, 0.05, 17);
    CHECK_FALSE(report.unique());
    REQUIRE_FALSE(report.examples.empty());
    bool any_background = false;
    for (const auto& member : report.examples) {
      CHECK(member.energy <= report.ground_energy + 1e-9);
      CHECK(member.spacing_ok);
      any_background = any_background || member.background_form;
    }
    CHECK(any_background);
  }
}

TEST_CASE("classify_degenerate") {
  const auto literal = tll::classify_degenerate(Configuration(Domain::interval(2), {0, 1, 1.4, 2}), 1, 1.0);
  CHECK(literal.spacing_ok);
  CHECK(literal.background_form);
  // equal energy, but no particle at site 1
  const auto other = tll::classify_degenerate(Configuration(Domain::interval(2), {0, 0.5, 1.5, 2}), 1, 1.0);
  CHECK(other.spacing_ok);
  CHECK_FALSE(other.background_form);
  const auto crowded = tll::classify_degenerate(Configuration(Domain::interval(2), {0, 0.5, 0.9, 2}), 1, 1.0);
  CHECK_FALSE(crowded.spacing_ok);
}
