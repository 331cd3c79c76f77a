#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tll/error.hpp"
#include "tll/potential.hpp"
#include "tll/random.hpp"

using tll::PotentialSpec;

namespace {

std::vector<PotentialSpec> builtins() {
  return {PotentialSpec::overlap(), PotentialSpec::step(), PotentialSpec::power_law(2.0),
          PotentialSpec::power_law(1.5)};
}

PotentialSpec tabulated_overlap(double u0) {
  std::vector<std::pair<double, double>> samples;
  for (int i = 0; i <= 10; ++i) samples.emplace_back(i / 10.0, 1.0 - i / 10.0);
  samples.front().second = u0;
  return PotentialSpec::tabulated(samples);
}

}  // namespace

TEST_CASE("evaluate: anchor values") {
  CHECK(tll::evaluate(PotentialSpec::overlap(), 0.5) == 0.5);
  CHECK(tll::evaluate(PotentialSpec::power_law(2.0), 0.5) == 0.75);
  for (const auto& spec : builtins()) {
    CAPTURE(spec.name());
    CHECK(tll::evaluate(spec, 0.0) == 1.0);
    CHECK(tll::evaluate(spec, 1.0) == 0.0);
    CHECK(tll::evaluate(spec, -1.0) == 0.0);
    CHECK(tll::evaluate(spec, 7.5) == 0.0);
  }
  // Step support is the open interval
  CHECK(tll::evaluate(PotentialSpec::step(), std::nextafter(1.0, 0.0)) == 1.0);
  CHECK_THROWS_AS(tll::evaluate(PotentialSpec::overlap(), std::nan("")), tll::Error);
}

TEST_CASE("evenness and chord domination over random samples") {
  tll::Rng rng(42);
  for (const auto& spec : builtins()) {
    for (int i = 0; i < 1000; ++i) {
      const double x = tll::uniform(rng, -2.0, 2.0);
      REQUIRE(tll::evaluate(spec, x) == tll::evaluate(spec, -x));
    }
    for (int i = 1; i < 1000; ++i) {
      const double x = i / 1000.0;
      REQUIRE(tll::evaluate(spec, x) >= 1.0 - x);
    }
  }
}

TEST_CASE("strict_above_chord flag") {
  CHECK_FALSE(PotentialSpec::overlap().strict_above_chord());
  CHECK(PotentialSpec::step().strict_above_chord());
  CHECK(PotentialSpec::power_law(2.0).strict_above_chord());
  CHECK(PotentialSpec::power_law(1.2).strict_above_chord());
  CHECK_FALSE(PotentialSpec::power_law(1.0).strict_above_chord());
  CHECK_FALSE(tabulated_overlap(1.0).strict_above_chord());
  CHECK(PotentialSpec::tabulated({{0.0, 1.0}, {0.5, 0.8}, {1.0, 0.0}}).strict_above_chord());
  CHECK_FALSE(PotentialSpec::tabulated({{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.3}}).strict_above_chord());
  // flags agree with a grid check
  for (const auto& spec : builtins()) {
    bool strict = true;
    for (int i = 1; i < 1000; ++i) strict = strict && tll::evaluate(spec, i / 1000.0) > 1.0 - i / 1000.0;
    CHECK(strict == spec.strict_above_chord());
  }
}

TEST_CASE("power law below beta = 1 is rejected") {
  // 1 - x^0.5 < 1 - x on (0, 1): the chord bound fails.
  for (int i = 1; i < 100; ++i) {
    const double x = i / 100.0;
    REQUIRE(1.0 - std::pow(x, 0.5) < 1.0 - x);
  }
  try {
    PotentialSpec::power_law(0.5);
    FAIL("expected rejection");
  } catch (const tll::Error& e) {
    CHECK(e.kind() == tll::ErrorKind::InvalidSpec);
  }
}

TEST_CASE("tabulated structure errors") {
  using Samples = std::vector<std::pair<double, double>>;
  CHECK_THROWS_AS(PotentialSpec::tabulated(Samples{{0.0, 1.0}}), tll::Error);
  CHECK_THROWS_AS(PotentialSpec::tabulated(Samples{{0.0, 1.0}, {0.7, 0.3}, {0.5, 0.5}, {1.0, 0.0}}), tll::Error);
  CHECK_THROWS_AS(PotentialSpec::tabulated(Samples{{0.0, 1.0}, {1.5, 0.0}}), tll::Error);
  CHECK_THROWS_AS(PotentialSpec::tabulated(Samples{{0.1, 1.0}, {1.0, 0.0}}), tll::Error);
  const auto t = PotentialSpec::tabulated(Samples{{0.0, 1.0}, {0.5, 0.75}, {1.0, 0.0}});
  CHECK(tll::evaluate(t, 0.25) == doctest::Approx(0.875));
  CHECK(tll::evaluate(t, -0.75) == doctest::Approx(0.375));
}

TEST_CASE("validate_family") {
  CHECK(tll::validate_family(PotentialSpec::overlap(), 0.01).ok());
  for (const auto& spec : builtins()) CHECK(tll::validate_family(spec, 0.01).ok());
  CHECK(tll::validate_family(tabulated_overlap(1.0), 0.01).ok());

  const auto report = tll::validate_family(tabulated_overlap(0.9), 0.01);
  CHECK_FALSE(report.ok());
  CHECK(report.mentions("u(0) != 1"));

  // flat 0.5 inside the support breaches the chord near the origin
  const auto low = PotentialSpec::tabulated({{0.0, 1.0}, {0.01, 0.5}, {1.0, 0.5}});
  CHECK(tll::validate_family(low, 0.01).mentions("chord domination"));

  CHECK_THROWS_AS(tll::validate_family(PotentialSpec::overlap(), 0.0), tll::Error);
  CHECK_THROWS_AS(tll::validate_family(PotentialSpec::overlap(), 0.2), tll::Error);
}

TEST_CASE("periodize") {
  const auto ov = tll::periodize(PotentialSpec::overlap(), 3);
  CHECK(ov(2.6) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(ov(1.5) == 0.0);
  CHECK(tll::periodize(PotentialSpec::step(), 2)(1.2) == 1.0);
  CHECK_THROWS_AS(tll::periodize(PotentialSpec::overlap(), 1), tll::Error);

  tll::Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const int L = tll::uniform_int(rng, 2, 10);
    const double x = tll::uniform(rng, -3.0 * L, 3.0 * L);
    double d = std::fmod(x, L);
    if (d > L / 2.0) d -= L;
    if (d < -L / 2.0) d += L;
    const auto p = tll::periodize(PotentialSpec::power_law(2.0), L);
    REQUIRE(p(x) == doctest::Approx(tll::evaluate(PotentialSpec::power_law(2.0), d)).epsilon(1e-12));
    REQUIRE(p(x) == p(x + L));
  }
}

TEST_CASE("fourier_transform") {
  const auto ov = PotentialSpec::overlap();
  CHECK(std::abs(tll::fourier_transform(ov, 2.0 * std::numbers::pi)) <= 1e-9);
  CHECK(tll::fourier_transform(ov, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(tll::fourier_transform(PotentialSpec::step(), 0.0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(tll::fourier_transform(ov, std::numbers::pi) == doctest::Approx(0.4052847345693511).epsilon(1e-12));

  double worst = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double k = 0.1 * i;
    worst = std::max(worst, std::abs(tll::fourier_transform(ov, k) - 2.0 * (1.0 - std::cos(k)) / (k * k)));
  }
  CHECK(worst <= 1e-9);

  // Step: 2 sin(k)/k; power law beta = 2: 4 (sin k - k cos k)/k^3
  for (double k : {0.3, 2.0, 17.0, 250.0}) {
    CHECK(tll::fourier_transform(PotentialSpec::step(), k) == doctest::Approx(2.0 * std::sin(k) / k).epsilon(1e-10));
    const double pl = 4.0 * (std::sin(k) - k * std::cos(k)) / (k * k * k);
    CHECK(std::abs(tll::fourier_transform(PotentialSpec::power_law(2.0), k) - pl) <= 1e-11);
  }
  // the closed form helper is itself the overlap transform
  CHECK(tll::overlap_fourier_closed_form(3.0) == doctest::Approx(2.0 * (1.0 - std::cos(3.0)) / 9.0));
}

TEST_CASE("tail envelope bounds the transform") {
  for (const auto& spec : builtins()) {
    const double J = spec.edge_jump();
    const double V = spec.slope_variation();
    for (double k = 5.0; k < 400.0; k *= 1.37) {
      const double smooth = tll::fourier_transform(spec, k) - 2.0 * J * std::sin(k) / k;
      REQUIRE(std::abs(smooth) <= 2.0 * V / (k * k) + 1e-12);
    }
  }
}
