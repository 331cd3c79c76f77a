#include <doctest.h>

#include "tll/error.hpp"
#include "tll/json_io.hpp"
#include "tll/random.hpp"

using tll::io::json;

TEST_CASE("potential JSON round trip") {
  for (const auto& spec : {tll::PotentialSpec::overlap(), tll::PotentialSpec::step(), tll::PotentialSpec::power_law(1.25),
                           tll::PotentialSpec::tabulated({{0.0, 1.0}, {0.5, 0.7}, {1.0, 0.0}})}) {
    CHECK(tll::io::potential_from_json(tll::io::to_json(spec)) == spec);
  }
  CHECK(tll::io::potential_from_json(json::parse(R"({"kind": "power_law", "beta": 2})")).beta() == 2.0);
}

TEST_CASE("configuration JSON round trip on random inputs") {
  tll::Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = tll::uniform_int(rng, 1, 6);
    std::vector<double> x(static_cast<std::size_t>(tll::uniform_int(rng, 1, 20)));
    for (double& v : x) v = tll::uniform(rng, 0.0, n);
    const auto domain = trial % 2 ? tll::Domain::ring(n + 1) : tll::Domain::interval(n);
    const auto c = tll::Configuration::from_unsorted(domain, x);
    REQUIRE(tll::io::configuration_from_json(json::parse(tll::io::to_json(c).dump())) == c);
  }
}

TEST_CASE("malformed inputs name the field") {
  auto message = [](auto&& fn) -> std::string {
    try {
      fn();
    } catch (const tll::Error& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message([] { tll::io::potential_from_json(json::parse(R"({"beta": 2})")); }).find("kind") != std::string::npos);
  CHECK(message([] { tll::io::potential_from_json(json::parse(R"({"kind": "power_law"})")); }).find("beta") !=
        std::string::npos);
  CHECK(message([] { tll::io::potential_from_json(json::parse(R"({"kind": "cubic"})")); }).find("kind") !=
        std::string::npos);
  CHECK(message([] {
          tll::io::configuration_from_json(json::parse(R"({"domain": {"kind": "interval", "n": 2}, "positions": [0, "a"]})"));
        }).find("positions[1]") != std::string::npos);
  CHECK(message([] { tll::io::configuration_from_json(json::parse(R"({"positions": [0]})")); }).find("domain") !=
        std::string::npos);
}

TEST_CASE("CSV configurations") {
  const auto c = tll::io::configuration_from_csv("# header\n0\n0.5\n\n2\n", tll::Domain::interval(2));
  CHECK(c.size() == 3);
  CHECK_THROWS_AS(tll::io::configuration_from_csv("0\nabc\n", tll::Domain::interval(2)), tll::Error);
}

TEST_CASE("measure and schedule") {
  const auto mu = tll::io::measure_from_json(json::parse(R"({"L": 2, "atoms": [[0, 1], [1, 1]]})"));
  CHECK(mu.period() == 2);
  CHECK(tll::io::to_json(mu)["atoms"].size() == 2);
  const auto s = tll::io::schedule_from_json(json::parse(R"({"restarts": 2, "cooling_factor": 0.9})"));
  CHECK(s.restarts == 2);
  CHECK(s.cooling_factor == 0.9);
  CHECK_THROWS_AS(tll::io::schedule_from_json(json::parse(R"({"cooling_factor": 1.5})")), tll::Error);
}

TEST_CASE("number formatting and digest") {
  CHECK(tll::io::format_number(2.0) == "2");
  CHECK(tll::io::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(tll::io::digest("abc") == tll::io::digest("abc"));
  CHECK(tll::io::digest("abc") != tll::io::digest("abd"));
  CHECK(tll::io::digest("").size() == 16);
}
