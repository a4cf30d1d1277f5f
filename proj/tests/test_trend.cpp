#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "garchlab/params.hpp"
#include "garchlab/simulate.hpp"
#include "garchlab/trend.hpp"

using namespace garchlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("single-part trend hits the half-cosine landmarks") {
  const TrendSpec spec{101, {0, 101}, {0.5}};
  const TrendSeries trend = eval_trend(spec);
  REQUIRE(trend.values.size() == 101);
  CHECK(trend.values.front() == 0.0);
  CHECK_THAT(trend.values[50], WithinAbs(-0.5, 1e-12));   // midpoint: half the swing
  CHECK_THAT(trend.values[100], WithinAbs(-1.0, 1e-12));  // endpoint: full swing 2a
}

TEST_CASE("two parts alternate direction and stack endpoint swings") {
  const TrendSpec spec{202, {0, 101, 202}, {0.5, 0.25}};
  const TrendSeries trend = eval_trend(spec);
  CHECK_THAT(trend.values[100], WithinAbs(-1.0, 1e-12));
  CHECK_THAT(trend.values.back(), WithinAbs(-1.0 + 0.5, 1e-12));
}

TEST_CASE("first_sign flips the first part upward") {
  const TrendSpec spec{101, {0, 101}, {0.5}, +1};
  const TrendSeries trend = eval_trend(spec);
  CHECK_THAT(trend.values.back(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("TrendSpec validation") {
  CHECK_THROWS_AS(TrendSpec(101, {0, 101}, {}), domain_error);
  CHECK_THROWS_AS(TrendSpec(101, {0, 50, 101}, {0.5}), domain_error);    // sizes mismatch
  CHECK_THROWS_AS(TrendSpec(101, {1, 101}, {0.5}), domain_error);        // must start at 0
  CHECK_THROWS_AS(TrendSpec(101, {0, 100}, {0.5}), domain_error);        // must end at n
  CHECK_THROWS_AS(TrendSpec(120, {0, 49, 120}, {0.5, 0.5}), domain_error);  // short part
  CHECK_THROWS_AS(TrendSpec(101, {0, 101}, {0.0}), domain_error);        // amplitude 0
  CHECK_THROWS_AS(TrendSpec(101, {0, 101}, {1.0}), domain_error);        // amplitude 1
  CHECK_THROWS_AS(TrendSpec(101, {0, 101}, {0.5}, 2), domain_error);
}

TEST_CASE("sample_spec produces admissible breakpoints deterministically") {
  const TrendSpec a = sample_spec(6000, 4, 77);
  const TrendSpec b = sample_spec(6000, 4, 77);
  CHECK(a.breakpoints == b.breakpoints);
  CHECK(a.amplitudes == b.amplitudes);
  REQUIRE(a.breakpoints.size() == 5);
  CHECK(a.breakpoints.front() == 0);
  CHECK(a.breakpoints.back() == 6000);

  CHECK(sample_spec(6000, 4, 78).breakpoints != a.breakpoints);

  const TrendSpec single = sample_spec(100, 1, 3);
  CHECK(single.breakpoints == std::vector<std::size_t>{0, 100});

  // The only admissible placement when n = 50 s exactly.
  const TrendSpec tight = sample_spec(100, 2, 9);
  CHECK(tight.breakpoints == std::vector<std::size_t>{0, 50, 100});

  CHECK_THROWS_AS(sample_spec(99, 2, 1), domain_error);
  CHECK_THROWS_AS(sample_spec(100, 0, 1), domain_error);
}

TEST_CASE("trend invariants hold for random specs") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t s = 1 + seed % 4;
    const TrendSpec spec = sample_spec(6000, s, 1000 + seed);
    REQUIRE(spec.parts() == s);
    std::size_t total = 0;
    for (std::size_t p = 0; p < s; ++p) {
      REQUIRE(spec.part_length(p) >= kMinPartLength);
      total += spec.part_length(p);
    }
    REQUIRE(total == 6000);
    for (double a : spec.amplitudes) REQUIRE((a > 0.0 && a < 1.0));

    const TrendSeries trend = eval_trend(spec);
    REQUIRE(trend.values.front() == 0.0);
    double level = 0.0;
    for (std::size_t p = 0; p < s; ++p) {
      const int sign = spec.part_sign(p);
      const std::size_t begin = spec.breakpoints[p];
      const std::size_t end = spec.breakpoints[p + 1];
      for (std::size_t i = begin + 1; i < end; ++i) {
        if (sign > 0)
          REQUIRE(trend.values[i] >= trend.values[i - 1]);
        else
          REQUIRE(trend.values[i] <= trend.values[i - 1]);
      }
      const double swing = trend.values[end - 1] - level;
      REQUIRE_THAT(swing, WithinAbs(sign * 2.0 * spec.amplitudes[p], 1e-12));
      level = trend.values[end - 1];
    }
  }
}

TEST_CASE("amplitude_ratio") {
  const std::vector<double> trend{0.0, 3.0, 1.0};
  const std::vector<double> noise{0.0, 1.5, 0.5};
  CHECK(amplitude_ratio(trend, noise) == 2.0);
  CHECK(amplitude_ratio(trend, trend) == 1.0);
  CHECK_THROWS_AS(amplitude_ratio(trend, std::vector<double>{1.0, 1.0, 1.0}), domain_error);
  CHECK_THROWS_AS(amplitude_ratio(std::vector<double>{}, std::vector<double>{}), domain_error);
  CHECK_THROWS_AS(amplitude_ratio(trend, std::vector<double>{1.0}), domain_error);
}

TEST_CASE("scale_to_ratio hits the target exactly") {
  const auto path = simulate(kDowJonesComposite, 900, 4, 0);
  const auto noise = cumulate(path.returns);
  const TrendSeries trend = eval_trend(sample_spec(900, 3, 5));

  for (double target : {0.25, 1.0, 2.0, 4.0}) {
    const TrendSeries scaled = scale_to_ratio(trend, noise, target);
    CHECK_THAT(amplitude_ratio(scaled.values, noise), WithinRel(target, 1e-12));
  }

  // Scaling to the current ratio is the identity.
  const double current = amplitude_ratio(trend.values, noise);
  const TrendSeries same = scale_to_ratio(trend, noise, current);
  for (std::size_t i = 0; i < trend.values.size(); ++i)
    CHECK_THAT(same.values[i], WithinAbs(trend.values[i], 1e-15));

  // Scaling twice composes multiplicatively.
  const TrendSeries twice = scale_to_ratio(scale_to_ratio(trend, noise, 2.0), noise, 3.0);
  const TrendSeries direct = scale_to_ratio(trend, noise, 3.0);
  for (std::size_t i = 0; i < twice.values.size(); ++i)
    CHECK_THAT(twice.values[i], WithinRel(direct.values[i], 1e-12) ||
                                    WithinAbs(direct.values[i], 1e-15));

  CHECK_THROWS_AS(scale_to_ratio(trend, noise, 0.0), domain_error);
  CHECK_THROWS_AS(scale_to_ratio(trend, noise, -1.0), domain_error);
  CHECK_THROWS_AS(scale_to_ratio(trend, std::vector<double>(900, 1.0), 2.0), domain_error);
}
