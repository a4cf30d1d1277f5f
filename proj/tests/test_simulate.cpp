#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "garchlab/detrend.hpp"
#include "garchlab/fit.hpp"
#include "garchlab/params.hpp"
#include "garchlab/simulate.hpp"

using namespace garchlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("simulate with zero coefficients is i.i.d. standard normal") {
  const GarchParams iid{1.0, 0.0, 0.0};
  const SimulatedPath path = simulate(iid, 10000, 123, 0);
  REQUIRE(path.returns.size() == 10000);
  REQUIRE(path.cond_vars.size() == 10000);
  for (double v : path.cond_vars) REQUIRE(v == 1.0);

  // Oracle: a plain Gaussian sampler has unit variance; 10000 draws pin the
  // sample variance to within a few percent.
  CHECK_THAT(sample_variance(path.returns), WithinRel(1.0, 0.05));
}

TEST_CASE("ensemble of sample variances matches the closed-form variance") {
  const double target = kDowJonesComposite.unconditional_variance();
  double acc = 0.0;
  const int n_paths = 50;
  for (int i = 0; i < n_paths; ++i)
    acc += sample_variance(simulate(kDowJonesComposite, 20000, 9000 + i, 500).returns);
  CHECK_THAT(acc / n_paths, WithinRel(target, 0.15));
}

TEST_CASE("simulation determinism") {
  const SimulatedPath a = simulate(kDowJonesComposite, 777, 42, 100);
  const SimulatedPath b = simulate(kDowJonesComposite, 777, 42, 100);
  CHECK(a.returns == b.returns);
  CHECK(a.cond_vars == b.cond_vars);

  const SimulatedPath c = simulate(kDowJonesComposite, 777, 43, 100);
  CHECK(a.returns != c.returns);
}

TEST_CASE("burn-in discards the stream prefix") {
  const SimulatedPath burned = simulate(kDowJonesComposite, 300, 5, 200);
  const SimulatedPath full = simulate(kDowJonesComposite, 500, 5, 0);
  for (std::size_t t = 0; t < 300; ++t) {
    REQUIRE(burned.returns[t] == full.returns[t + 200]);
    REQUIRE(burned.cond_vars[t] == full.cond_vars[t + 200]);
  }
}

TEST_CASE("the variance recursion replays exactly") {
  for (auto params : {kDowJonesComposite, GarchParams{1e-4, 0.3, 0.69},
                      GarchParams{1.0, 0.6, 0.5}}) {  // includes a nonstationary triple
    const SimulatedPath path = simulate(params, 600, 99, 50);
    for (std::size_t t = 1; t < path.returns.size(); ++t) {
      const double replayed = params.k + params.alpha * path.returns[t - 1] * path.returns[t - 1] +
                              params.beta * path.cond_vars[t - 1];
      REQUIRE(path.cond_vars[t] == replayed);
    }
    for (double v : path.cond_vars) REQUIRE(v >= params.k);
  }
}

TEST_CASE("simulate rejects n = 0") {
  CHECK_THROWS_AS(simulate(kDowJonesComposite, 0, 1, 0), domain_error);
}

TEST_CASE("cumulate computes prefix sums") {
  CHECK(cumulate(std::vector<double>{1, 2, 3}) == std::vector<double>{1, 3, 6});
  CHECK(cumulate(std::vector<double>{0, 0}) == std::vector<double>{0, 0});
  CHECK_THROWS_AS(cumulate(std::vector<double>{}), domain_error);
}

TEST_CASE("cumulate then diff_returns recovers the tail of the series") {
  const SimulatedPath path = simulate(kDowJonesComposite, 400, 17, 0);
  const auto diffs = diff_returns(cumulate(path.returns));
  REQUIRE(diffs.size() == path.returns.size() - 1);
  for (std::size_t t = 0; t < diffs.size(); ++t)
    REQUIRE_THAT(diffs[t], WithinAbs(path.returns[t + 1], 1e-12));
}

TEST_CASE("log_returns") {
  const double e = std::exp(1.0);
  const auto r = log_returns(std::vector<double>{1.0, e, e * e});
  REQUIRE(r.size() == 2);
  CHECK_THAT(r[0], WithinAbs(1.0, 1e-12));
  CHECK_THAT(r[1], WithinAbs(1.0, 1e-12));

  const auto zeros = log_returns(std::vector<double>{3.5, 3.5, 3.5, 3.5});
  for (double v : zeros) CHECK(v == 0.0);

  CHECK_THROWS_AS(log_returns(std::vector<double>{1.0}), domain_error);
  CHECK_THROWS_AS(log_returns(std::vector<double>{1.0, 0.0, 2.0}), domain_error);
  CHECK_THROWS_AS(log_returns(std::vector<double>{1.0, -2.0}), domain_error);

  const std::vector<double> prices(5089, 100.0);
  CHECK(log_returns(prices).size() == 5088);
}

TEST_CASE("log_returns inverts exponentiated cumulation") {
  const SimulatedPath path = simulate(kDowJonesComposite, 500, 31, 0);
  auto log_prices = cumulate(path.returns);
  std::vector<double> prices(log_prices.size() + 1);
  prices[0] = 1.0;
  for (std::size_t i = 0; i < log_prices.size(); ++i) prices[i + 1] = std::exp(log_prices[i]);
  const auto recovered = log_returns(prices);
  REQUIRE(recovered.size() == path.returns.size());
  for (std::size_t t = 0; t < recovered.size(); ++t) {
    REQUIRE_THAT(recovered[t],
                 WithinRel(path.returns[t], 1e-12) || WithinAbs(path.returns[t], 1e-12));
  }
}
