#include <catch2/catch_amalgamated.hpp>

#include <limits>

#include "garchlab/params.hpp"

using namespace garchlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("validate_params accepts the Dow Jones Composite triple") {
  const GarchParams p = validate_params(2.5e-6, 0.0837, 0.8898);
  CHECK(p.is_stationary());
  CHECK_THAT(p.alpha + p.beta, WithinAbs(0.9735, 1e-12));
  CHECK(kDowJonesComposite.k == p.k);
  CHECK(kDowJonesComposite.alpha == p.alpha);
  CHECK(kDowJonesComposite.beta == p.beta);
}

TEST_CASE("validate_params boundary cases") {
  CHECK(validate_params(1.0, 0.0, 0.0).is_stationary());
  CHECK_FALSE(validate_params(1.0, 0.6, 0.5).is_stationary());  // sum 1.1
  CHECK_FALSE(validate_params(1.0, 0.5, 0.5).is_stationary());  // sum exactly 1
}

TEST_CASE("validate_params rejects out-of-domain values") {
  CHECK_THROWS_AS(validate_params(-1.0, 0.1, 0.1), domain_error);
  CHECK_THROWS_AS(validate_params(0.0, 0.1, 0.1), domain_error);
  CHECK_THROWS_AS(validate_params(1.0, -0.1, 0.1), domain_error);
  CHECK_THROWS_AS(validate_params(1.0, 0.1, -0.1), domain_error);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate_params(nan, 0.1, 0.1), domain_error);
  CHECK_THROWS_AS(validate_params(1.0, inf, 0.1), domain_error);
  CHECK_THROWS_AS(validate_params(1.0, 0.1, -inf), domain_error);
}

TEST_CASE("unconditional variance") {
  // Independent evaluation of k / (1 - alpha - beta) for the DJC triple.
  const double expected = 2.5e-6 / (1.0 - 0.0837 - 0.8898);
  CHECK_THAT(kDowJonesComposite.unconditional_variance(), WithinRel(expected, 1e-8));
  CHECK_THAT(kDowJonesComposite.unconditional_variance(), WithinAbs(9.4340e-5, 5e-10));

  CHECK(validate_params(1.0, 0.0, 0.0).unconditional_variance() == 1.0);
  CHECK_THROWS_AS(validate_params(1.0, 0.6, 0.5).unconditional_variance(), domain_error);
  CHECK_THROWS_AS(validate_params(1.0, 0.5, 0.5).unconditional_variance(), domain_error);
}
