#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "garchlab/errors.hpp"
#include "garchlab/params.hpp"

namespace garchlab {

inline constexpr std::size_t kDefaultBurnIn = 500;

/// One simulated GARCH(1,1) path. `cond_vars[t]` is the variance that
/// generated `returns[t]`, so the recursion replays exactly:
/// cond_vars[t] == k + alpha * returns[t-1]^2 + beta * cond_vars[t-1]
/// for every retained t > 0.
struct SimulatedPath {
  std::vector<double> returns;
  std::vector<double> cond_vars;
  std::uint64_t seed = 0;
  std::size_t burn_in = 0;
};

/// Draws `burn_in + n` steps of the variance recursion with Gaussian
/// innovations and discards the first `burn_in`. The variance chain starts at
/// the unconditional variance when the parameters are stationary, otherwise
/// at k / (1 - min(alpha + beta, 0.999)). Identical arguments produce
/// bit-identical output within one build.
inline SimulatedPath simulate(const GarchParams& params, std::size_t n, std::uint64_t seed,
                              std::size_t burn_in = kDefaultBurnIn) {
  if (n == 0) throw domain_error("simulate: n must be >= 1");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  double var = params.is_stationary()
                   ? params.k / (1.0 - params.alpha - params.beta)
                   : params.k / (1.0 - std::min(params.alpha + params.beta, 0.999));

  SimulatedPath path;
  path.returns.reserve(n);
  path.cond_vars.reserve(n);
  path.seed = seed;
  path.burn_in = burn_in;

  const std::size_t total = burn_in + n;
  for (std::size_t t = 0; t < total; ++t) {
    const double x = gauss(rng) * std::sqrt(var);
    if (t >= burn_in) {
      path.returns.push_back(x);
      path.cond_vars.push_back(var);
    }
    var = params.k + params.alpha * x * x + params.beta * var;
  }
  return path;
}

/// Running sum of returns: the log-price path y_n = sum_{i<=n} x_i.
inline std::vector<double> cumulate(std::span<const double> returns) {
  if (returns.empty()) throw domain_error("cumulate: empty input");
  std::vector<double> path(returns.size());
  std::partial_sum(returns.begin(), returns.end(), path.begin());
  return path;
}

/// Log returns of a strictly positive price series:
/// x_t = log(p_t) - log(p_{t-1}); output is one element shorter.
inline std::vector<double> log_returns(std::span<const double> prices) {
  if (prices.size() < 2) throw domain_error("log_returns: need at least two prices");
  for (double p : prices) {
    if (!(p > 0.0) || !std::isfinite(p))
      throw domain_error("log_returns: prices must be strictly positive and finite");
  }
  std::vector<double> out(prices.size() - 1);
  for (std::size_t t = 0; t + 1 < prices.size(); ++t)
    out[t] = std::log(prices[t + 1]) - std::log(prices[t]);
  return out;
}

}  // namespace garchlab
