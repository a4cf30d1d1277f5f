#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "garchlab/errors.hpp"
#include "garchlab/params.hpp"

namespace garchlab {

/// Partial derivatives of the negative log-likelihood with respect to
/// (k, alpha, beta).
struct NllGradient {
  double dk;
  double dalpha;
  double dbeta;
};

namespace detail {

// Unchecked single-pass evaluation over precomputed squared returns.
// sigma2_1 = init_var; subsequent variances follow the recursion.
inline double half_log_2pi() {
  static const double v = 0.5 * std::log(2.0 * std::numbers::pi);
  return v;
}

inline double nll_core(const GarchParams& p, std::span<const double> x2, double init_var) {
  double var = init_var;
  double acc = 0.0;
  for (std::size_t t = 0; t < x2.size(); ++t) {
    if (t > 0) var = p.k + p.alpha * x2[t - 1] + p.beta * var;
    acc += 0.5 * (std::log(var) + x2[t] / var);
  }
  return acc + half_log_2pi() * static_cast<double>(x2.size());
}

// Value and gradient in one pass. The variance sensitivities satisfy
//   d sigma2_t / d theta = (1 | x2_{t-1} | sigma2_{t-1}) + beta * d sigma2_{t-1} / d theta
// with zero initial condition because sigma2_1 = init_var does not depend on
// the parameters.
inline double nll_core_grad(const GarchParams& p, std::span<const double> x2, double init_var,
                            NllGradient& grad) {
  double var = init_var;
  double dk = 0.0, da = 0.0, db = 0.0;
  double acc = 0.0, gk = 0.0, ga = 0.0, gb = 0.0;

  for (std::size_t t = 0; t < x2.size(); ++t) {
    if (t > 0) {
      dk = 1.0 + p.beta * dk;
      da = x2[t - 1] + p.beta * da;
      db = var + p.beta * db;  // var still holds sigma2_{t-1}
      var = p.k + p.alpha * x2[t - 1] + p.beta * var;
    }
    const double inv = 1.0 / var;
    acc += 0.5 * (std::log(var) + x2[t] * inv);
    const double w = 0.5 * inv * (1.0 - x2[t] * inv);
    gk += w * dk;
    ga += w * da;
    gb += w * db;
  }
  grad = NllGradient{gk, ga, gb};
  return acc + half_log_2pi() * static_cast<double>(x2.size());
}

inline std::vector<double> squared(std::span<const double> xs) {
  std::vector<double> x2(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) x2[i] = xs[i] * xs[i];
  return x2;
}

inline void check_likelihood_inputs(std::span<const double> returns, double init_var) {
  if (returns.empty()) throw domain_error("likelihood: empty return series");
  if (!(init_var > 0.0) || !std::isfinite(init_var))
    throw domain_error("likelihood: init_var must be positive and finite");
  for (double x : returns) {
    if (!std::isfinite(x)) throw domain_error("likelihood: returns must be finite");
  }
}

}  // namespace detail

/// Gaussian conditional negative log-likelihood
///   1/2 * sum_t [ log(2*pi*sigma2_t) + x_t^2 / sigma2_t ]
/// with sigma2_1 = init_var and the GARCH(1,1) recursion defining the rest.
inline double neg_log_likelihood(const GarchParams& params, std::span<const double> returns,
                                 double init_var) {
  detail::check_likelihood_inputs(returns, init_var);
  return detail::nll_core(params, detail::squared(returns), init_var);
}

/// Analytic gradient of neg_log_likelihood via recursive variance
/// sensitivities.
inline NllGradient nll_gradient(const GarchParams& params, std::span<const double> returns,
                                double init_var) {
  detail::check_likelihood_inputs(returns, init_var);
  NllGradient grad{};
  detail::nll_core_grad(params, detail::squared(returns), init_var, grad);
  return grad;
}

}  // namespace garchlab
