#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "garchlab/errors.hpp"
#include "garchlab/likelihood.hpp"
#include "garchlab/params.hpp"

namespace garchlab {

enum class InitStrategy { variance_targeting, user_supplied };

struct FitOptions {
  int max_iterations = 500;
  /// Stop when one optimizer step improves the objective by less than this.
  double tolerance = 1e-8;
  /// Hard upper cap on alpha + beta; keeps the IGARCH boundary approachable
  /// but not crossable.
  double boundary_margin = 1.0 - 1e-6;
  InitStrategy init_strategy = InitStrategy::variance_targeting;
};

struct FitResult {
  GarchParams params;
  double log_likelihood;
  bool converged;
  int iterations;
  GarchParams init_used;
};

inline double sample_mean(std::span<const double> xs) {
  if (xs.empty()) throw domain_error("sample_mean: empty input");
  double acc = 0.0;
  for (double x : xs) acc += x;
  return acc / static_cast<double>(xs.size());
}

/// Centered sample variance with the n-1 denominator.
inline double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw domain_error("sample_variance: need at least two values");
  const double mean = sample_mean(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(xs.size() - 1);
}

/// Variance-targeting start: alpha = 0.05, beta = 0.85, and k chosen so the
/// implied unconditional variance equals the sample variance of the series.
inline GarchParams default_init(std::span<const double> returns) {
  const double sv = sample_variance(returns);
  if (!(sv > 0.0)) throw degenerate_data_error("default_init: series has zero variance");
  const double alpha0 = 0.05;
  const double beta0 = 0.85;
  return GarchParams{sv * ((1.0 - alpha0) - beta0), alpha0, beta0};
}

namespace detail {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline double logit(double p) { return std::log(p / (1.0 - p)); }

// Smooth bijection between R^3 and the constrained region
// { k > 0, alpha >= 0, beta >= 0, alpha + beta < margin }:
//   k = exp(u0),  alpha + beta = margin * logistic(u1),
//   alpha / (alpha + beta) = logistic(u2).
struct Reparam {
  double margin;

  [[nodiscard]] GarchParams to_params(const Vec3& u) const {
    const double k = std::exp(u[0]);
    const double persistence = margin * logistic(u[1]);
    const double share = logistic(u[2]);
    return GarchParams{k, persistence * share, persistence * (1.0 - share)};
  }

  [[nodiscard]] Vec3 to_unconstrained(const GarchParams& p) const {
    constexpr double eps = 1e-9;
    const double sum = p.alpha + p.beta;
    const double persistence = std::clamp(sum / margin, eps, 1.0 - eps);
    const double share = sum > 0.0 ? std::clamp(p.alpha / sum, eps, 1.0 - eps) : 0.5;
    return Vec3{std::log(p.k), logit(persistence), logit(share)};
  }

  // Chain rule from the theta-space gradient to u-space.
  [[nodiscard]] Vec3 pullback(const Vec3& u, const GarchParams& p, const NllGradient& g) const {
    const double sp = logistic(u[1]);
    const double sq = logistic(u[2]);
    const double persistence = margin * sp;
    return Vec3{g.dk * p.k,
                (g.dalpha * sq + g.dbeta * (1.0 - sq)) * margin * sp * (1.0 - sp),
                (g.dalpha - g.dbeta) * persistence * sq * (1.0 - sq)};
  }
};

struct BfgsOutcome {
  Vec3 u;
  double value;
  bool converged;
  int iterations;
};

// Quasi-Newton minimization with Armijo backtracking. FG must be callable as
// fg(u, grad) -> value and fg(u) -> value; non-finite trial values are
// treated as +inf and backtracked over.
template <class ValueGrad, class Value>
BfgsOutcome bfgs_minimize(ValueGrad&& value_grad, Value&& value, Vec3 u, int max_iterations,
                          double tolerance) {
  constexpr double armijo_c1 = 1e-4;
  constexpr double max_step_norm = 25.0;

  Vec3 g{};
  double f = value_grad(u, g);
  Mat3 h{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  bool h_is_identity = true;
  bool converged = false;
  int iter = 0;

  for (; iter < max_iterations; ++iter) {
    const double gnorm = norm(g);
    if (!(gnorm > 0.0) || !std::isfinite(gnorm)) {
      converged = std::isfinite(gnorm);
      break;
    }

    Vec3 d{};
    for (int i = 0; i < 3; ++i)
      d[i] = -(h[i][0] * g[0] + h[i][1] * g[1] + h[i][2] * g[2]);
    double slope = dot(d, g);
    if (!(slope < 0.0)) {  // lost positive definiteness; restart from scaled steepest descent
      for (int i = 0; i < 3; ++i) d[i] = -g[i] / gnorm;
      h = Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
      h_is_identity = true;
      slope = dot(d, g);
    }
    const double dnorm = norm(d);
    if (dnorm > max_step_norm) {
      const double shrink = max_step_norm / dnorm;
      for (double& di : d) di *= shrink;
      slope *= shrink;
    }

    double step = h_is_identity ? std::min(1.0, 1.0 / norm(g)) : 1.0;
    double f_new = 0.0;
    Vec3 u_new{};
    bool accepted = false;
    while (step > 1e-20) {
      for (int i = 0; i < 3; ++i) u_new[i] = u[i] + step * d[i];
      f_new = value(u_new);
      if (std::isfinite(f_new) && f_new <= f + armijo_c1 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!h_is_identity) {  // retry once along steepest descent
        h = Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
        h_is_identity = true;
        continue;
      }
      // No descent step of any length exists within floating-point resolution;
      // the achievable objective change is below any tolerance.
      converged = true;
      break;
    }

    Vec3 g_new{};
    f_new = value_grad(u_new, g_new);

    Vec3 s{}, y{};
    for (int i = 0; i < 3; ++i) {
      s[i] = u_new[i] - u[i];
      y[i] = g_new[i] - g[i];
    }
    const double sy = dot(s, y);
    if (std::isfinite(sy) && sy > 1e-12 * norm(s) * norm(y)) {
      if (h_is_identity) {
        const double scale = sy / dot(y, y);
        h = Mat3{{{scale, 0, 0}, {0, scale, 0}, {0, 0, scale}}};
      }
      // Inverse BFGS update: H' = (I - r s y^T) H (I - r y s^T) + r s s^T.
      const double rho = 1.0 / sy;
      Vec3 hy{};
      for (int i = 0; i < 3; ++i)
        hy[i] = h[i][0] * y[0] + h[i][1] * y[1] + h[i][2] * y[2];
      const double yhy = dot(y, hy);
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          h[i][j] += rho * ((1.0 + rho * yhy) * s[i] * s[j] - hy[i] * s[j] - s[i] * hy[j]);
        }
      }
      h_is_identity = false;
    }

    const double improvement = f - f_new;
    u = u_new;
    f = f_new;
    g = g_new;
    if (!std::isfinite(dot(g, g))) break;
    if (improvement < tolerance) {
      converged = true;
      ++iter;
      break;
    }
  }
  return BfgsOutcome{u, f, converged, iter};
}

}  // namespace detail

/// Maximum-likelihood GARCH(1,1) fit. The likelihood uses sigma2_1 = sample
/// variance of the series, and the search runs unconstrained in a smooth
/// reparameterization of the admissible region. `converged` reflects whether
/// the objective change fell below `options.tolerance` before
/// `options.max_iterations`; a non-converged fit is still returned.
inline FitResult fit(std::span<const double> returns, const FitOptions& options = {},
                     std::optional<GarchParams> init = std::nullopt) {
  if (options.max_iterations < 1) throw domain_error("fit: max_iterations must be >= 1");
  if (!(options.tolerance > 0.0)) throw domain_error("fit: tolerance must be > 0");
  if (!(options.boundary_margin > 0.0) || !(options.boundary_margin < 1.0))
    throw domain_error("fit: boundary_margin must lie in (0, 1)");
  if (options.init_strategy == InitStrategy::user_supplied && !init.has_value())
    throw domain_error("fit: user-supplied init strategy requires an init value");
  if (returns.size() < 50) throw domain_error("fit: need at least 50 returns");
  for (double x : returns) {
    if (!std::isfinite(x)) throw domain_error("fit: returns must be finite");
  }

  const double init_var = sample_variance(returns);
  if (!(init_var > 0.0)) throw degenerate_data_error("fit: series has zero variance");

  const GarchParams start = init.has_value() ? *init : default_init(returns);
  const auto x2 = detail::squared(returns);
  const detail::Reparam repar{options.boundary_margin};

  auto value = [&](const detail::Vec3& u) -> double {
    const double k = std::exp(u[0]);
    if (!(k > 0.0) || !std::isfinite(k)) return std::numeric_limits<double>::infinity();
    return detail::nll_core(repar.to_params(u), x2, init_var);
  };
  auto value_grad = [&](const detail::Vec3& u, detail::Vec3& grad) -> double {
    const GarchParams p = repar.to_params(u);
    NllGradient g{};
    const double f = detail::nll_core_grad(p, x2, init_var, g);
    grad = repar.pullback(u, p, g);
    return f;
  };

  const auto outcome = detail::bfgs_minimize(value_grad, value, repar.to_unconstrained(start),
                                             options.max_iterations, options.tolerance);
  return FitResult{repar.to_params(outcome.u), -outcome.value, outcome.converged,
                   outcome.iterations, start};
}

}  // namespace garchlab
