#pragma once

#include <cmath>

#include "garchlab/errors.hpp"

namespace garchlab {

/// Parameter triple of the GARCH(1,1) conditional-variance recursion
///
///   sigma2_t = k + alpha * x_{t-1}^2 + beta * sigma2_{t-1}
///
/// with k > 0, alpha >= 0, beta >= 0. The process is wide-sense stationary
/// iff alpha + beta < 1, in which case the unconditional variance of the
/// innovations is k / (1 - alpha - beta). Construction validates the
/// positivity constraints; stationarity is reported, not required.
struct GarchParams {
  double k;      ///< variance offset (squared-return units)
  double alpha;  ///< weight on the lagged squared return
  double beta;   ///< weight on the lagged conditional variance

  GarchParams(double k_, double alpha_, double beta_) : k(k_), alpha(alpha_), beta(beta_) {
    if (!std::isfinite(k) || !std::isfinite(alpha) || !std::isfinite(beta))
      throw domain_error("GarchParams: parameters must be finite");
    if (!(k > 0.0)) throw domain_error("GarchParams: k must be > 0");
    if (alpha < 0.0) throw domain_error("GarchParams: alpha must be >= 0");
    if (beta < 0.0) throw domain_error("GarchParams: beta must be >= 0");
  }

  [[nodiscard]] bool is_stationary() const noexcept { return alpha + beta < 1.0; }

  /// Long-run innovation variance k / (1 - alpha - beta).
  /// Throws domain_error for nonstationary parameters, where it is undefined.
  [[nodiscard]] double unconditional_variance() const {
    if (!is_stationary())
      throw domain_error("unconditional_variance: undefined for alpha + beta >= 1");
    return k / (1.0 - alpha - beta);
  }
};

inline GarchParams validate_params(double k, double alpha, double beta) {
  return GarchParams(k, alpha, beta);
}

/// Parameters estimated from the daily Dow Jones Composite index,
/// 1980-02-01 .. 1999-12-31 (5089 closes).
inline const GarchParams kDowJonesComposite{2.5e-6, 0.0837, 0.8898};

}  // namespace garchlab
