#pragma once

#include <Eigen/Core>
#include <Eigen/QR>
#include <cmath>
#include <span>
#include <vector>

#include "garchlab/errors.hpp"

namespace garchlab {

/// Least-squares polynomial fit expressed in a Chebyshev basis on the sample
/// index mapped affinely to [-1, 1]. The basis keeps high-degree fits well
/// conditioned where raw monomials would not be.
struct PolyFit {
  std::size_t degree;
  std::vector<double> coefficients;  ///< Chebyshev-basis coefficients, size degree + 1
  std::vector<double> fitted;
};

namespace detail {

inline Eigen::MatrixXd chebyshev_design(std::size_t n, std::size_t degree) {
  Eigen::MatrixXd design(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(degree) + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = n == 1 ? 0.0
                            : -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    design(i, 0) = 1.0;
    if (degree >= 1) design(i, 1) = x;
    for (std::size_t d = 2; d <= degree; ++d)
      design(i, d) = 2.0 * x * design(i, d - 1) - design(i, d - 2);
  }
  return design;
}

}  // namespace detail

/// Fits a degree-`degree` polynomial to the series by least squares, solved
/// through a QR decomposition of the Chebyshev design matrix.
inline PolyFit fit_polynomial(std::span<const double> series, std::size_t degree) {
  if (series.size() <= degree + 1)
    throw domain_error("fit_polynomial: series length must exceed degree + 1");
  for (double v : series) {
    if (!std::isfinite(v)) throw domain_error("fit_polynomial: series must be finite");
  }

  const Eigen::MatrixXd design = detail::chebyshev_design(series.size(), degree);
  const Eigen::Map<const Eigen::VectorXd> y(series.data(),
                                            static_cast<Eigen::Index>(series.size()));
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd fitted = design * coef;

  return PolyFit{degree,
                 std::vector<double>(coef.data(), coef.data() + coef.size()),
                 std::vector<double>(fitted.data(), fitted.data() + fitted.size())};
}

/// Residuals after removing the least-squares polynomial of the given degree.
inline std::vector<double> detrend(std::span<const double> series, std::size_t degree) {
  const PolyFit poly = fit_polynomial(series, degree);
  std::vector<double> residuals(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) residuals[i] = series[i] - poly.fitted[i];
  return residuals;
}

/// First differences of a path: returns[t] = path[t+1] - path[t].
inline std::vector<double> diff_returns(std::span<const double> path) {
  if (path.size() < 2) throw domain_error("diff_returns: need at least two points");
  std::vector<double> out(path.size() - 1);
  for (std::size_t t = 0; t + 1 < path.size(); ++t) out[t] = path[t + 1] - path[t];
  return out;
}

}  // namespace garchlab
