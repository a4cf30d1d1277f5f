#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "garchlab/detrend.hpp"
#include "garchlab/errors.hpp"
#include "garchlab/fit.hpp"
#include "garchlab/params.hpp"
#include "garchlab/seed.hpp"
#include "garchlab/simulate.hpp"
#include "garchlab/trend.hpp"

namespace garchlab {

/// A synthetic log-price series xi = trend + integrated noise, with the
/// components retained. noise_path is stored as xi - trend, so the
/// decomposition is exact elementwise.
struct ComposedSeries {
  std::vector<double> xi;
  std::vector<double> trend;
  std::vector<double> noise_path;
  GarchParams true_params;
  double realized_r;
  TrendSpec spec;
  std::uint64_t seed;
};

struct ParamStat {
  double mean = 0.0;
  double stddev = 0.0;
  double rel_std = 0.0;
};

/// Per-cell ensemble summary: coordinates, replicate accounting, and
/// mean / sample std / relative std for each parameter.
struct EnsembleStats {
  std::vector<std::pair<std::string, double>> cell;
  std::size_t replicates_requested = 0;
  std::size_t replicates_converged = 0;
  ParamStat k;
  ParamStat alpha;
  ParamStat beta;
};

/// Results of the detrending grid: one entry per (s, r) cell for the
/// detrended estimates, and the paired baseline fitted on the same
/// replicates' true noise returns.
struct DetrendExperimentResult {
  std::vector<EnsembleStats> detrended;
  std::vector<EnsembleStats> baseline;
};

namespace detail {

inline ParamStat param_stat(std::span<const double> values) {
  const double mean = sample_mean(values);
  const double sd = std::sqrt(sample_variance(values));
  const double rel =
      mean != 0.0 ? sd / mean : std::numeric_limits<double>::quiet_NaN();
  return ParamStat{mean, sd, rel};
}

}  // namespace detail

/// Sample mean, sample standard deviation (n-1 denominator) and relative
/// standard deviation (std / mean) of each parameter across estimates.
inline EnsembleStats ensemble_stats(std::span<const GarchParams> estimates) {
  if (estimates.size() < 2)
    throw domain_error("ensemble_stats: need at least two estimates");
  std::vector<double> ks, alphas, betas;
  ks.reserve(estimates.size());
  alphas.reserve(estimates.size());
  betas.reserve(estimates.size());
  for (const GarchParams& p : estimates) {
    ks.push_back(p.k);
    alphas.push_back(p.alpha);
    betas.push_back(p.beta);
  }
  EnsembleStats stats;
  stats.replicates_requested = estimates.size();
  stats.replicates_converged = estimates.size();
  stats.k = detail::param_stat(ks);
  stats.alpha = detail::param_stat(alphas);
  stats.beta = detail::param_stat(betas);
  return stats;
}

namespace detail {

// Replicate seeds hash the generating context, never list positions, so any
// two experiments running the same (params, n[, s, r], k) do identical work.
inline std::uint64_t replicate_seed(std::uint64_t base, const GarchParams& p, std::size_t n,
                                    std::size_t replicate) {
  return derive_seed(base, p.k, p.alpha, p.beta, n, replicate);
}

inline std::uint64_t replicate_seed(std::uint64_t base, const GarchParams& p, std::size_t n,
                                    std::size_t s, double r, std::size_t replicate) {
  return derive_seed(base, p.k, p.alpha, p.beta, n, s, r, replicate);
}

struct ComposedReplicate {
  ComposedSeries series;
  std::vector<double> noise_returns;  // the simulated x_t behind noise_path
};

inline ComposedReplicate compose_replicate(const GarchParams& params, std::size_t n,
                                           std::size_t s, double r_target, std::uint64_t seed,
                                           std::size_t burn_in) {
  if (!(r_target > 0.0) || !std::isfinite(r_target))
    throw domain_error("compose_series: r_target must be positive and finite");

  auto path = simulate(params, n, derive_seed(seed, std::uint64_t{1}), burn_in);
  const std::vector<double> noise_path = cumulate(path.returns);
  const TrendSpec spec = sample_spec(n, s, derive_seed(seed, std::uint64_t{2}));
  const TrendSeries trend = scale_to_ratio(eval_trend(spec), noise_path, r_target);

  std::vector<double> xi(n), decomposed_noise(n);
  for (std::size_t i = 0; i < n; ++i) {
    xi[i] = trend.values[i] + noise_path[i];
    decomposed_noise[i] = xi[i] - trend.values[i];
  }
  const double realized = amplitude_ratio(trend.values, decomposed_noise);

  ComposedSeries series{std::move(xi), trend.values, std::move(decomposed_noise),
                        params,        realized,     trend.spec,
                        seed};
  return ComposedReplicate{std::move(series), std::move(path.returns)};
}

struct CellAccumulator {
  std::vector<GarchParams> estimates;
  std::size_t requested = 0;

  void add(const FitResult& fit_result) {
    ++requested;
    if (fit_result.converged) estimates.push_back(fit_result.params);
  }

  [[nodiscard]] EnsembleStats finish(std::vector<std::pair<std::string, double>> cell) const {
    if (estimates.size() < 2)
      throw degenerate_data_error(
          "ensemble cell has fewer than two converged fits; cannot aggregate");
    EnsembleStats stats = ensemble_stats(estimates);
    stats.cell = std::move(cell);
    stats.replicates_requested = requested;
    stats.replicates_converged = estimates.size();
    return stats;
  }
};

}  // namespace detail

/// Builds one composed series: simulate noise, cumulate it, draw and evaluate
/// a trend, scale the trend to the requested ratio, and add the components.
/// Both sub-streams (noise, trend) derive deterministically from `seed`.
inline ComposedSeries compose_series(const GarchParams& params, std::size_t n, std::size_t s,
                                     double r_target, std::uint64_t seed) {
  return detail::compose_replicate(params, n, s, r_target, seed, kDefaultBurnIn).series;
}

/// Dispersion of fitted parameters across pure (trend-free) simulated paths,
/// one EnsembleStats per requested length. Non-converged fits are excluded
/// from the statistics and reflected in replicates_converged.
inline std::vector<EnsembleStats> intrinsic_variability_experiment(
    const GarchParams& params, std::span<const std::size_t> lengths, std::size_t replicates,
    std::uint64_t seed, const FitOptions& options = {}) {
  if (replicates < 2)
    throw domain_error("intrinsic_variability_experiment: need at least 2 replicates");
  if (lengths.empty())
    throw domain_error("intrinsic_variability_experiment: no lengths given");
  for (std::size_t n : lengths) {
    if (n < 100)
      throw domain_error("intrinsic_variability_experiment: lengths must be >= 100");
  }

  std::vector<EnsembleStats> out;
  out.reserve(lengths.size());
  for (std::size_t n : lengths) {
    detail::CellAccumulator cell;
    for (std::size_t rep = 0; rep < replicates; ++rep) {
      const auto path =
          simulate(params, n, detail::replicate_seed(seed, params, n, rep), kDefaultBurnIn);
      cell.add(fit(path.returns, options));
    }
    out.push_back(cell.finish({{"N", static_cast<double>(n)}}));
  }
  return out;
}

/// The detrending grid: for every (s, r) cell, compose trend + noise, remove
/// a polynomial of degree 2s + 3, difference, refit, and aggregate. The
/// baseline fits the same replicates' true noise returns, giving a paired
/// comparison.
inline DetrendExperimentResult detrend_experiment(const GarchParams& params,
                                                  std::span<const std::size_t> s_values,
                                                  std::span<const double> r_values, std::size_t n,
                                                  std::size_t replicates, std::uint64_t seed,
                                                  const FitOptions& options = {}) {
  if (replicates < 2) throw domain_error("detrend_experiment: need at least 2 replicates");
  if (s_values.empty() || r_values.empty())
    throw domain_error("detrend_experiment: empty grid");

  DetrendExperimentResult result;
  for (std::size_t s : s_values) {
    for (double r : r_values) {
      detail::CellAccumulator detrended_cell, baseline_cell;
      const std::size_t degree = 2 * s + 3;
      for (std::size_t rep = 0; rep < replicates; ++rep) {
        const auto replicate = detail::compose_replicate(
            params, n, s, r, detail::replicate_seed(seed, params, n, s, r, rep), kDefaultBurnIn);
        const auto estimated_returns = diff_returns(detrend(replicate.series.xi, degree));
        detrended_cell.add(fit(estimated_returns, options));
        baseline_cell.add(fit(replicate.noise_returns, options));
      }
      const std::vector<std::pair<std::string, double>> cell{
          {"s", static_cast<double>(s)}, {"r", r}};
      result.detrended.push_back(detrended_cell.finish(cell));
      result.baseline.push_back(baseline_cell.finish(cell));
    }
  }
  return result;
}

/// Sweep of the GARCH coefficient at fixed persistence: for each beta0 the
/// ARCH coefficient is sum_const - beta0, and the compose / detrend / fit
/// pipeline runs as in detrend_experiment (same seed policy, so a sweep cell
/// with the same generating parameters reproduces a grid cell exactly).
inline std::vector<EnsembleStats> beta_sweep_experiment(
    std::span<const double> beta_values, double sum_const, double k_offset, std::size_t s,
    double r, std::size_t n, std::size_t replicates, std::uint64_t seed,
    const FitOptions& options = {}) {
  if (replicates < 2) throw domain_error("beta_sweep_experiment: need at least 2 replicates");
  if (beta_values.empty()) throw domain_error("beta_sweep_experiment: no beta values");
  for (double b : beta_values) {
    if (!(b > 0.0) || !(b < sum_const))
      throw domain_error("beta_sweep_experiment: each beta0 must lie in (0, sum_const)");
  }

  std::vector<EnsembleStats> out;
  out.reserve(beta_values.size());
  const std::size_t degree = 2 * s + 3;
  for (double beta0 : beta_values) {
    const GarchParams params = validate_params(k_offset, sum_const - beta0, beta0);
    detail::CellAccumulator cell;
    for (std::size_t rep = 0; rep < replicates; ++rep) {
      const auto replicate = detail::compose_replicate(
          params, n, s, r, detail::replicate_seed(seed, params, n, s, r, rep), kDefaultBurnIn);
      const auto estimated_returns = diff_returns(detrend(replicate.series.xi, degree));
      cell.add(fit(estimated_returns, options));
    }
    out.push_back(cell.finish({{"beta0", beta0}}));
  }
  return out;
}

}  // namespace garchlab
