#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "garchlab/errors.hpp"

namespace garchlab {

inline constexpr std::size_t kMinPartLength = 50;

/// Description of a piecewise half-cosine trend: s monotonic parts over n
/// samples. `breakpoints` holds s+1 boundary offsets 0 = N_1 < ... < N_{s+1} = n;
/// part p (1-based) covers samples N_p+1 .. N_{p+1}, so its sample count is
/// N_{p+1} - N_p (at least kMinPartLength). Each part carries an amplitude in
/// (0, 1); directions alternate starting from first_sign.
struct TrendSpec {
  std::size_t n;
  std::vector<std::size_t> breakpoints;
  std::vector<double> amplitudes;
  int first_sign;

  TrendSpec(std::size_t n_, std::vector<std::size_t> breakpoints_,
            std::vector<double> amplitudes_, int first_sign_ = -1)
      : n(n_),
        breakpoints(std::move(breakpoints_)),
        amplitudes(std::move(amplitudes_)),
        first_sign(first_sign_) {
    if (first_sign != 1 && first_sign != -1)
      throw domain_error("TrendSpec: first_sign must be +1 or -1");
    if (amplitudes.empty() || breakpoints.size() != amplitudes.size() + 1)
      throw domain_error("TrendSpec: need s >= 1 parts and s + 1 breakpoints");
    if (breakpoints.front() != 0 || breakpoints.back() != n)
      throw domain_error("TrendSpec: breakpoints must start at 0 and end at n");
    for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
      if (breakpoints[p + 1] <= breakpoints[p] ||
          breakpoints[p + 1] - breakpoints[p] < kMinPartLength)
        throw domain_error("TrendSpec: every part needs at least 50 samples");
    }
    for (double a : amplitudes) {
      if (!(a > 0.0) || !(a < 1.0))
        throw domain_error("TrendSpec: amplitudes must lie in (0, 1)");
    }
  }

  [[nodiscard]] std::size_t parts() const noexcept { return amplitudes.size(); }

  [[nodiscard]] std::size_t part_length(std::size_t p) const {
    return breakpoints[p + 1] - breakpoints[p];
  }

  [[nodiscard]] int part_sign(std::size_t p) const noexcept {
    return p % 2 == 0 ? first_sign : -first_sign;
  }
};

/// Evaluated trend values together with the spec that generated them.
struct TrendSeries {
  std::vector<double> values;
  TrendSpec spec;
};

/// Draws a TrendSpec with s parts over n samples: part boundaries uniform
/// over all placements whose parts have at least kMinPartLength samples
/// (sampled directly via the stars-and-bars bijection), amplitudes i.i.d.
/// uniform on (0, 1). Deterministic in the seed.
inline TrendSpec sample_spec(std::size_t n, std::size_t s, std::uint64_t seed) {
  if (s < 1) throw domain_error("sample_spec: s must be >= 1");
  if (n < kMinPartLength * s)
    throw domain_error("sample_spec: n must be at least 50 * s");

  std::mt19937_64 rng(seed);

  // Placements with all gaps >= 50 correspond bijectively to (s-1)-subsets
  // of {0, ..., slack + s - 2}, slack = n - 50 s. Floyd's algorithm samples
  // the subset uniformly.
  const std::size_t slack = n - kMinPartLength * s;
  std::vector<std::size_t> chosen;
  if (s >= 2) {
    const std::size_t m = slack + s - 1;
    for (std::size_t j = m - (s - 1); j < m; ++j) {
      std::uniform_int_distribution<std::size_t> pick(0, j);
      const std::size_t t = pick(rng);
      if (std::find(chosen.begin(), chosen.end(), t) != chosen.end())
        chosen.push_back(j);
      else
        chosen.push_back(t);
    }
    std::sort(chosen.begin(), chosen.end());
  }

  std::vector<std::size_t> breakpoints(s + 1);
  breakpoints[0] = 0;
  for (std::size_t p = 1; p < s; ++p)
    breakpoints[p] = kMinPartLength * p + (chosen[p - 1] - (p - 1));
  breakpoints[s] = n;

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> amplitudes(s);
  for (double& a : amplitudes) {
    do {
      a = unit(rng);
    } while (a == 0.0);
  }

  return TrendSpec{n, std::move(breakpoints), std::move(amplitudes)};
}

/// Evaluates the trend recurrence. Within part p of sample count L, sample
/// j = 1..L sits at u = (j-1)/(L-1) and takes the value
///   level_p + sign_p * a_p * (1 - cos(pi * u)),
/// which runs monotonically from level_p to level_p + 2 a_p sign_p. The
/// first sample of the whole trend is exactly 0.
inline TrendSeries eval_trend(const TrendSpec& spec) {
  std::vector<double> values(spec.n);
  double level = 0.0;
  for (std::size_t p = 0; p < spec.parts(); ++p) {
    const std::size_t length = spec.part_length(p);
    const double amp = spec.amplitudes[p];
    const double sign = static_cast<double>(spec.part_sign(p));
    double* out = values.data() + spec.breakpoints[p];
    for (std::size_t j = 0; j < length; ++j) {
      const double u = static_cast<double>(j) / static_cast<double>(length - 1);
      out[j] = level + sign * amp * (1.0 - std::cos(std::numbers::pi * u));
    }
    level += sign * (2.0 * amp);
  }
  return TrendSeries{std::move(values), spec};
}

/// Range of the trend divided by range of the noise path.
inline double amplitude_ratio(std::span<const double> trend, std::span<const double> noise_path) {
  if (trend.size() != noise_path.size())
    throw domain_error("amplitude_ratio: length mismatch");
  if (trend.empty()) throw domain_error("amplitude_ratio: empty input");
  const auto [f_lo, f_hi] = std::minmax_element(trend.begin(), trend.end());
  const auto [y_lo, y_hi] = std::minmax_element(noise_path.begin(), noise_path.end());
  const double noise_range = *y_hi - *y_lo;
  if (!(noise_range > 0.0)) throw domain_error("amplitude_ratio: noise path has zero range");
  return (*f_hi - *f_lo) / noise_range;
}

/// Rescales the trend so that amplitude_ratio(result, noise_path) equals
/// r_target to floating-point precision. Only the trend is touched; the noise
/// is left alone.
inline TrendSeries scale_to_ratio(const TrendSeries& trend, std::span<const double> noise_path,
                                  double r_target) {
  if (!(r_target > 0.0) || !std::isfinite(r_target))
    throw domain_error("scale_to_ratio: r_target must be positive and finite");
  const double current = amplitude_ratio(trend.values, noise_path);
  if (!(current > 0.0)) throw domain_error("scale_to_ratio: trend has zero range");
  const double factor = r_target / current;
  TrendSeries scaled{trend.values, trend.spec};
  for (double& v : scaled.values) v *= factor;
  return scaled;
}

}  // namespace garchlab
