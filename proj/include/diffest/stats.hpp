#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "diffest/common.hpp"
#include "diffest/errors.hpp"

namespace diffest::stats {

/// Bernstein-form two-sided tail of a chi-squared sample mean:
///     P(|S/dof - 1| > gamma) <= 2 exp(-dof gamma^2 / 8).
/// gamma = 0 gives the vacuous bound 2; gamma must stay below 1.
inline double chi2_tail(std::int64_t dof, double gamma) {
  if (dof < 1) throw ConfigError("chi2_tail requires dof >= 1");
  if (gamma < 0.0 || gamma >= 1.0) {
    throw ConfigError("chi2_tail requires gamma in [0, 1)");
  }
  return 2.0 * std::exp(-static_cast<double>(dof) * gamma * gamma / 8.0);
}

inline double chi2_cdf(double x, double dof) {
  if (x <= 0.0) return 0.0;
  return boost::math::cdf(boost::math::chi_squared(dof), x);
}

/// One-sample Kolmogorov-Smirnov statistic against a reference CDF.
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
  if (samples.empty()) throw ConfigError("ks_statistic requires samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

/// Asymptotic Kolmogorov p-value: P(sqrt(n) D > c) = 2 sum (-1)^{k-1} e^{-2k^2c^2}.
inline double ks_p_value(double statistic, std::size_t n) {
  const double c = statistic * std::sqrt(static_cast<double>(n));
  if (c <= 0.0) return 1.0;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * std::exp(-2.0 * sqr(static_cast<double>(k) * c));
    p += (k % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(p, 0.0, 1.0);
}

/// Outcome of comparing an empirical exceedance frequency against a
/// theoretical probability bound, with a 3-sigma Monte Carlo allowance.
struct ConcentrationCheck {
  std::int64_t sample_count = 0;
  double threshold = 0.0;
  double empirical_frequency = 0.0;
  double theoretical_bound = 0.0;
  bool passed = false;
};

inline ConcentrationCheck make_concentration_check(std::int64_t sample_count, double threshold,
                                                   double empirical_frequency,
                                                   double theoretical_bound) {
  ConcentrationCheck check;
  check.sample_count = sample_count;
  check.threshold = threshold;
  check.empirical_frequency = empirical_frequency;
  check.theoretical_bound = theoretical_bound;
  check.passed = empirical_frequency <=
                 theoretical_bound +
                     3.0 * std::sqrt(theoretical_bound / static_cast<double>(sample_count));
  return check;
}

/// Sample-mean concentration check: with N centered samples of variance proxy
/// g, the event |mean| >= C_alpha sqrt(g) log(N) / sqrt(N) should occur with
/// probability at most N^{-alpha}. One call scores one realization; average
/// `empirical_frequency` across replicates via merge_checks for a frequency.
inline ConcentrationCheck sample_mean_concentration(std::span<const double> samples,
                                                    double variance_proxy, double c_alpha = 1.0,
                                                    double alpha = 1.0) {
  if (samples.empty()) throw ConfigError("sample_mean_concentration requires samples");
  if (variance_proxy < 0.0) throw ConfigError("variance proxy must be nonnegative");
  const double n = static_cast<double>(samples.size());
  const double threshold = c_alpha * std::sqrt(variance_proxy) * std::log(n) / std::sqrt(n);
  const double bound = std::pow(n, -alpha);
  const double exceeded = std::abs(mean(samples)) >= threshold ? 1.0 : 0.0;
  return make_concentration_check(1, threshold, exceeded, bound);
}

inline ConcentrationCheck merge_checks(std::span<const ConcentrationCheck> checks) {
  if (checks.empty()) throw ConfigError("merge_checks requires at least one check");
  double freq = 0.0;
  std::int64_t count = 0;
  for (const auto& c : checks) {
    freq += c.empirical_frequency * static_cast<double>(c.sample_count);
    count += c.sample_count;
  }
  return make_concentration_check(count, checks[0].threshold,
                                  freq / static_cast<double>(count),
                                  checks[0].theoretical_bound);
}

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares on (log x, log y); the standard way to read a
/// power-law exponent off a sweep.
inline RateFit fit_rate(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw ConfigError("fit_rate requires matching lengths");
  if (xs.size() < 3) throw ConfigError("fit_rate requires at least 3 points");
  const auto n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw ConfigError("fit_rate requires strictly positive values");
    }
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double cov = sxy - sx * sy / n;
  const double var_x = sxx - sx * sx / n;
  const double var_y = syy - sy * sy / n;
  if (var_x <= 0.0) throw ConfigError("fit_rate requires distinct x values");
  RateFit fit;
  fit.slope = cov / var_x;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.r_squared = var_y <= 0.0 ? 1.0 : std::clamp(cov * cov / (var_x * var_y), 0.0, 1.0);
  return fit;
}

}  // namespace diffest::stats
