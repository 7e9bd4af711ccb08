#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <thread>
#include <vector>

namespace diffest {

inline constexpr double kPi = std::numbers::pi;

inline double sqr(double x) { return x * x; }

/// Surface area of the unit sphere S^{d-1} in R^d.
inline double unit_sphere_area(int d) {
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

/// Volume of the unit ball in R^d.
inline double unit_ball_volume(int d) { return unit_sphere_area(d) / d; }

inline double norm2_sq(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

inline double norm2(std::span<const double> x) { return std::sqrt(norm2_sq(x)); }

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double median_of_sorted(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  if (n == 0) return 0.0;
  return (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

inline double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return median_of_sorted(values);
}

/// q-quantile of a sorted sample by linear interpolation of order statistics.
inline double quantile_of_sorted(std::span<const double> sorted, double q) {
  const std::size_t n = sorted.size();
  if (n == 0) return 0.0;
  if (n == 1) return sorted[0];
  const double pos = q * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, n - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

inline double mean(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return values.empty() ? 0.0 : s / static_cast<double>(values.size());
}

inline double sample_stddev(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double m = mean(values);
  double s = 0.0;
  for (double v : values) s += sqr(v - m);
  return std::sqrt(s / static_cast<double>(n - 1));
}

/// Static partition of [0, count) over `workers` threads. Each worker owns a
/// contiguous chunk; chunks are merged implicitly by index order, so results
/// are reproducible at a fixed worker count.
inline void parallel_for(std::size_t count, int workers,
                         const std::function<void(std::size_t, std::size_t, int)>& body) {
  if (workers < 1) workers = 1;
  const auto w = static_cast<std::size_t>(workers);
  if (w <= 1 || count < 2 * w) {
    body(0, count, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(w);
  const std::size_t chunk = (count + w - 1) / w;
  for (std::size_t t = 0; t < w; ++t) {
    const std::size_t begin = std::min(t * chunk, count);
    const std::size_t end = std::min(begin + chunk, count);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end, t] { body(begin, end, static_cast<int>(t)); });
  }
  for (auto& th : pool) th.join();
}

inline int default_workers() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace diffest
