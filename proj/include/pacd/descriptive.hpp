#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "pacd/schedule.hpp"

namespace pacd {

template <class T>
double mean_of(std::span<const T> xs) {
  if (xs.empty()) throw invalid_config("mean of an empty sample");
  double s = 0.0;
  for (const T& x : xs) s += static_cast<double>(x);
  return s / static_cast<double>(xs.size());
}

/// Unbiased sample variance (n - 1 denominator); 0 for a single point.
template <class T>
double variance_of(std::span<const T> xs) {
  if (xs.size() < 2) return 0.0;
  const double mu = mean_of(xs);
  double s = 0.0;
  for (const T& x : xs) {
    const double d = static_cast<double>(x) - mu;
    s += d * d;
  }
  return s / static_cast<double>(xs.size() - 1);
}

template <class T>
double sd_of(std::span<const T> xs) {
  return std::sqrt(variance_of(xs));
}

template <class T>
double mean_of(const std::vector<T>& xs) {
  return mean_of(std::span<const T>(xs));
}
template <class T>
double variance_of(const std::vector<T>& xs) {
  return variance_of(std::span<const T>(xs));
}
template <class T>
double sd_of(const std::vector<T>& xs) {
  return sd_of(std::span<const T>(xs));
}

/// Median (average of the middle pair for even sizes).
template <class T>
double median_of(std::vector<T> xs) {
  if (xs.empty()) throw invalid_config("median of an empty sample");
  const std::size_t mid = xs.size() / 2;
  std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(mid), xs.end());
  const double upper = static_cast<double>(xs[mid]);
  if (xs.size() % 2 == 1) return upper;
  const double lower = static_cast<double>(*std::max_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(mid)));
  return 0.5 * (lower + upper);
}

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for a binomial proportion.
inline Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ95) {
  if (trials == 0) throw invalid_config("Wilson interval needs at least one trial");
  const double nn = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
  const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
  const double lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return {lo, hi};
}

/// Least-squares slope of y on x.
inline double ols_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw invalid_config("slope needs two or more paired points");
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  if (sxx == 0.0) throw invalid_config("slope undefined for constant x");
  return sxy / sxx;
}

/// Slope of log y on log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx(x.size());
  std::vector<double> ly(y.size());
  std::transform(x.begin(), x.end(), lx.begin(), [](double v) { return std::log(v); });
  std::transform(y.begin(), y.end(), ly.begin(), [](double v) { return std::log(v); });
  return ols_slope(lx, ly);
}

/// Empirical P[X >= k].
template <class T>
double ccdf_at(std::span<const T> xs, double k) {
  if (xs.empty()) throw invalid_config("CCDF of an empty sample");
  const auto hits = std::count_if(xs.begin(), xs.end(), [k](const T& x) { return static_cast<double>(x) >= k; });
  return static_cast<double>(hits) / static_cast<double>(xs.size());
}

/// Standard error of an empirical proportion.
inline double proportion_se(double p, std::size_t n) {
  return std::sqrt(std::max(0.0, p * (1 - p)) / static_cast<double>(n));
}

}  // namespace pacd
