#pragma once

// Minimum-degree changepoint test: null calibration, power and an empirical
// total-variation lower bound between the statistic's laws.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "pacd/descriptive.hpp"
#include "pacd/graph.hpp"
#include "pacd/grow.hpp"
#include "pacd/parallel.hpp"
#include "pacd/rng.hpp"
#include "pacd/schedule.hpp"

namespace pacd {

/// Number of vertices of degree exactly m.
template <class History>
std::uint64_t min_degree_statistic(const History& g, std::uint32_t m) {
  std::uint64_t count = 0;
  for (Vertex v = 1; v <= g.vertex_count(); ++v) count += g.degree(v) == m ? 1 : 0;
  return count;
}

/// The statistic on `reps` graphs grown under `schedule`; replicate r uses
/// seed derive_seed(seed, r).
inline std::vector<std::uint64_t> sample_min_degree(std::uint32_t n, std::uint32_t m, const DeltaSchedule& schedule,
                                                    std::size_t reps, std::uint64_t seed, unsigned threads = 1) {
  GrowthConfig base{n, m, schedule, seed};
  base.validate();
  return parallel_map(reps, threads, [&](std::size_t r) {
    GrowthConfig c = base;
    c.seed = derive_seed(seed, r);
    return min_degree_statistic(grow(c), m);
  });
}

/// Two-sided acceptance region [lo, hi]; values outside are rejected. When
/// lo > hi every value is rejected.
struct Thresholds {
  double alpha = 0.05;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::size_t reps = 0;

  bool rejects(std::uint64_t s) const noexcept { return s < lo || s > hi; }
};

inline constexpr std::size_t kMinCalibrationReps = 100;

/// Empirical alpha/2 and 1 - alpha/2 quantiles of a null sample.
inline Thresholds thresholds_from_null(std::vector<std::uint64_t> null_samples, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw invalid_config("alpha must lie in (0, 1)");
  if (null_samples.size() < kMinCalibrationReps) throw invalid_config("calibration needs at least 100 replicates");
  std::sort(null_samples.begin(), null_samples.end());
  const double r = static_cast<double>(null_samples.size());
  const auto lo_idx = static_cast<std::size_t>(std::floor(alpha / 2 * r));
  auto hi_idx = static_cast<std::size_t>(std::ceil((1 - alpha / 2) * r));
  hi_idx = hi_idx == 0 ? 0 : hi_idx - 1;
  return {alpha, null_samples[std::min(lo_idx, null_samples.size() - 1)], null_samples[hi_idx],
          null_samples.size()};
}

inline Thresholds calibrate_threshold(std::uint32_t n, std::uint32_t m, double delta, double alpha, std::size_t reps,
                                      std::uint64_t seed, unsigned threads = 1) {
  if (reps < kMinCalibrationReps) throw invalid_config("calibration needs at least 100 replicates");
  return thresholds_from_null(sample_min_degree(n, m, DeltaSchedule::constant(delta, n), reps, seed, threads), alpha);
}

struct PowerReport {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  double delta = 0.0;
  double delta_prime = 0.0;
  std::uint64_t tau = 0;
  std::uint64_t distance = 0;  // Delta = n - tau
  double gamma = 0.0;          // log Delta / log n; 0 when Delta <= 1
  Thresholds thresholds;
  std::size_t reps = 0;
  std::size_t rejections = 0;
  double power = 0.0;
  Interval ci;
};

inline double gamma_of(std::uint64_t n, std::uint64_t distance) {
  return distance <= 1 ? 0.0 : std::log(static_cast<double>(distance)) / std::log(static_cast<double>(n));
}

inline PowerReport power_from_samples(std::uint32_t n, std::uint32_t m, const DeltaSchedule& schedule,
                                      const Thresholds& thresholds, const std::vector<std::uint64_t>& samples) {
  if (samples.empty()) throw invalid_config("power needs at least one replicate");
  PowerReport out;
  out.n = n;
  out.m = m;
  out.delta = schedule.delta;
  out.delta_prime = schedule.delta_prime;
  out.tau = schedule.tau;
  out.distance = schedule.distance(n);
  out.gamma = gamma_of(n, out.distance);
  out.thresholds = thresholds;
  out.reps = samples.size();
  out.rejections = static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [&](std::uint64_t s) { return thresholds.rejects(s); }));
  out.power = static_cast<double>(out.rejections) / static_cast<double>(out.reps);
  out.ci = wilson_interval(out.rejections, out.reps);
  return out;
}

/// Fraction of alternative replicates the calibrated test rejects.
inline PowerReport estimate_power(std::uint32_t n, std::uint32_t m, double delta, double delta_prime,
                                  std::uint64_t tau, const Thresholds& thresholds, std::size_t reps,
                                  std::uint64_t seed, unsigned threads = 1) {
  const DeltaSchedule schedule = DeltaSchedule::change_at(delta, delta_prime, tau);
  return power_from_samples(n, m, schedule, thresholds, sample_min_degree(n, m, schedule, reps, seed, threads));
}

/// Kolmogorov distance between the two empirical CDFs, a lower bound on the
/// total variation distance between the statistic's laws.
template <class T>
double tv_lower_bound(std::vector<T> a, std::vector<T> b) {
  if (a.empty() || b.empty()) throw invalid_config("TV lower bound needs two nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double best = 0.0;
  while (i < a.size() || j < b.size()) {
    T x;
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      x = a[i];
    } else {
      x = b[j];
    }
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

}  // namespace pacd
