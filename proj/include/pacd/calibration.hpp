#pragma once

// Monte-Carlo calibration curve of the minimum-degree statistic against the
// change time, and the changepoint estimator that inverts it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "pacd/descriptive.hpp"
#include "pacd/detection.hpp"
#include "pacd/rng.hpp"
#include "pacd/schedule.hpp"

namespace pacd {

struct CalibrationCurve {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  double delta = 0.0;
  double delta_prime = 0.0;
  std::size_t reps = 0;
  std::vector<double> grid;  // tau / n, strictly increasing in (0, 1]
  std::vector<double> means;
  std::vector<double> sds;

  std::uint64_t tau_at(std::size_t k) const { return tau_for(n, grid.at(k)); }

  static std::uint64_t tau_for(std::uint32_t n, double fraction) {
    const auto tau = static_cast<std::uint64_t>(std::llround(fraction * n));
    return std::clamp<std::uint64_t>(tau, 2, n);
  }
};

namespace detail {

inline void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw invalid_config("calibration grid is empty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0.0 && grid[k] <= 1.0)) throw invalid_config("grid points must lie in (0, 1]");
    if (k > 0 && !(grid[k] > grid[k - 1])) throw invalid_config("grid must be strictly increasing");
  }
}

}  // namespace detail

/// Throws computation_error when consecutive means move against the overall
/// direction (set by the endpoints) by more than 3 standard errors.
inline void check_monotone(const CalibrationCurve& c) {
  const std::size_t k = c.means.size();
  if (k < 2) return;
  const double r = static_cast<double>(c.reps);
  auto se = [&](std::size_t a, std::size_t b) { return std::sqrt((c.sds[a] * c.sds[a] + c.sds[b] * c.sds[b]) / r); };
  const double direction = c.means.back() >= c.means.front() ? 1.0 : -1.0;
  for (std::size_t a = 0; a + 1 < k; ++a) {
    const double step = direction * (c.means[a + 1] - c.means[a]);
    if (step < -3.0 * se(a, a + 1)) {
      throw computation_error("calibration curve is not monotone in tau beyond noise; delta and delta' may be too close");
    }
  }
}

/// Mean and sd of the statistic under a change at tau = round(g n) for each
/// grid point g. Grid point k uses master seed derive_seed(seed, k).
inline CalibrationCurve build_calibration_curve(std::uint32_t n, std::uint32_t m, double delta, double delta_prime,
                                                const std::vector<double>& grid, std::size_t reps,
                                                std::uint64_t seed, unsigned threads = 1) {
  detail::check_grid(grid);
  if (reps < kMinCalibrationReps) throw invalid_config("calibration needs at least 100 replicates");
  CalibrationCurve c{n, m, delta, delta_prime, reps, grid, {}, {}};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto schedule = DeltaSchedule::change_at(delta, delta_prime, c.tau_at(k));
    const auto samples = sample_min_degree(n, m, schedule, reps, derive_seed(seed, k), threads);
    c.means.push_back(mean_of(samples));
    c.sds.push_back(sd_of(samples));
  }
  check_monotone(c);
  return c;
}

/// Piecewise-linear inverse of the mean curve at `observed`. Segments are
/// scanned from the largest tau down, so ties go to the later change.
/// Values outside the curve's range clamp to the extreme grid point.
inline double invert_curve(const CalibrationCurve& c, double observed) {
  const std::size_t k = c.means.size();
  if (k == 0 || c.grid.size() != k) throw invalid_config("malformed calibration curve");
  std::vector<double> taus(k);
  for (std::size_t a = 0; a < k; ++a) taus[a] = static_cast<double>(c.tau_at(a));
  for (std::size_t a = k; a-- > 0;) {
    if (c.means[a] == observed) return taus[a];
    if (a == 0) break;
    const double y0 = c.means[a - 1];
    const double y1 = c.means[a];
    if ((observed - y0) * (observed - y1) < 0.0) {
      return taus[a - 1] + (observed - y0) / (y1 - y0) * (taus[a] - taus[a - 1]);
    }
  }
  // Outside [min mean, max mean]: the nearest extreme, later tau on ties.
  const bool above = observed > *std::max_element(c.means.begin(), c.means.end());
  std::size_t best = k - 1;
  for (std::size_t a = k; a-- > 0;) {
    if (above ? c.means[a] > c.means[best] : c.means[a] < c.means[best]) best = a;
  }
  return taus[best];
}

/// tau-hat for `g`, clamped to [min grid tau, n].
template <class History>
std::uint64_t estimate_changepoint(const History& g, const CalibrationCurve& curve) {
  if (g.vertex_count() != curve.n || g.edges_per_vertex() != curve.m) {
    throw computation_error("calibration curve was built for different (n, m)");
  }
  const double observed = static_cast<double>(min_degree_statistic(g, curve.m));
  const double tau = invert_curve(curve, observed);
  const auto lo = static_cast<double>(curve.tau_at(0));
  return static_cast<std::uint64_t>(std::llround(std::clamp(tau, lo, static_cast<double>(curve.n))));
}

}  // namespace pacd
