#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pacd {

/// Vertices are identified by arrival index: v1, v2 form the initial graph
/// and v_t arrives at time t.
using Vertex = std::uint32_t;

/// Raised when a configuration or argument violates a documented range.
class invalid_config : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot proceed on otherwise valid input
/// (enumeration caps, zero-probability snapshots, curve mismatches, ...).
class computation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Attachment shift trajectory: delta(t) = delta for t <= tau, delta_prime
/// afterwards. tau == n encodes "no change".
struct DeltaSchedule {
  double delta = 0.0;
  double delta_prime = 0.0;
  std::uint64_t tau = 0;

  static DeltaSchedule constant(double delta, std::uint64_t n) { return {delta, delta, n}; }
  static DeltaSchedule change_at(double delta, double delta_prime, std::uint64_t tau) {
    return {delta, delta_prime, tau};
  }

  double at(std::uint64_t t) const noexcept { return t <= tau ? delta : delta_prime; }

  /// Delta = n - tau, the number of arrivals after the change.
  std::uint64_t distance(std::uint64_t n) const noexcept { return n >= tau ? n - tau : 0; }

  void validate(std::uint64_t n, std::uint32_t m) const {
    const double floor = -static_cast<double>(m);
    if (!(delta > floor) || !std::isfinite(delta)) {
      throw invalid_config("delta must be finite and > -m");
    }
    if (tau < n && (!(delta_prime > floor) || !std::isfinite(delta_prime))) {
      throw invalid_config("delta_prime must be finite and > -m");
    }
    if (tau < 2 || tau > n) {
      throw invalid_config("tau must lie in [2, n]");
    }
  }

  friend bool operator==(const DeltaSchedule&, const DeltaSchedule&) = default;
};

struct GrowthConfig {
  std::uint32_t n = 2;
  std::uint32_t m = 1;
  DeltaSchedule schedule{0.0, 0.0, 2};
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 2) throw invalid_config("n must be >= 2");
    if (m < 1) throw invalid_config("m must be >= 1");
    schedule.validate(n, m);
  }
};

/// ceil(max(-delta, 0)): the number of degree units per vertex that the
/// edge branch of the randomness encoding must leave out.
inline std::uint32_t kappa(double delta) noexcept {
  return delta >= 0.0 ? 0U : static_cast<std::uint32_t>(std::ceil(-delta));
}

/// tau = n - ceil(n^gamma), clamped to [2, n].
inline std::uint64_t tau_from_gamma(std::uint64_t n, double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0)) throw invalid_config("gamma must lie in (0, 1)");
  // Guard against pow() landing one ulp above an exact integer.
  const double power = std::pow(static_cast<double>(n), gamma);
  const auto shift = static_cast<std::uint64_t>(std::ceil(power * (1.0 - 1e-12)));
  if (shift + 2 > n) return 2;
  return n - shift;
}

}  // namespace pacd
