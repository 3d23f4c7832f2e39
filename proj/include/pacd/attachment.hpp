#pragma once

#include <cstdint>
#include <vector>

#include "pacd/graph.hpp"
#include "pacd/rational.hpp"

namespace pacd {

/// Sum over V_{t-1} of (degree + delta) in G_{t,i-1}:
/// (t-1) delta + 2m(t-2) + i - 1.
template <class Scalar>
Scalar attachment_normalizer(std::uint32_t t, std::uint32_t i, std::uint32_t m, const Scalar& delta) {
  return Scalar(t - 1) * delta + Scalar(2ULL * m * (t - 2) + i - 1);
}

/// Law of v_{t,i} given G_{t,i-1}: entry v-1 is
/// (deg(v) + delta) / ((t-1) delta + 2m(t-2) + i - 1) for v in V_{t-1}.
/// `state` must sit exactly before step (t, i).
template <class Scalar>
std::vector<Scalar> attachment_distribution(const GrowthState& state, const Scalar& delta) {
  const std::uint32_t t = state.next_t();
  const std::uint32_t i = state.next_i();
  const std::uint32_t m = state.m();
  if (!(delta > Scalar(-static_cast<std::int64_t>(m)))) throw invalid_config("delta must be > -m");
  const Scalar denom = attachment_normalizer<Scalar>(t, i, m, delta);
  std::vector<Scalar> law;
  law.reserve(t - 1);
  for (Vertex v = 1; v < t; ++v) law.push_back((Scalar(state.degree(v)) + delta) / denom);
  return law;
}

/// Same law for step (t, i) of a recorded history, replaying its prefix.
template <class Scalar>
std::vector<Scalar> attachment_distribution(const EvolvingGraph& history, std::uint32_t t, std::uint32_t i,
                                            const Scalar& delta) {
  return attachment_distribution<Scalar>(history.state_before(t, i), delta);
}

}  // namespace pacd
