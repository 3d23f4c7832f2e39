#pragma once

#include <cstdint>
#include <vector>

#include "pacd/encoding.hpp"
#include "pacd/graph.hpp"
#include "pacd/rng.hpp"
#include "pacd/schedule.hpp"

namespace pacd {

/// Samples a full history under `config`. Each step costs O(1): the edge
/// branch indexes the implicit endpoint array laid out by slot_source, and
/// the uniform branch picks an arrival index directly.
inline EvolvingGraph grow(const GrowthConfig& config) {
  config.validate();
  const std::uint32_t n = config.n;
  const std::uint32_t m = config.m;
  std::vector<Vertex> targets;
  targets.reserve(static_cast<std::size_t>(m) * (n - 2));
  SplitMix64 rng(config.seed);
  auto lookup = [&](std::uint32_t tp, std::uint32_t ip) { return targets[step_index(tp, ip, m)]; };
  for (std::uint32_t t = 3; t <= n; ++t) {
    const double delta_t = config.schedule.at(t);
    for (std::uint32_t i = 1; i <= m; ++i) targets.push_back(sample_step(t, i, m, delta_t, rng, lookup));
  }
  return EvolvingGraph(n, m, std::move(targets), config.schedule, config.seed);
}

}  // namespace pacd
