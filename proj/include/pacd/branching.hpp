#pragma once

// Sub-critical branching tree that dominates late components, and the BFS
// exploration of a component it is compared against.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "pacd/components.hpp"
#include "pacd/rng.hpp"
#include "pacd/schedule.hpp"

namespace pacd {

/// Offspring X = Y + Z with Y ~ Binom(m, 2N/n) and Z the number of failures
/// before the first success, success probability 1 - 2mN/n.
struct OffspringLaw {
  std::uint32_t m = 1;
  std::uint64_t late = 0;  // N
  std::uint64_t n = 2;

  OffspringLaw(std::uint32_t m_, std::uint64_t late_, std::uint64_t n_) : m(m_), late(late_), n(n_) {
    if (m < 1 || n < 1) throw invalid_config("offspring law needs m >= 1 and n >= 1");
    if (!(geometric_ratio() < 1.0)) throw invalid_config("sub-criticality requires 2mN/n < 1");
  }

  double binomial_p() const noexcept { return 2.0 * static_cast<double>(late) / static_cast<double>(n); }
  double geometric_ratio() const noexcept { return static_cast<double>(m) * binomial_p(); }

  double mean() const noexcept {
    const double r = geometric_ratio();
    return static_cast<double>(m) * binomial_p() + r / (1.0 - r);
  }

  template <class Rng>
  std::uint64_t sample(Rng& rng) const {
    std::uint64_t x = 0;
    const double p = binomial_p();
    for (std::uint32_t k = 0; k < m; ++k) x += bernoulli(rng, p) ? 1 : 0;
    const double r = geometric_ratio();
    if (r > 0.0) {
      // P[Z >= k] = r^k, inverted with U in (0, 1].
      const double u = 1.0 - uniform01(rng);
      x += static_cast<std::uint64_t>(std::floor(std::log(u) / std::log(r)));
    }
    return x;
  }
};

struct TreeSize {
  std::uint64_t size = 1;
  bool overflow = false;  // true: total progeny exceeded the cap; `size` is then cap + 1
};

inline constexpr std::uint64_t kDefaultTreeCap = 10000;

/// Total progeny of one tree, truncated at `cap`.
inline TreeSize sample_tree_size(const OffspringLaw& law, std::uint64_t seed, std::uint64_t cap = kDefaultTreeCap) {
  if (cap < 1) throw invalid_config("cap must be >= 1");
  SplitMix64 rng(seed);
  std::uint64_t size = 1;
  std::uint64_t pending = 1;
  while (pending > 0) {
    --pending;
    const std::uint64_t children = law.sample(rng);
    size += children;
    pending += children;
    if (size > cap) return {cap + 1, true};
  }
  return {size, false};
}

/// 2 e^{-k+1}, an upper bound on P[|T| >= k].
inline double tail_bound(std::uint64_t k) {
  if (k < 1) throw invalid_config("k must be >= 1");
  return 2.0 * std::exp(1.0 - static_cast<double>(k));
}

/// Generation sizes of the BFS spanning tree of C(v) rooted at v.
struct ExplorationTrace {
  std::vector<std::uint64_t> generations;

  std::uint64_t total() const noexcept {
    std::uint64_t s = 0;
    for (auto g : generations) s += g;
    return s;
  }
};

/// BFS over the late-induced subgraph. Each leaf claims its unvisited late
/// neighbours in turn, leaves taken in BFS order and neighbours in
/// ascending arrival order.
template <class History>
ExplorationTrace explore_component(const History& g, Vertex v, std::uint32_t prefix_vertices) {
  const std::uint32_t n = g.vertex_count();
  const std::uint32_t m = g.edges_per_vertex();
  if (v <= prefix_vertices || v > n) throw invalid_config("exploration must start at a late vertex");
  const std::uint32_t late = n - prefix_vertices;
  auto local = [&](Vertex u) { return u - prefix_vertices - 1; };

  std::vector<std::vector<Vertex>> adjacent(late);
  for (Vertex u = prefix_vertices + 1; u <= n; ++u) {
    for (std::uint32_t i = 1; i <= m; ++i) {
      const Vertex w = g.target(u, i);
      if (w <= prefix_vertices) continue;
      adjacent[local(u)].push_back(w);
      adjacent[local(w)].push_back(u);
    }
  }

  std::vector<char> seen(late, 0);
  seen[local(v)] = 1;
  ExplorationTrace trace;
  std::vector<Vertex> leaves{v};
  while (!leaves.empty()) {
    trace.generations.push_back(leaves.size());
    std::vector<Vertex> next;
    for (Vertex leaf : leaves) {
      auto& nbrs = adjacent[local(leaf)];
      std::sort(nbrs.begin(), nbrs.end());
      for (Vertex w : nbrs) {
        if (seen[local(w)]) continue;
        seen[local(w)] = 1;
        next.push_back(w);
      }
    }
    leaves = std::move(next);
  }
  return trace;
}

}  // namespace pacd
