#pragma once

// Connected components of the subgraph induced by late arrivals
// (vertices M+1..n) and counts of their admissible arrival orders.
//
// An order on a component is admissible when every vertex has all m of its
// attachment targets in V_M or earlier in the order. Orientation of every
// late-late edge is forced by the graph (a balanced re-orientation would
// need a directed cycle in the true arrival order), so the admissible
// orders are exactly the linear extensions of the recorded precedence DAG.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pacd/schedule.hpp"

namespace pacd {

using OrderCountInt = unsigned __int128;

/// Largest component admissible_order_counts accepts.
inline constexpr std::size_t kMaxOrderedComponent = 24;

struct Component {
  std::vector<Vertex> vertices;                       // ascending arrival index
  std::vector<std::pair<Vertex, Vertex>> precedence;  // (u, v): v attached to late u; parallel edges collapsed
  std::vector<std::uint32_t> anchor_edges;            // per vertex: attachments into V_M

  std::size_t size() const noexcept { return vertices.size(); }

  std::size_t local_index(Vertex v) const {
    const auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) throw invalid_config("vertex not in component");
    return static_cast<std::size_t>(it - vertices.begin());
  }
};

/// Partition of the late vertices into components, stored contiguously.
class ComponentForest {
 public:
  ComponentForest() = default;
  ComponentForest(std::uint32_t prefix_vertices, std::uint32_t n, std::vector<Vertex> members,
                  std::vector<std::uint32_t> offsets, std::vector<std::uint32_t> component_of)
      : prefix_(prefix_vertices),
        n_(n),
        members_(std::move(members)),
        offsets_(std::move(offsets)),
        component_of_(std::move(component_of)) {}

  std::uint32_t prefix_vertices() const noexcept { return prefix_; }
  std::uint32_t vertex_count() const noexcept { return n_; }
  std::uint32_t late_count() const noexcept { return n_ - prefix_; }
  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }

  std::span<const Vertex> members(std::size_t k) const noexcept {
    return std::span<const Vertex>(members_).subspan(offsets_[k], offsets_[k + 1] - offsets_[k]);
  }
  std::size_t component_index(Vertex v) const { return component_of_.at(v - prefix_ - 1); }
  std::size_t component_size(Vertex v) const { return members(component_index(v)).size(); }

 private:
  std::uint32_t prefix_ = 0;
  std::uint32_t n_ = 0;
  std::vector<Vertex> members_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<std::uint32_t> component_of_;
};

template <class History>
ComponentForest late_components(const History& g, std::uint32_t prefix_vertices) {
  const std::uint32_t n = g.vertex_count();
  const std::uint32_t m = g.edges_per_vertex();
  if (prefix_vertices < 2 || prefix_vertices > n) throw invalid_config("require 2 <= M <= n");
  const std::uint32_t late = n - prefix_vertices;

  std::vector<std::uint32_t> parent(late);
  std::vector<std::uint32_t> weight(late, 1);
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (Vertex v = prefix_vertices + 1; v <= n; ++v) {
    for (std::uint32_t i = 1; i <= m; ++i) {
      const Vertex w = g.target(v, i);
      if (w <= prefix_vertices) continue;
      std::uint32_t a = find(v - prefix_vertices - 1);
      std::uint32_t b = find(w - prefix_vertices - 1);
      if (a == b) continue;
      if (weight[a] < weight[b]) std::swap(a, b);
      parent[b] = a;
      weight[a] += weight[b];
    }
  }

  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(late, unset);
  std::vector<std::uint32_t> component_of(late);
  std::vector<std::uint32_t> sizes;
  for (std::uint32_t x = 0; x < late; ++x) {
    const std::uint32_t r = find(x);
    if (label[r] == unset) {
      label[r] = static_cast<std::uint32_t>(sizes.size());
      sizes.push_back(0);
    }
    component_of[x] = label[r];
    ++sizes[label[r]];
  }
  std::vector<std::uint32_t> offsets(sizes.size() + 1, 0);
  for (std::size_t k = 0; k < sizes.size(); ++k) offsets[k + 1] = offsets[k] + sizes[k];
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  std::vector<Vertex> members(late);
  for (std::uint32_t x = 0; x < late; ++x) members[cursor[component_of[x]]++] = prefix_vertices + 1 + x;
  return ComponentForest(prefix_vertices, n, std::move(members), std::move(offsets), std::move(component_of));
}

/// Materializes component k with its precedence edges and anchor counts.
template <class History>
Component extract_component(const History& g, const ComponentForest& forest, std::size_t k) {
  const std::uint32_t m = g.edges_per_vertex();
  const Vertex boundary = forest.prefix_vertices();
  Component c;
  const auto members = forest.members(k);
  c.vertices.assign(members.begin(), members.end());
  c.anchor_edges.assign(c.vertices.size(), 0);
  for (std::size_t a = 0; a < c.vertices.size(); ++a) {
    const Vertex v = c.vertices[a];
    for (std::uint32_t i = 1; i <= m; ++i) {
      const Vertex w = g.target(v, i);
      if (w <= boundary) {
        ++c.anchor_edges[a];
      } else {
        c.precedence.emplace_back(w, v);
      }
    }
  }
  std::sort(c.precedence.begin(), c.precedence.end());
  c.precedence.erase(std::unique(c.precedence.begin(), c.precedence.end()), c.precedence.end());
  return c;
}

/// Number of admissible orders, in total and with each vertex last.
struct OrderCount {
  OrderCountInt total = 0;
  std::vector<OrderCountInt> maximal;  // aligned with Component::vertices
};

namespace detail {

/// Linear extensions of the downset `set`, counted by the vertex placed
/// last. `succ[v]` is the mask of v's successors.
class ExtensionCounter {
 public:
  explicit ExtensionCounter(std::vector<std::uint32_t> succ) : succ_(std::move(succ)) {
    if (succ_.size() <= 16) dense_.assign(std::size_t{1} << succ_.size(), kUnknown);
  }

  OrderCountInt count(std::uint32_t set) {
    if ((set & (set - 1)) == 0) return 1;  // empty or singleton
    if (!dense_.empty()) {
      OrderCountInt& slot = dense_[set];
      if (slot == kUnknown) slot = expand(set);
      return slot;
    }
    if (auto it = sparse_.find(set); it != sparse_.end()) return it->second;
    const OrderCountInt value = expand(set);
    sparse_.emplace(set, value);
    return value;
  }

 private:
  static constexpr OrderCountInt kUnknown = ~OrderCountInt{0};

  OrderCountInt expand(std::uint32_t set) {
    OrderCountInt total = 0;
    for (std::uint32_t rest = set; rest != 0; rest &= rest - 1) {
      const auto v = static_cast<std::uint32_t>(std::countr_zero(rest));
      if ((succ_[v] & set) == 0) total += count(set & ~(1U << v));
    }
    return total;
  }

  std::vector<std::uint32_t> succ_;
  std::vector<OrderCountInt> dense_;
  std::unordered_map<std::uint32_t, OrderCountInt> sparse_;
};

}  // namespace detail

inline OrderCount admissible_order_counts(const Component& c) {
  const std::size_t k = c.size();
  if (k == 0) throw invalid_config("empty component");
  if (k > kMaxOrderedComponent) {
    throw computation_error("component of size " + std::to_string(k) + " exceeds the order-counting cap of " +
                            std::to_string(kMaxOrderedComponent));
  }
  std::vector<std::uint32_t> succ(k, 0);
  for (const auto& [u, v] : c.precedence) succ[c.local_index(u)] |= 1U << c.local_index(v);
  detail::ExtensionCounter counter(succ);
  const std::uint32_t full = k == 32 ? ~0U : (1U << k) - 1;
  OrderCount out;
  out.maximal.assign(k, 0);
  for (std::size_t v = 0; v < k; ++v) {
    if (succ[v] == 0) out.maximal[v] = counter.count(full & ~(1U << v));
  }
  out.total = counter.count(full);
  return out;
}

}  // namespace pacd
