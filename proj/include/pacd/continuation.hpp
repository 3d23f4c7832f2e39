#pragma once

// Repeated conditional sampling on top of one frozen prefix history.
//
// Conditional experiments draw thousands of continuations of the same
// G_M. Copying an O(n) history per continuation would dominate their cost,
// so a Continuation keeps a reference to the prefix, stores only the late
// targets, and undoes its degree updates on reset(). It models the same
// History interface as EvolvingGraph once a continuation has been drawn.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "pacd/encoding.hpp"
#include "pacd/graph.hpp"
#include "pacd/schedule.hpp"

namespace pacd {

class Continuation {
 public:
  /// `prefix` must outlive this object.
  Continuation(const EvolvingGraph& prefix, std::uint32_t n)
      : prefix_(&prefix), n_(n), m_(prefix.edges_per_vertex()), degrees_(n, 0) {
    if (n <= prefix.vertex_count()) throw invalid_config("continuation must add at least one vertex");
    std::copy(prefix.degrees().begin(), prefix.degrees().end(), degrees_.begin());
    late_.reserve(static_cast<std::size_t>(n - prefix.vertex_count()) * m_);
  }

  std::uint32_t vertex_count() const noexcept { return n_; }
  std::uint32_t prefix_vertices() const noexcept { return prefix_->vertex_count(); }
  std::uint32_t edges_per_vertex() const noexcept { return m_; }
  const EvolvingGraph& prefix() const noexcept { return *prefix_; }

  Vertex target(std::uint32_t t, std::uint32_t i) const noexcept {
    return t <= prefix_vertices() ? prefix_->target(t, i) : late_[step_index(t, i, m_) - prefix_steps()];
  }
  std::uint32_t degree(Vertex v) const noexcept { return degrees_[v - 1]; }
  std::span<const Vertex> late_targets() const noexcept { return late_; }
  bool complete() const noexcept { return late_.size() == static_cast<std::size_t>(n_ - prefix_vertices()) * m_; }

  /// Back to the bare prefix.
  void reset() {
    for (Vertex w : late_) --degrees_[w - 1];
    std::fill(degrees_.begin() + prefix_vertices(), degrees_.end(), 0U);
    late_.clear();
  }

  /// Draws a fresh continuation to n vertices.
  template <class Rng>
  void sample(const DeltaSchedule& schedule, Rng& rng) {
    reset();
    auto lookup = [this](std::uint32_t tp, std::uint32_t ip) { return target(tp, ip); };
    for (std::uint32_t t = prefix_vertices() + 1; t <= n_; ++t) {
      const double delta_t = schedule.at(t);
      for (std::uint32_t i = 1; i <= m_; ++i) push(t, sample_step(t, i, m_, delta_t, rng, lookup));
    }
  }

  /// Decodes the continuation driven by `randomness`.
  void decode(const EncodedRandomness& randomness, const DeltaSchedule& schedule) {
    if (randomness.prefix_vertices() != prefix_vertices() || randomness.vertex_count() != n_ ||
        randomness.edges_per_vertex() != m_) {
      throw invalid_config("randomness does not match the continuation");
    }
    reset();
    auto lookup = [this](std::uint32_t tp, std::uint32_t ip) { return target(tp, ip); };
    for (std::uint32_t t = prefix_vertices() + 1; t <= n_; ++t) {
      const double delta_t = schedule.at(t);
      for (std::uint32_t i = 1; i <= m_; ++i) push(t, decode_step(randomness.at(t, i), t, i, m_, delta_t, lookup));
    }
  }

  EvolvingGraph materialize(const DeltaSchedule& schedule = {}) const {
    if (!complete()) throw computation_error("continuation has not been drawn");
    std::vector<Vertex> all(prefix_->targets().begin(), prefix_->targets().end());
    all.insert(all.end(), late_.begin(), late_.end());
    return EvolvingGraph(n_, m_, std::move(all), schedule, prefix_->seed());
  }

 private:
  std::uint64_t prefix_steps() const noexcept { return prefix_->record_count(); }

  void push(std::uint32_t t, Vertex w) {
    ++degrees_[w - 1];
    ++degrees_[t - 1];
    late_.push_back(w);
  }

  const EvolvingGraph* prefix_;
  std::uint32_t n_;
  std::uint32_t m_;
  std::vector<std::uint32_t> degrees_;
  std::vector<Vertex> late_;
};

}  // namespace pacd
