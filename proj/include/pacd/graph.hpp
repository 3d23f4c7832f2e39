#pragma once

// Arrival-ordered preferential-attachment multigraphs.
//
// A history is stored as the flat sequence of attachment targets in
// lexicographic (t, i) order: entry (t - 3) * m + (i - 1) is the vertex that
// the i-th edge of v_t attached to. The initial graph G_2 (v1 and v2 joined
// by m parallel edges) is implicit.

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "pacd/schedule.hpp"

namespace pacd {

struct AttachmentRecord {
  std::uint32_t t = 0;
  std::uint32_t i = 0;
  Vertex target = 0;

  friend bool operator==(const AttachmentRecord&, const AttachmentRecord&) = default;
};

/// Flat index of step (t, i) in the record sequence.
constexpr std::uint64_t step_index(std::uint32_t t, std::uint32_t i, std::uint32_t m) noexcept {
  return static_cast<std::uint64_t>(t - 3) * m + (i - 1);
}

/// Mutable growth state that may stop between two edges of the same arrival.
/// Used by the exact oracles, which walk histories one edge at a time.
class GrowthState {
 public:
  explicit GrowthState(std::uint32_t m) : m_(m), degrees_{m, m} {
    if (m < 1) throw invalid_config("m must be >= 1");
  }

  std::uint32_t m() const noexcept { return m_; }
  std::uint64_t steps() const noexcept { return targets_.size(); }

  /// Arrival time and edge index of the next attachment.
  std::uint32_t next_t() const noexcept { return 3 + static_cast<std::uint32_t>(targets_.size() / m_); }
  std::uint32_t next_i() const noexcept { return 1 + static_cast<std::uint32_t>(targets_.size() % m_); }

  /// Number of fully attached vertices.
  std::uint32_t complete_vertices() const noexcept { return next_t() - 1; }

  /// Degree of v in the current graph (v may be the partially attached arrival).
  std::uint32_t degree(Vertex v) const { return degrees_.at(v - 1); }
  std::span<const std::uint32_t> degrees() const noexcept { return degrees_; }
  std::span<const Vertex> targets() const noexcept { return targets_; }

  Vertex target(std::uint32_t t, std::uint32_t i) const { return targets_.at(step_index(t, i, m_)); }

  void attach(Vertex target) {
    const std::uint32_t t = next_t();
    if (target < 1 || target >= t) throw invalid_config("attachment target must have arrived before t");
    if (next_i() == 1) degrees_.push_back(0);
    ++degrees_[target - 1];
    ++degrees_[t - 1];
    targets_.push_back(target);
  }

  void undo() {
    const std::uint32_t t = 3 + static_cast<std::uint32_t>((targets_.size() - 1) / m_);
    const Vertex target = targets_.back();
    targets_.pop_back();
    --degrees_[target - 1];
    --degrees_[t - 1];
    if (targets_.size() % m_ == 0) degrees_.pop_back();
  }

 private:
  std::uint32_t m_;
  std::vector<std::uint32_t> degrees_;
  std::vector<Vertex> targets_;
};

/// A complete history G_2, ..., G_n together with the parameters that
/// produced it.
class EvolvingGraph {
 public:
  EvolvingGraph() = default;

  /// Builds from a target sequence of length m(n - 2); degrees are recomputed.
  EvolvingGraph(std::uint32_t n, std::uint32_t m, std::vector<Vertex> targets,
                DeltaSchedule schedule = {}, std::uint64_t seed = 0)
      : n_(n), m_(m), schedule_(schedule), seed_(seed), targets_(std::move(targets)) {
    if (n < 2 || m < 1) throw invalid_config("graph requires n >= 2 and m >= 1");
    if (targets_.size() != static_cast<std::uint64_t>(m) * (n - 2)) {
      throw invalid_config("target sequence length must equal m(n-2)");
    }
    degrees_.assign(n, 0);
    degrees_[0] = degrees_[1] = m;
    for (std::uint64_t k = 0; k < targets_.size(); ++k) {
      const auto t = static_cast<std::uint32_t>(3 + k / m);
      const Vertex w = targets_[k];
      if (w < 1 || w >= t) throw invalid_config("attachment target must have arrived before t");
      ++degrees_[w - 1];
      ++degrees_[t - 1];
    }
  }

  /// Adopts a complete growth state.
  static EvolvingGraph from_state(const GrowthState& state, DeltaSchedule schedule = {},
                                  std::uint64_t seed = 0) {
    if (state.steps() % state.m() != 0) throw invalid_config("growth state ends mid-arrival");
    return EvolvingGraph(state.complete_vertices(), state.m(),
                         std::vector<Vertex>(state.targets().begin(), state.targets().end()), schedule,
                         seed);
  }

  /// Only G_2.
  static EvolvingGraph initial(std::uint32_t m) { return EvolvingGraph(2, m, {}); }

  std::uint32_t vertex_count() const noexcept { return n_; }
  std::uint32_t edges_per_vertex() const noexcept { return m_; }
  const DeltaSchedule& schedule() const noexcept { return schedule_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t record_count() const noexcept { return targets_.size(); }
  std::uint64_t edge_count() const noexcept { return static_cast<std::uint64_t>(m_) * (n_ - 1); }

  Vertex target(std::uint32_t t, std::uint32_t i) const noexcept { return targets_[step_index(t, i, m_)]; }
  std::uint32_t degree(Vertex v) const noexcept { return degrees_[v - 1]; }

  std::span<const Vertex> targets() const noexcept { return targets_; }
  std::span<const std::uint32_t> degrees() const noexcept { return degrees_; }

  AttachmentRecord record(std::uint64_t k) const {
    return {static_cast<std::uint32_t>(3 + k / m_), static_cast<std::uint32_t>(1 + k % m_), targets_.at(k)};
  }

  std::vector<AttachmentRecord> records() const {
    std::vector<AttachmentRecord> out;
    out.reserve(targets_.size());
    for (std::uint64_t k = 0; k < targets_.size(); ++k) out.push_back(record(k));
    return out;
  }

  /// Growth state at G_{t, i-1}, i.e. just before step (t, i). Requires the
  /// history to reach at least that far.
  GrowthState state_before(std::uint32_t t, std::uint32_t i) const {
    if (t < 3 || i < 1 || i > m_) throw invalid_config("step (t, i) out of range");
    const std::uint64_t needed = step_index(t, i, m_);
    if (needed > targets_.size()) throw invalid_config("history is shorter than the requested prefix");
    GrowthState state(m_);
    for (std::uint64_t k = 0; k < needed; ++k) state.attach(targets_[k]);
    return state;
  }

  /// The first `vertices` arrivals as a standalone history.
  EvolvingGraph prefix(std::uint32_t vertices) const {
    if (vertices < 2 || vertices > n_) throw invalid_config("prefix length out of range");
    const auto len = static_cast<std::ptrdiff_t>(static_cast<std::uint64_t>(m_) * (vertices - 2));
    return EvolvingGraph(vertices, m_, std::vector<Vertex>(targets_.begin(), targets_.begin() + len), schedule_,
                         seed_);
  }

  friend bool operator==(const EvolvingGraph& a, const EvolvingGraph& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.targets_ == b.targets_;
  }

 private:
  std::uint32_t n_ = 2;
  std::uint32_t m_ = 1;
  DeltaSchedule schedule_{};
  std::uint64_t seed_ = 0;
  std::vector<Vertex> targets_;
  std::vector<std::uint32_t> degrees_{1, 1};
};

/// degree -> number of vertices with that degree.
template <class History>
std::map<std::uint32_t, std::uint64_t> degree_histogram(const History& g) {
  std::map<std::uint32_t, std::uint64_t> hist;
  for (Vertex v = 1; v <= g.vertex_count(); ++v) ++hist[g.degree(v)];
  return hist;
}

}  // namespace pacd
