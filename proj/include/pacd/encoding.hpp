#pragma once

// Independent-randomness encoding of preferential attachment.
//
// Step (t, i) is driven by a triple U = (I, W, Y). With probability p the
// step takes the uniform branch (I = 1) and attaches to v_W, W uniform on
// [1, t-1]. Otherwise it attaches to the start point of the Y-th directed
// edge of a multiset E_{t,i} of K_{t,i} edges in which every v in V_{t-1}
// starts exactly deg(v) - kappa edges. Mixing the two reproduces the
// attachment law exactly when
//
//   p = (t-1)(delta + kappa) / ((t-1) delta + 2m(t-2) + i - 1),
//   K = (t-1)(m - kappa) + (t-3)m + i - 1.
//
// E_{t,i} is enumerated by position, never by outcome:
//   slots [0, m-k)             start at v1 (copies of v1->v2)
//   slots [m-k, 2(m-k))        start at v2 (copies of v2->v1)
//   next (t-3)(m-k) slots      start at v_{t'} for t' = 3..t-1, m-k each
//                              (the edges v_{t'} -> v_{t',i'}, i' <= m-k)
//   remaining (t-3)m + i - 1   slot j starts at the target of step j in
//                              lexicographic order (edges v_{t',i'} -> v_{t'})
// Because a slot refers to a step rather than to a vertex, changing one
// triple can only move edges that hang off the changed step.

#include <cstdint>
#include <vector>

#include "pacd/attachment.hpp"
#include "pacd/graph.hpp"
#include "pacd/rational.hpp"
#include "pacd/rng.hpp"
#include "pacd/schedule.hpp"

namespace pacd {

/// K_{t,i} = |E_{t,i}|.
constexpr std::uint64_t edge_slot_count(std::uint32_t t, std::uint32_t i, std::uint32_t m,
                                        std::uint32_t kappa) noexcept {
  return static_cast<std::uint64_t>(t - 1) * (m - kappa) + static_cast<std::uint64_t>(t - 3) * m + (i - 1);
}

/// Probability of the uniform-vertex branch at step (t, i).
template <class Scalar>
Scalar uniform_branch_probability(std::uint32_t t, std::uint32_t i, std::uint32_t m, const Scalar& delta,
                                  std::uint32_t kappa) {
  const Scalar numer = Scalar(t - 1) * (delta + Scalar(kappa));
  return numer / attachment_normalizer<Scalar>(t, i, m, delta);
}

inline double uniform_branch_probability(std::uint32_t t, std::uint32_t i, std::uint32_t m, double delta) {
  const double p = uniform_branch_probability<double>(t, i, m, delta, kappa(delta));
  if (!(p >= 0.0 && p <= 1.0 + 1e-12)) throw computation_error("uniform branch probability outside [0, 1]");
  return p > 1.0 ? 1.0 : p;
}

/// Start point of slot `y` (1-based) of E_{t,i}. `target_of(t', i')` must
/// return the recorded target of an earlier step.
template <class TargetLookup>
Vertex slot_source(std::uint64_t y, std::uint32_t t, std::uint32_t m, std::uint32_t kappa,
                   const TargetLookup& target_of) {
  const std::uint64_t copies = m - kappa;
  const std::uint64_t idx = y - 1;
  if (idx < copies) return 1;
  if (idx < 2 * copies) return 2;
  const std::uint64_t upward = static_cast<std::uint64_t>(t - 1) * copies;
  if (idx < upward) return static_cast<Vertex>(3 + (idx - 2 * copies) / copies);
  const std::uint64_t step = idx - upward;
  return target_of(static_cast<std::uint32_t>(3 + step / m), static_cast<std::uint32_t>(1 + step % m));
}

/// One triple U_{t,i}. `y` is 0 exactly when K_{t,i} = 0 (then I = 1 surely).
struct RandomnessEntry {
  bool uniform_branch = false;  // I
  Vertex w = 1;                 // W in [1, t-1]
  std::uint64_t y = 0;          // Y in [1, K_{t,i}]

  friend bool operator==(const RandomnessEntry&, const RandomnessEntry&) = default;
};

/// Draws U_{t,i} from its marginal.
template <class Rng>
RandomnessEntry draw_entry(std::uint32_t t, std::uint32_t i, std::uint32_t m, double delta, Rng& rng) {
  const std::uint32_t k = kappa(delta);
  const double p = uniform_branch_probability(t, i, m, delta);
  const std::uint64_t slots = edge_slot_count(t, i, m, k);
  RandomnessEntry e;
  e.uniform_branch = slots == 0 || bernoulli(rng, p);
  e.w = static_cast<Vertex>(1 + uniform_below(rng, t - 1));
  e.y = slots > 0 ? 1 + uniform_below(rng, slots) : 0;
  return e;
}

/// The triples {U_{t,i} : M < t <= n, 1 <= i <= m}.
class EncodedRandomness {
 public:
  EncodedRandomness() = default;
  EncodedRandomness(std::uint32_t n, std::uint32_t prefix_vertices, std::uint32_t m, DeltaSchedule schedule,
                    std::vector<RandomnessEntry> entries)
      : n_(n), prefix_(prefix_vertices), m_(m), schedule_(schedule), entries_(std::move(entries)) {
    if (entries_.size() != static_cast<std::uint64_t>(n_ - prefix_) * m_) {
      throw invalid_config("randomness must cover every step after the prefix");
    }
  }

  std::uint32_t vertex_count() const noexcept { return n_; }
  std::uint32_t prefix_vertices() const noexcept { return prefix_; }
  std::uint32_t edges_per_vertex() const noexcept { return m_; }
  const DeltaSchedule& schedule() const noexcept { return schedule_; }
  std::size_t size() const noexcept { return entries_.size(); }

  bool contains(std::uint32_t t, std::uint32_t i) const noexcept {
    return t > prefix_ && t <= n_ && i >= 1 && i <= m_;
  }

  const RandomnessEntry& at(std::uint32_t t, std::uint32_t i) const {
    if (!contains(t, i)) throw invalid_config("randomness index out of range");
    return entries_[offset(t, i)];
  }
  RandomnessEntry& at(std::uint32_t t, std::uint32_t i) {
    if (!contains(t, i)) throw invalid_config("randomness index out of range");
    return entries_[offset(t, i)];
  }

  const std::vector<RandomnessEntry>& entries() const noexcept { return entries_; }

  friend bool operator==(const EncodedRandomness& a, const EncodedRandomness& b) {
    return a.n_ == b.n_ && a.prefix_ == b.prefix_ && a.m_ == b.m_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t offset(std::uint32_t t, std::uint32_t i) const noexcept {
    return static_cast<std::size_t>(t - prefix_ - 1) * m_ + (i - 1);
  }

  std::uint32_t n_ = 0;
  std::uint32_t prefix_ = 0;
  std::uint32_t m_ = 1;
  DeltaSchedule schedule_{};
  std::vector<RandomnessEntry> entries_;
};

/// Seed of the stream that draws U_{t,i}. Each entry owns an independent
/// stream so any single entry can be redrawn in isolation.
inline std::uint64_t entry_seed(std::uint64_t seed, std::uint32_t t, std::uint32_t i, std::uint32_t m) {
  return derive_seed(seed, step_index(t, i, m));
}

inline EncodedRandomness draw_randomness(std::uint32_t prefix_vertices, const GrowthConfig& config) {
  config.validate();
  if (prefix_vertices < 2 || prefix_vertices >= config.n) throw invalid_config("require 2 <= M < n");
  const std::uint32_t m = config.m;
  std::vector<RandomnessEntry> entries;
  entries.reserve(static_cast<std::size_t>(config.n - prefix_vertices) * m);
  for (std::uint32_t t = prefix_vertices + 1; t <= config.n; ++t) {
    const double delta_t = config.schedule.at(t);
    for (std::uint32_t i = 1; i <= m; ++i) {
      SplitMix64 rng(entry_seed(config.seed, t, i, m));
      entries.push_back(draw_entry(t, i, m, delta_t, rng));
    }
  }
  return EncodedRandomness(config.n, prefix_vertices, m, config.schedule, std::move(entries));
}

/// Copy of `randomness` with only U_{t,i} redrawn, from the stream that
/// `seed` assigns to (t, i).
inline EncodedRandomness resample_one(const EncodedRandomness& randomness, std::uint32_t t, std::uint32_t i,
                                      std::uint64_t seed) {
  if (!randomness.contains(t, i)) throw invalid_config("resample index out of range");
  EncodedRandomness out = randomness;
  SplitMix64 rng(entry_seed(seed, t, i, randomness.edges_per_vertex()));
  out.at(t, i) = draw_entry(t, i, randomness.edges_per_vertex(), randomness.schedule().at(t), rng);
  return out;
}

/// Target chosen by triple `e` at step (t, i).
template <class TargetLookup>
Vertex decode_step(const RandomnessEntry& e, std::uint32_t t, std::uint32_t i, std::uint32_t m, double delta,
                   const TargetLookup& target_of) {
  if (e.uniform_branch) {
    if (e.w < 1 || e.w >= t) throw invalid_config("W outside [1, t-1]");
    return e.w;
  }
  const std::uint32_t k = kappa(delta);
  const std::uint64_t slots = edge_slot_count(t, i, m, k);
  if (e.y < 1 || e.y > slots) throw invalid_config("Y outside [1, K_{t,i}]");
  return slot_source(e.y, t, m, k, target_of);
}

/// Draws step (t, i) afresh. Same law as decode_step on a fresh triple, but
/// only the variables the chosen branch needs are drawn.
template <class Rng, class TargetLookup>
Vertex sample_step(std::uint32_t t, std::uint32_t i, std::uint32_t m, double delta, Rng& rng,
                   const TargetLookup& target_of) {
  const std::uint32_t k = kappa(delta);
  const double p = static_cast<double>(t - 1) * (delta + k) / attachment_normalizer<double>(t, i, m, delta);
  const std::uint64_t slots = edge_slot_count(t, i, m, k);
  if (slots == 0 || bernoulli(rng, p)) return static_cast<Vertex>(1 + uniform_below(rng, t - 1));
  return slot_source(1 + uniform_below(rng, slots), t, m, k, target_of);
}

/// Decodes the continuation of `prefix` (M vertices) driven by `randomness`.
inline EvolvingGraph decode(const EvolvingGraph& prefix, const EncodedRandomness& randomness,
                            const DeltaSchedule& schedule) {
  const std::uint32_t m = prefix.edges_per_vertex();
  if (prefix.vertex_count() != randomness.prefix_vertices() || m != randomness.edges_per_vertex()) {
    throw invalid_config("prefix does not match the randomness index set");
  }
  const std::uint32_t n = randomness.vertex_count();
  std::vector<Vertex> targets(prefix.targets().begin(), prefix.targets().end());
  targets.reserve(static_cast<std::size_t>(m) * (n - 2));
  auto lookup = [&](std::uint32_t tp, std::uint32_t ip) { return targets[step_index(tp, ip, m)]; };
  for (std::uint32_t t = prefix.vertex_count() + 1; t <= n; ++t) {
    const double delta_t = schedule.at(t);
    for (std::uint32_t i = 1; i <= m; ++i) {
      targets.push_back(decode_step(randomness.at(t, i), t, i, m, delta_t, lookup));
    }
  }
  return EvolvingGraph(n, m, std::move(targets), schedule, prefix.seed());
}

}  // namespace pacd
