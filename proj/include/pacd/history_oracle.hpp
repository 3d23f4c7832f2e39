#pragma once

// Exact brute-force oracle over complete network histories.
//
// Every admissible continuation of a prefix is enumerated with its exact
// probability under the sequential attachment law. Final snapshots are
// compared with late vertices unlabeled (their arrival order is the hidden
// variable) and vertices of V_M keeping their labels. No floating point is
// used anywhere in this header.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "pacd/attachment.hpp"
#include "pacd/encoding.hpp"
#include "pacd/graph.hpp"
#include "pacd/rational.hpp"
#include "pacd/schedule.hpp"

namespace pacd {

/// Enumeration refuses instances with more than this many steps m(n-2).
inline constexpr std::uint64_t kMaxEnumeratedSteps = 12;
/// Snapshot canonicalization tries all N! relabelings of the late vertices.
inline constexpr std::uint32_t kMaxCanonicalLate = 9;

struct HistoryAtom {
  EvolvingGraph history;
  Rational probability;
};

namespace detail {

inline void check_enumeration_cap(std::uint32_t n, std::uint32_t m) {
  if (static_cast<std::uint64_t>(m) * (n - 2) > kMaxEnumeratedSteps) {
    throw computation_error("enumeration cap exceeded: m(n-2) must be <= " + std::to_string(kMaxEnumeratedSteps));
  }
}

inline GrowthState state_from(const EvolvingGraph& g) {
  GrowthState s(g.edges_per_vertex());
  for (Vertex w : g.targets()) s.attach(w);
  return s;
}

inline void walk(GrowthState& state, std::uint64_t remaining, const std::vector<Rational>& delta_by_t,
                 const Rational& probability, const std::function<void(const GrowthState&, const Rational&)>& visit) {
  if (remaining == 0) {
    visit(state, probability);
    return;
  }
  const std::vector<Rational> law = attachment_distribution<Rational>(state, delta_by_t.at(state.next_t()));
  for (Vertex v = 1; v <= law.size(); ++v) {
    state.attach(v);
    walk(state, remaining - 1, delta_by_t, probability * law[v - 1], visit);
    state.undo();
  }
}

inline std::vector<Rational> exact_deltas(std::uint32_t n, const DeltaSchedule& schedule) {
  std::vector<Rational> out(n + 1);
  for (std::uint32_t t = 0; t <= n; ++t) out[t] = exact_rational(schedule.at(t));
  return out;
}

}  // namespace detail

/// Visits every growth state reachable `steps` single-edge steps after
/// `start`, with its exact probability given `start`.
inline void for_each_state(const GrowthState& start, std::uint64_t steps, const DeltaSchedule& schedule,
                           const std::function<void(const GrowthState&, const Rational&)>& visit) {
  const std::uint64_t total = start.steps() + steps;
  const std::uint32_t last_t = 3 + static_cast<std::uint32_t>(total == 0 ? 0 : (total - 1) / start.m());
  if (total > kMaxEnumeratedSteps) throw computation_error("enumeration cap exceeded");
  GrowthState state = start;
  detail::walk(state, steps, detail::exact_deltas(last_t, schedule), Rational(1), visit);
}

/// Every continuation of `prefix` (default: G_2) to n vertices, each with
/// its exact conditional probability.
inline std::vector<HistoryAtom> enumerate_histories(std::uint32_t n, std::uint32_t m, const DeltaSchedule& schedule,
                                                    const std::optional<EvolvingGraph>& prefix = std::nullopt) {
  if (n < 2 || m < 1) throw invalid_config("require n >= 2 and m >= 1");
  detail::check_enumeration_cap(n, m);
  schedule.validate(n, m);
  const EvolvingGraph start = prefix.value_or(EvolvingGraph::initial(m));
  if (start.edges_per_vertex() != m || start.vertex_count() > n) throw invalid_config("prefix does not fit (n, m)");
  std::vector<HistoryAtom> out;
  GrowthState state = detail::state_from(start);
  const std::uint64_t steps = static_cast<std::uint64_t>(m) * (n - start.vertex_count());
  detail::walk(state, steps, detail::exact_deltas(n, schedule), Rational(1),
               [&](const GrowthState& s, const Rational& p) {
                 out.push_back({EvolvingGraph::from_state(s, schedule), p});
               });
  return out;
}

/// Canonical form of the late part of a snapshot: the lexicographically
/// smallest sorted undirected edge list over all relabelings of the late
/// vertices. Edges inside V_M are fixed by the prefix and omitted.
using SnapshotKey = std::vector<std::uint64_t>;

template <class History>
SnapshotKey snapshot_key(const History& g, std::uint32_t prefix_vertices) {
  const std::uint32_t n = g.vertex_count();
  const std::uint32_t m = g.edges_per_vertex();
  const std::uint32_t late = n - prefix_vertices;
  if (late > kMaxCanonicalLate) throw computation_error("too many late vertices to canonicalize");
  std::vector<std::uint32_t> perm(late);
  std::iota(perm.begin(), perm.end(), 0U);
  SnapshotKey best;
  SnapshotKey edges;
  edges.reserve(static_cast<std::size_t>(late) * m);
  auto relabel = [&](Vertex v) -> std::uint64_t { return v <= prefix_vertices ? v : prefix_vertices + 1 + perm[v - prefix_vertices - 1]; };
  do {
    edges.clear();
    for (Vertex v = prefix_vertices + 1; v <= n; ++v) {
      for (std::uint32_t i = 1; i <= m; ++i) {
        const std::uint64_t a = relabel(v);
        const std::uint64_t b = relabel(g.target(v, i));
        edges.push_back(std::min(a, b) * (n + 1) + std::max(a, b));
      }
    }
    std::sort(edges.begin(), edges.end());
    if (best.empty() || edges < best) best = edges;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

struct SnapshotEntry {
  Rational probability{0};
  EvolvingGraph representative;
  std::uint64_t history_count = 0;
};

using SnapshotLaw = std::map<SnapshotKey, SnapshotEntry>;

/// Law of the final snapshot given the prefix, marginalized over the
/// hidden arrival order of the late vertices.
inline SnapshotLaw conditional_snapshot_law(const EvolvingGraph& prefix, std::uint32_t n,
                                            const DeltaSchedule& schedule) {
  const std::uint32_t m = prefix.edges_per_vertex();
  detail::check_enumeration_cap(n, m);
  schedule.validate(n, m);
  SnapshotLaw law;
  GrowthState state = detail::state_from(prefix);
  const std::uint64_t steps = static_cast<std::uint64_t>(m) * (n - prefix.vertex_count());
  detail::walk(state, steps, detail::exact_deltas(n, schedule), Rational(1),
               [&](const GrowthState& s, const Rational& p) {
                 EvolvingGraph g = EvolvingGraph::from_state(s, schedule);
                 SnapshotKey key = snapshot_key(g, prefix.vertex_count());
                 auto [it, inserted] = law.try_emplace(std::move(key));
                 if (inserted) it->second.representative = std::move(g);
                 it->second.probability += p;
                 ++it->second.history_count;
               });
  return law;
}

/// Pair of conditional laws for the one-step change problem: no change
/// versus delta -> delta' at tau = n - 1.
struct LawPair {
  SnapshotLaw null_law;
  SnapshotLaw change_law;
};

inline LawPair one_step_laws(const EvolvingGraph& prefix, std::uint32_t n, double delta, double delta_prime) {
  if (n < 3 || prefix.vertex_count() >= n) throw invalid_config("require M < n and n >= 3");
  return {conditional_snapshot_law(prefix, n, DeltaSchedule::constant(delta, n)),
          conditional_snapshot_law(prefix, n, DeltaSchedule::change_at(delta, delta_prime, n - 1))};
}

/// Likelihood ratio of one snapshot key read off a pair of laws.
inline Rational ratio_from_laws(const LawPair& laws, const SnapshotKey& key) {
  const auto p = laws.null_law.find(key);
  if (p == laws.null_law.end() || p->second.probability == 0) {
    throw computation_error("snapshot has zero probability under the null law");
  }
  const auto q = laws.change_law.find(key);
  return q == laws.change_law.end() ? Rational(0) : q->second.probability / p->second.probability;
}

/// Q_M[G] / P_M[G] computed purely by enumeration.
inline Rational exact_lr(const EvolvingGraph& prefix, const EvolvingGraph& snapshot, double delta,
                         double delta_prime) {
  const LawPair laws = one_step_laws(prefix, snapshot.vertex_count(), delta, delta_prime);
  return ratio_from_laws(laws, snapshot_key(snapshot, prefix.vertex_count()));
}

/// Exact law of v_{t,i} under the randomness encoding, obtained by summing
/// over every value of the triple (I, W, Y). `state` sits before step (t, i).
inline std::vector<Rational> encoding_induced_law(const GrowthState& state, double delta) {
  const std::uint32_t t = state.next_t();
  const std::uint32_t i = state.next_i();
  const std::uint32_t m = state.m();
  if (!(delta > -static_cast<double>(m))) throw invalid_config("delta must be > -m");
  const std::uint32_t k = kappa(delta);
  const Rational p = uniform_branch_probability<Rational>(t, i, m, exact_rational(delta), k);
  const std::uint64_t slots = edge_slot_count(t, i, m, k);
  std::vector<Rational> law(t - 1, Rational(0));
  const Rational per_vertex = p / Rational(t - 1);
  for (Vertex w = 1; w < t; ++w) law[w - 1] += per_vertex;
  if (slots > 0) {
    const Rational per_slot = (Rational(1) - p) / Rational(slots);
    const auto targets = state.targets();
    auto lookup = [&](std::uint32_t tp, std::uint32_t ip) { return targets[step_index(tp, ip, m)]; };
    for (std::uint64_t y = 1; y <= slots; ++y) law[slot_source(y, t, m, k, lookup) - 1] += per_slot;
  } else if (p != 1) {
    throw computation_error("empty edge multiset with uniform-branch probability below one");
  }
  return law;
}

inline std::vector<Rational> encoding_induced_law(const EvolvingGraph& history, std::uint32_t t, std::uint32_t i,
                                                  double delta) {
  return encoding_induced_law(history.state_before(t, i), delta);
}

}  // namespace pacd
