#pragma once

// Conditional Monte-Carlo experiments on late components: Var[S] per frozen
// prefix, single-entry resampling differences, and component-size samples
// for the branching-tree comparison.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "pacd/branching.hpp"
#include "pacd/components.hpp"
#include "pacd/continuation.hpp"
#include "pacd/descriptive.hpp"
#include "pacd/encoding.hpp"
#include "pacd/grow.hpp"
#include "pacd/likelihood.hpp"
#include "pacd/parallel.hpp"
#include "pacd/rng.hpp"
#include "pacd/schedule.hpp"

namespace pacd {

/// Parameters shared by the conditional experiments: the final size n, the
/// number N of late arrivals (so M = n - N) and the two shifts.
struct ConditionalSetup {
  std::uint32_t n = 0;
  std::uint32_t late = 0;  // N
  std::uint32_t m = 1;
  double delta = 0.0;
  double delta_prime = 0.0;

  std::uint32_t prefix_vertices() const noexcept { return n - late; }

  void validate() const {
    if (m < 1) throw invalid_config("m must be >= 1");
    if (late < 1 || late + 2 > n) throw invalid_config("require 1 <= N <= n - 2");
    if (2ULL * m * late >= n) throw invalid_config("require N < n / (2m)");
    DeltaSchedule::change_at(delta, delta_prime, n - 1).validate(n, m);
  }

  /// Prefix G_M grown under the pre-change shift.
  EvolvingGraph grow_prefix(std::uint64_t seed) const {
    const std::uint32_t big_m = prefix_vertices();
    return grow(GrowthConfig{big_m, m, DeltaSchedule::constant(delta, big_m), seed});
  }

  /// Law the continuations are drawn from: no change.
  DeltaSchedule null_schedule() const { return DeltaSchedule::constant(delta, n); }
};

struct VarianceRow {
  std::size_t prefix_id = 0;
  double mean_s = 0.0;
  double var_s = 0.0;
  std::size_t cont_reps = 0;
};

/// For each of `prefix_reps` frozen prefixes, the sample variance of S over
/// `cont_reps` null continuations. Prefix p uses seed derive_seed(seed, p);
/// its continuation c uses derive_seed(prefix seed, c + 1).
inline std::vector<VarianceRow> variance_of_S(const ConditionalSetup& setup, std::size_t prefix_reps,
                                              std::size_t cont_reps, std::uint64_t seed, unsigned threads = 1) {
  setup.validate();
  if (cont_reps < 2) throw invalid_config("variance needs at least two continuations");
  const DeltaSchedule schedule = setup.null_schedule();
  return parallel_map(prefix_reps, threads, [&](std::size_t p) {
    const std::uint64_t prefix_seed = derive_seed(seed, p);
    const EvolvingGraph prefix = setup.grow_prefix(prefix_seed);
    Continuation cont(prefix, setup.n);
    std::vector<double> s(cont_reps);
    for (std::size_t c = 0; c < cont_reps; ++c) {
      SplitMix64 rng(derive_seed(prefix_seed, c + 1));
      cont.sample(schedule, rng);
      s[c] = s_statistic<double>(cont, setup.prefix_vertices(), setup.delta, setup.delta_prime);
    }
    return VarianceRow{p, mean_of(s), variance_of(s), cont_reps};
  });
}

/// Conditional mean of L = C1 * S over continuations of one prefix, with
/// its standard error.
struct MeanEstimate {
  double mean = 0.0;
  double se = 0.0;
  std::size_t reps = 0;
};

inline MeanEstimate mean_likelihood_ratio(const ConditionalSetup& setup, std::size_t cont_reps, std::uint64_t seed) {
  setup.validate();
  const EvolvingGraph prefix = setup.grow_prefix(seed);
  Continuation cont(prefix, setup.n);
  const double scale = c1<double>(setup.n, setup.m, setup.delta, setup.delta_prime);
  std::vector<double> l(cont_reps);
  for (std::size_t c = 0; c < cont_reps; ++c) {
    SplitMix64 rng(derive_seed(seed, c + 1));
    cont.sample(setup.null_schedule(), rng);
    l[c] = scale * s_statistic<double>(cont, setup.prefix_vertices(), setup.delta, setup.delta_prime);
  }
  return {mean_of(l), sd_of(l) / std::sqrt(static_cast<double>(cont_reps)), cont_reps};
}

struct BoundedDifferenceReport {
  std::size_t trials = 0;
  double max_normalized = 0.0;  // max |S - S~| N / (|C(v_t)| + |C~(v_t)|)
  double bound = 0.0;           // 2 X_max
  std::size_t untouched_mismatches = 0;
  std::size_t identical_redraws = 0;

  bool holds() const noexcept { return untouched_mismatches == 0 && max_normalized <= bound; }
};

namespace detail {

/// Late components of `a` disjoint from `avoid` (a sorted vertex list),
/// each as its vertex list followed by its precedence pairs.
template <class History>
std::vector<std::vector<Vertex>> untouched_components(const History& g, const ComponentForest& forest,
                                                      const std::vector<Vertex>& avoid) {
  std::vector<std::vector<Vertex>> out;
  for (std::size_t k = 0; k < forest.size(); ++k) {
    const auto members = forest.members(k);
    const bool touched = std::any_of(members.begin(), members.end(),
                                     [&](Vertex v) { return std::binary_search(avoid.begin(), avoid.end(), v); });
    if (touched) continue;
    const Component c = extract_component(g, forest, k);
    std::vector<Vertex> signature(c.vertices.begin(), c.vertices.end());
    signature.push_back(0);
    for (const auto& [u, v] : c.precedence) {
      signature.push_back(u);
      signature.push_back(v);
    }
    out.push_back(std::move(signature));
  }
  return out;
}

}  // namespace detail

/// Redraws one uniformly chosen triple U_{t,i} per trial and compares S
/// before and after. Trials cycle over max(1, trials / 500) frozen prefixes.
/// Untouched components are compared by vertex set and internal precedence
/// edges; their anchor edges and X factors may move with V_M degrees.
inline BoundedDifferenceReport bounded_difference_check(const ConditionalSetup& setup, std::size_t trials,
                                                        std::uint64_t seed) {
  setup.validate();
  const std::uint32_t big_m = setup.prefix_vertices();
  const std::size_t prefix_count = std::max<std::size_t>(1, trials / 500);
  std::vector<EvolvingGraph> prefixes;
  prefixes.reserve(prefix_count);
  for (std::size_t p = 0; p < prefix_count; ++p) prefixes.push_back(setup.grow_prefix(derive_seed(seed, p)));

  BoundedDifferenceReport report;
  report.bound = 2.0 * x_max(setup.m, setup.delta, setup.delta_prime);
  const DeltaSchedule schedule = setup.null_schedule();
  const std::uint64_t trial_master = mix64(seed + 0x5bd1e995ULL);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const EvolvingGraph& prefix = prefixes[trial % prefix_count];
    const std::uint64_t trial_seed = derive_seed(trial_master, trial);
    const EncodedRandomness u = draw_randomness(big_m, GrowthConfig{setup.n, setup.m, schedule, trial_seed});
    SplitMix64 pick(derive_seed(trial_seed, ~0ULL));
    const std::uint64_t index = uniform_below(pick, u.size());
    const auto t = static_cast<std::uint32_t>(big_m + 1 + index / setup.m);
    const auto i = static_cast<std::uint32_t>(1 + index % setup.m);
    const EncodedRandomness v = resample_one(u, t, i, derive_seed(trial_seed, 1));
    if (v.at(t, i) == u.at(t, i)) ++report.identical_redraws;

    Continuation a(prefix, setup.n);
    Continuation b(prefix, setup.n);
    a.decode(u, schedule);
    b.decode(v, schedule);
    const ComponentForest fa = late_components(a, big_m);
    const ComponentForest fb = late_components(b, big_m);
    const double sa = detail::s_statistic_impl<double>(a, fa, setup.delta, setup.delta_prime, nullptr);
    const double sb = detail::s_statistic_impl<double>(b, fb, setup.delta, setup.delta_prime, nullptr);

    const auto ca = fa.members(fa.component_index(t));
    const auto cb = fb.members(fb.component_index(t));
    const double normalized =
        std::abs(sa - sb) * setup.late / static_cast<double>(ca.size() + cb.size());
    report.max_normalized = std::max(report.max_normalized, normalized);

    std::vector<Vertex> touched(ca.begin(), ca.end());
    touched.insert(touched.end(), cb.begin(), cb.end());
    std::sort(touched.begin(), touched.end());
    if (detail::untouched_components(a, fa, touched) != detail::untouched_components(b, fb, touched)) {
      ++report.untouched_mismatches;
    }
    ++report.trials;
  }
  return report;
}

/// |C(v)| for one uniformly chosen late v in each of `samples` null
/// continuations. Samples cycle over `prefix_count` frozen prefixes.
inline std::vector<std::uint32_t> component_size_samples(const ConditionalSetup& setup, std::size_t samples,
                                                         std::size_t prefix_count, std::uint64_t seed,
                                                         unsigned threads = 1) {
  setup.validate();
  if (prefix_count < 1) throw invalid_config("need at least one prefix");
  const std::uint32_t big_m = setup.prefix_vertices();
  const DeltaSchedule schedule = setup.null_schedule();
  auto blocks = parallel_map(prefix_count, threads, [&](std::size_t p) {
    const std::uint64_t prefix_seed = derive_seed(seed, p);
    const EvolvingGraph prefix = setup.grow_prefix(prefix_seed);
    Continuation cont(prefix, setup.n);
    std::vector<std::uint32_t> sizes;
    for (std::size_t s = p; s < samples; s += prefix_count) {
      SplitMix64 rng(derive_seed(prefix_seed, s + 1));
      cont.sample(schedule, rng);
      const auto v = static_cast<Vertex>(big_m + 1 + uniform_below(rng, setup.late));
      sizes.push_back(static_cast<std::uint32_t>(late_components(cont, big_m).component_size(v)));
    }
    return sizes;
  });
  std::vector<std::uint32_t> out;
  out.reserve(samples);
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

struct TreeSamples {
  std::vector<std::uint64_t> sizes;  // censored at cap + 1
  std::size_t overflows = 0;
};

inline TreeSamples tree_size_samples(const OffspringLaw& law, std::size_t samples, std::uint64_t seed,
                                     std::uint64_t cap = kDefaultTreeCap) {
  TreeSamples out;
  out.sizes.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    const TreeSize size = sample_tree_size(law, derive_seed(seed, s), cap);
    out.sizes.push_back(size.size);
    out.overflows += size.overflow ? 1 : 0;
  }
  return out;
}

struct DominanceRow {
  std::uint64_t k = 0;
  double ccdf_component = 0.0;
  double ccdf_tree = 0.0;
  double bound = 0.0;
  double se_component = 0.0;
  double se_tree = 0.0;
};

/// Empirical CCDFs at k = 1..k_max with standard errors and 2 e^{-k+1}.
template <class A, class B>
std::vector<DominanceRow> dominance_table(const std::vector<A>& component_sizes, const std::vector<B>& tree_sizes,
                                          std::uint64_t k_max) {
  std::vector<DominanceRow> rows;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    DominanceRow r;
    r.k = k;
    r.ccdf_component = ccdf_at(std::span<const A>(component_sizes), static_cast<double>(k));
    r.ccdf_tree = ccdf_at(std::span<const B>(tree_sizes), static_cast<double>(k));
    r.bound = tail_bound(k);
    r.se_component = proportion_se(r.ccdf_component, component_sizes.size());
    r.se_tree = proportion_se(r.ccdf_tree, tree_sizes.size());
    rows.push_back(r);
  }
  return rows;
}

}  // namespace pacd
