#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "pacd/attachment.hpp"
#include "pacd/continuation.hpp"
#include "pacd/encoding.hpp"
#include "pacd/graph.hpp"
#include "pacd/grow.hpp"
#include "pacd/rational.hpp"
#include "pacd/schedule.hpp"

using namespace pacd;

namespace {

Rational q(long a, long b = 1) { return Rational(a, b); }

GrowthState state_of(std::uint32_t m, const std::vector<Vertex>& targets) {
  GrowthState s(m);
  for (Vertex w : targets) s.attach(w);
  return s;
}

}  // namespace

TEST(Schedule, KappaValues) {
  EXPECT_EQ(kappa(0.0), 0U);
  EXPECT_EQ(kappa(-0.5), 1U);
  EXPECT_EQ(kappa(2.3), 0U);
  EXPECT_EQ(kappa(-1.0), 1U);
  EXPECT_EQ(kappa(-1.5), 2U);
}

TEST(Schedule, AtAndDistance) {
  const auto s = DeltaSchedule::change_at(0.0, 2.0, 10);
  EXPECT_EQ(s.at(10), 0.0);
  EXPECT_EQ(s.at(11), 2.0);
  EXPECT_EQ(s.distance(15), 5U);
  EXPECT_EQ(DeltaSchedule::constant(1.0, 8).distance(8), 0U);
}

TEST(Schedule, ValidationRejectsBadRanges) {
  EXPECT_THROW(DeltaSchedule::constant(-2.0, 5).validate(5, 2), invalid_config);
  EXPECT_THROW(DeltaSchedule::change_at(0.0, -3.0, 4).validate(5, 2), invalid_config);
  EXPECT_NO_THROW(DeltaSchedule::change_at(0.0, -3.0, 5).validate(5, 2));  // delta' unused
  EXPECT_THROW(DeltaSchedule::change_at(0.0, 1.0, 6).validate(5, 2), invalid_config);
  EXPECT_THROW(DeltaSchedule::change_at(0.0, 1.0, 1).validate(5, 2), invalid_config);
  EXPECT_THROW((GrowthConfig{1, 1, DeltaSchedule::constant(0, 2), 0}.validate()), invalid_config);
  EXPECT_THROW((GrowthConfig{4, 0, DeltaSchedule::constant(0, 4), 0}.validate()), invalid_config);
}

TEST(Schedule, TauFromGamma) {
  EXPECT_EQ(tau_from_gamma(10000, 0.5), 9900U);
  EXPECT_EQ(tau_from_gamma(100000, 0.6), 100000U - 1000U);
  EXPECT_EQ(tau_from_gamma(16, 0.5), 12U);
  EXPECT_THROW(tau_from_gamma(100, 1.0), invalid_config);
  EXPECT_THROW(tau_from_gamma(100, 0.0), invalid_config);
}

TEST(Attachment, SymmetricInitialGraph) {
  const auto law = attachment_distribution<Rational>(GrowthState(1), q(0));
  EXPECT_EQ(law, (std::vector<Rational>{q(1, 2), q(1, 2)}));
}

TEST(Attachment, DegreesTwoOneOne) {
  const auto law = attachment_distribution<Rational>(state_of(1, {1}), q(0));
  EXPECT_EQ(law, (std::vector<Rational>{q(1, 2), q(1, 4), q(1, 4)}));
}

TEST(Attachment, MidArrivalStep) {
  // m = 2, delta = 1, v3's first edge went to v1, so degrees are (3, 2).
  const auto s = state_of(2, {1});
  EXPECT_EQ(s.next_t(), 3U);
  EXPECT_EQ(s.next_i(), 2U);
  const auto law = attachment_distribution<Rational>(s, q(1));
  EXPECT_EQ(law, (std::vector<Rational>{q(4, 7), q(3, 7)}));
}

TEST(Attachment, SumsToOneExactly) {
  const auto s = state_of(2, {1, 2, 3, 1, 2});
  for (double d : {-1.5, -0.5, 0.0, 0.7, 3.0}) {
    const auto law = attachment_distribution<Rational>(s, exact_rational(d));
    EXPECT_EQ(std::accumulate(law.begin(), law.end(), Rational(0)), Rational(1));
  }
}

TEST(Attachment, PrefixTooShortFails) {
  const EvolvingGraph g(4, 1, {1, 2});
  EXPECT_NO_THROW(attachment_distribution<double>(g, 5, 1, 0.0));
  EXPECT_THROW(attachment_distribution<double>(g, 6, 1, 0.0), invalid_config);
  EXPECT_THROW(attachment_distribution<double>(GrowthState(1), -1.0), invalid_config);
}

TEST(Graph, InitialGraphN2) {
  const EvolvingGraph g = grow(GrowthConfig{2, 3, DeltaSchedule::constant(0, 2), 5});
  EXPECT_EQ(g.record_count(), 0U);
  EXPECT_EQ(g.edge_count(), 3U);
  EXPECT_EQ(g.degree(1), 3U);
  EXPECT_EQ(g.degree(2), 3U);
  EXPECT_EQ(degree_histogram(g), (std::map<std::uint32_t, std::uint64_t>{{3, 2}}));
}

TEST(Graph, RejectsInvalidTargets) {
  EXPECT_THROW(EvolvingGraph(4, 1, {3, 1}), invalid_config);
  EXPECT_THROW(EvolvingGraph(4, 1, {1}), invalid_config);
  EXPECT_THROW(EvolvingGraph(4, 1, {0, 1}), invalid_config);
}

TEST(Graph, StarHistogram) {
  const EvolvingGraph star(4, 1, {1, 1});
  EXPECT_EQ(degree_histogram(star), (std::map<std::uint32_t, std::uint64_t>{{1, 3}, {3, 1}}));
}

TEST(Graph, StateReplayMatchesDegrees) {
  const EvolvingGraph g = grow(GrowthConfig{40, 3, DeltaSchedule::constant(0.5, 40), 11});
  const GrowthState s = g.state_before(40, 3);
  EXPECT_EQ(s.steps(), step_index(40, 3, 3));
  const EvolvingGraph p = g.prefix(20);
  EXPECT_EQ(p.vertex_count(), 20U);
  for (std::uint32_t t = 3; t <= 20; ++t) EXPECT_EQ(p.target(t, 2), g.target(t, 2));
  EXPECT_EQ(p.records().back(), (AttachmentRecord{20, 3, g.target(20, 3)}));
}

class GrowInvariants : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(GrowInvariants, EdgeCountAndHandshake) {
  SplitMix64 pick(GetParam());
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::uint32_t>(2 + uniform_below(pick, 300));
    const auto m = static_cast<std::uint32_t>(1 + uniform_below(pick, 4));
    const double delta = -static_cast<double>(m) + 0.25 + static_cast<double>(uniform_below(pick, 20)) / 4;
    const double delta_prime = -static_cast<double>(m) + 0.1 + static_cast<double>(uniform_below(pick, 20)) / 3;
    const auto tau = std::min<std::uint64_t>(n, 2 + uniform_below(pick, n));
    const GrowthConfig config{n, m, DeltaSchedule::change_at(delta, delta_prime, tau), pick()};
    const EvolvingGraph g = grow(config);
    EXPECT_EQ(g.record_count(), static_cast<std::uint64_t>(m) * (n - 2));
    std::uint64_t total = 0;
    for (Vertex v = 1; v <= n; ++v) {
      EXPECT_GE(g.degree(v), m);
      total += g.degree(v);
    }
    EXPECT_EQ(total, 2ULL * m * (n - 1));
    std::uint64_t histogram_total = 0;
    std::uint64_t histogram_count = 0;
    for (const auto& [deg, count] : degree_histogram(g)) {
      EXPECT_GE(deg, m);
      histogram_total += deg * count;
      histogram_count += count;
    }
    EXPECT_EQ(histogram_total, 2ULL * m * (n - 1));
    EXPECT_EQ(histogram_count, n);
    EXPECT_EQ(grow(config), g);  // seed determinism
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, GrowInvariants, ::testing::Values(1ULL, 2ULL, 3ULL));

TEST(Grow, FourVerticesOneEdgeEach) {
  const EvolvingGraph g = grow(GrowthConfig{4, 1, DeltaSchedule::change_at(0.0, 5.0, 3), 9});
  EXPECT_EQ(g.record_count(), 2U);
  EXPECT_EQ(g.edge_count(), 3U);
}

TEST(Grow, ThirdVertexSplitsEvenly) {
  const int reps = 100000;
  int to_v1 = 0;
  for (int r = 0; r < reps; ++r) {
    const EvolvingGraph g = grow(GrowthConfig{3, 1, DeltaSchedule::constant(0, 3), derive_seed(77, r)});
    to_v1 += g.target(3, 1) == 1 ? 1 : 0;
  }
  const double se = std::sqrt(0.25 / reps);
  EXPECT_NEAR(static_cast<double>(to_v1) / reps, 0.5, 3 * se);
}

TEST(Grow, FirstStepsMatchAttachmentLaw) {
  // n = 5, m = 1, delta = 0.5: frequency of v5 -> v1 given v3 -> v1, v4 -> v3.
  const int reps = 200000;
  int cond = 0;
  int hit = 0;
  for (int r = 0; r < reps; ++r) {
    const EvolvingGraph g = grow(GrowthConfig{5, 1, DeltaSchedule::constant(0.5, 5), derive_seed(5, r)});
    if (g.target(3, 1) == 1 && g.target(4, 1) == 3) {
      ++cond;
      hit += g.target(5, 1) == 1 ? 1 : 0;
    }
  }
  // degrees (2, 1, 2, 1) + 0.5 each over 4 * 0.5 + 6 = 8: v1 has 2.5 / 8.
  const double p = 2.5 / 8;
  ASSERT_GT(cond, 1000);
  EXPECT_NEAR(static_cast<double>(hit) / cond, p, 3 * std::sqrt(p * (1 - p) / cond));
}

TEST(Encoding, SlotCountExample) {
  EXPECT_EQ(edge_slot_count(5, 2, 2, 0), 13U);
  EXPECT_EQ(edge_slot_count(3, 1, 1, 0), 2U);
  EXPECT_EQ(edge_slot_count(3, 1, 1, 1), 0U);
}

TEST(Encoding, UniformBranchProbability) {
  EXPECT_EQ(uniform_branch_probability(7, 1, 2, 0.0), 0.0);
  EXPECT_EQ(uniform_branch_probability(3, 1, 1, -0.5), 1.0);
  EXPECT_EQ(uniform_branch_probability<Rational>(4, 2, 2, q(1), 0), q(3, 3 + 8 + 1));
  // (t-1)(delta + kappa) = 3/2 over 3(-1/2) + 8 = 13/2
  EXPECT_EQ(uniform_branch_probability<Rational>(4, 1, 2, q(-1, 2), 1), q(3, 13));
}

TEST(Encoding, ZeroShiftNeverTakesUniformBranch) {
  const GrowthConfig config{50, 2, DeltaSchedule::constant(0, 50), 3};
  const EncodedRandomness u = draw_randomness(10, config);
  for (const auto& e : u.entries()) EXPECT_FALSE(e.uniform_branch);
}

TEST(Encoding, KappaOneForcesUniformBranchAtThree) {
  const GrowthConfig config{3, 1, DeltaSchedule::constant(-0.5, 3), 0};
  for (std::uint64_t s = 0; s < 200; ++s) {
    GrowthConfig c = config;
    c.seed = s;
    const auto u = draw_randomness(2, c);
    EXPECT_TRUE(u.at(3, 1).uniform_branch);
    EXPECT_EQ(u.at(3, 1).y, 0U);
  }
}

TEST(Encoding, SlotSourceLayout) {
  // m = 2, kappa = 0, t = 4: v1 x2, v2 x2, v3 x2, then targets of (3,1), (3,2).
  const std::vector<Vertex> targets{2, 1};
  auto lookup = [&](std::uint32_t t, std::uint32_t i) { return targets[step_index(t, i, 2)]; };
  std::vector<Vertex> sources;
  for (std::uint64_t y = 1; y <= edge_slot_count(4, 1, 2, 0); ++y) sources.push_back(slot_source(y, 4, 2, 0, lookup));
  EXPECT_EQ(sources, (std::vector<Vertex>{1, 1, 2, 2, 3, 3, 2, 1}));
  // every vertex appears deg - kappa times
  const auto s = state_of(2, targets);
  for (Vertex v = 1; v <= 3; ++v) {
    EXPECT_EQ(static_cast<std::uint32_t>(std::count(sources.begin(), sources.end(), v)), s.degree(v));
  }
}

TEST(Encoding, DecodeUniformBranchUsesW) {
  const EvolvingGraph prefix = grow(GrowthConfig{5, 2, DeltaSchedule::constant(1, 5), 4});
  const GrowthConfig config{8, 2, DeltaSchedule::constant(1, 8), 6};
  EncodedRandomness u = draw_randomness(5, config);
  u.at(7, 2) = RandomnessEntry{true, 3, 1};
  const EvolvingGraph g = decode(prefix, u, config.schedule);
  EXPECT_EQ(g.target(7, 2), 3U);
  EXPECT_EQ(decode(prefix, u, config.schedule), g);
}

TEST(Encoding, DecodeRejectsOutOfRangeY) {
  const EvolvingGraph prefix = EvolvingGraph::initial(1);
  const GrowthConfig config{3, 1, DeltaSchedule::constant(0, 3), 1};
  EncodedRandomness u = draw_randomness(2, config);
  u.at(3, 1) = RandomnessEntry{false, 1, 3};
  EXPECT_THROW(decode(prefix, u, config.schedule), invalid_config);
}

TEST(Encoding, ExhaustiveYAtThree) {
  // m = 1, delta = 0, n = 3: Y = 1 and Y = 2 give v1 and v2.
  const EvolvingGraph prefix = EvolvingGraph::initial(1);
  const DeltaSchedule s = DeltaSchedule::constant(0, 3);
  std::vector<Vertex> seen;
  for (std::uint64_t y = 1; y <= 2; ++y) {
    EncodedRandomness u(3, 2, 1, s, {RandomnessEntry{false, 1, y}});
    seen.push_back(decode(prefix, u, s).target(3, 1));
  }
  EXPECT_EQ(seen, (std::vector<Vertex>{1, 2}));
}

TEST(Encoding, ResampleChangesOnlyOneEntry) {
  const GrowthConfig config{60, 2, DeltaSchedule::constant(0.5, 60), 12};
  const EncodedRandomness u = draw_randomness(20, config);
  const EncodedRandomness v = resample_one(u, 33, 2, 99);
  for (std::uint32_t t = 21; t <= 60; ++t) {
    for (std::uint32_t i = 1; i <= 2; ++i) {
      if (t == 33 && i == 2) continue;
      EXPECT_EQ(u.at(t, i), v.at(t, i));
    }
  }
  EXPECT_EQ(resample_one(u, 33, 2, 99), v);
  // Same stream as the original draw reproduces the original entry.
  EXPECT_EQ(resample_one(u, 33, 2, config.seed), u);
  EXPECT_THROW(resample_one(u, 20, 1, 1), invalid_config);
  EXPECT_THROW(resample_one(u, 61, 1, 1), invalid_config);
}

TEST(Encoding, ResampledBernoulliMean) {
  // m = 1, delta = 0.5, t = 3: p = 2(0.5) / (2(0.5) + 2) = 1/3.
  const GrowthConfig config{5, 1, DeltaSchedule::constant(0.5, 5), 0};
  const EncodedRandomness u = draw_randomness(2, config);
  const int reps = 10000;
  int ones = 0;
  for (int r = 0; r < reps; ++r) ones += resample_one(u, 3, 1, derive_seed(1234, r)).at(3, 1).uniform_branch ? 1 : 0;
  const double p = 1.0 / 3;
  EXPECT_NEAR(static_cast<double>(ones) / reps, p, 3 * std::sqrt(p * (1 - p) / reps));
}

TEST(Encoding, ScheduleNeutralityWhenNoChange) {
  const EvolvingGraph prefix = grow(GrowthConfig{30, 2, DeltaSchedule::constant(0.5, 30), 1});
  const GrowthConfig config{200, 2, DeltaSchedule::constant(0.5, 200), 8};
  const EncodedRandomness u = draw_randomness(30, config);
  const EvolvingGraph a = decode(prefix, u, DeltaSchedule::constant(0.5, 200));
  const EvolvingGraph b = decode(prefix, u, DeltaSchedule::change_at(0.5, 7.0, 200));
  EXPECT_EQ(a, b);
}

TEST(Continuation, MatchesDecodeAndResets) {
  const EvolvingGraph prefix = grow(GrowthConfig{25, 2, DeltaSchedule::constant(0.0, 25), 2});
  const GrowthConfig config{60, 2, DeltaSchedule::change_at(0.0, 1.0, 50), 3};
  const EncodedRandomness u = draw_randomness(25, config);
  Continuation c(prefix, 60);
  c.decode(u, config.schedule);
  const EvolvingGraph g = decode(prefix, u, config.schedule);
  EXPECT_EQ(c.materialize(config.schedule), g);
  for (Vertex v = 1; v <= 60; ++v) EXPECT_EQ(c.degree(v), g.degree(v));
  SplitMix64 rng(5);
  c.sample(config.schedule, rng);
  c.reset();
  for (Vertex v = 1; v <= 25; ++v) EXPECT_EQ(c.degree(v), prefix.degree(v));
  for (Vertex v = 26; v <= 60; ++v) EXPECT_EQ(c.degree(v), 0U);
}
