#include <gtest/gtest.h>

#include "hmgf/exact.hpp"
#include "hmgf/graph_io.hpp"
#include "hmgf/maxgf.hpp"
#include "test_support.hpp"

namespace hmgf {
namespace {

using testing::graph_x;
using testing::labeled;
using testing::random_graph;

Group everything(const HeteroGraph& g) {
  std::vector<VertexId> all(g.vertex_count());
  for (VertexId v = 0; v < all.size(); ++v) all[v] = v;
  return Group(std::move(all));
}

TEST(RadiusMode, ParseAndRadius) {
  EXPECT_EQ(parse_radius_mode("guarantee"), RadiusMode::kGuarantee);
  EXPECT_EQ(parse_radius_mode("tight"), RadiusMode::kTight);
  EXPECT_THROW(parse_radius_mode("loose"), std::invalid_argument);
  EXPECT_EQ(radius_mode_name(RadiusMode::kTight), "tight");
  EXPECT_EQ(candidate_radius(3, RadiusMode::kGuarantee), 3);
  EXPECT_EQ(candidate_radius(3, RadiusMode::kTight), 2);
  EXPECT_EQ(candidate_radius(4, RadiusMode::kTight), 2);
  EXPECT_EQ(candidate_radius(1, RadiusMode::kTight), 1);
}

TEST(Candidate, GraphXBalls) {
  const auto g = graph_x();
  EXPECT_EQ(candidate(g, g.vertex("1"), {2, 3}, {}), labeled(g, {"1", "2", "3", "4"}));
  EXPECT_EQ(candidate(g, g.vertex("3"), {2, 3}, {}), everything(g));
  MaxGFConfig tight;
  tight.radius_mode = RadiusMode::kTight;
  EXPECT_EQ(candidate(g, g.vertex("1"), {2, 3}, tight), labeled(g, {"1", "2"}));
}

TEST(UpperBound, GraphX) {
  const auto g = graph_x();
  EXPECT_DOUBLE_EQ(upper_bound(g, labeled(g, {"1", "2", "3", "4"}), 3), 1.4 / 3.0);
  EXPECT_DOUBLE_EQ(upper_bound(g, everything(g), 3), 0.8);
  EXPECT_THROW(upper_bound(g, Group{}, 3), std::invalid_argument);
  EXPECT_THROW(upper_bound(g, everything(g), 0), std::invalid_argument);
}

TEST(Peel, WholeGraphX) {
  const auto g = graph_x();
  const auto r = peel_at_least_p(g, everything(g), 3);
  ASSERT_TRUE(r.best);
  EXPECT_EQ(*r.best, labeled(g, {"1", "3", "5"}));
  EXPECT_DOUBLE_EQ(r.sigma, 1.9 / 3.0);

  ASSERT_EQ(r.trace.removals.size(), 2u);
  EXPECT_EQ(r.trace.removals[0].removed, g.vertex("2"));
  EXPECT_DOUBLE_EQ(r.trace.removals[0].incident_weight, 0.0);
  EXPECT_EQ(r.trace.removals[1].removed, g.vertex("4"));
  EXPECT_DOUBLE_EQ(r.trace.removals[1].incident_weight, 0.5);

  ASSERT_EQ(r.trace.records.size(), 3u);
  EXPECT_NEAR(r.trace.records[0].sigma, 0.48, 1e-12);
  EXPECT_NEAR(r.trace.records[1].sigma, 0.6, 1e-12);
  EXPECT_NEAR(r.trace.records[2].sigma, 1.9 / 3.0, 1e-12);
}

TEST(Peel, StopsAtTheSizeFloor) {
  const auto g = graph_x();
  const auto r = peel_at_least_p(g, labeled(g, {"1", "2", "3", "4"}), 3);
  ASSERT_TRUE(r.best);
  EXPECT_EQ(*r.best, labeled(g, {"1", "3", "4"}));
  ASSERT_EQ(r.trace.removals.size(), 1u);
  EXPECT_EQ(r.trace.removals[0].removed, g.vertex("2"));
  ASSERT_EQ(r.trace.records.size(), 2u);
  EXPECT_NEAR(r.trace.records[0].sigma, 0.35, 1e-12);
  EXPECT_NEAR(r.trace.records[1].sigma, 1.4 / 3.0, 1e-12);
}

TEST(Peel, TooSmallCandidate) {
  const auto g = graph_x();
  const auto r = peel_at_least_p(g, labeled(g, {"1", "2"}), 3);
  EXPECT_FALSE(r.best);
  EXPECT_TRUE(r.trace.records.empty());
}

TEST(Peel, TiesGoToTheSmallerIndexAndSmallerSet) {
  // Four vertices, no potential edges: every set scores 0, so peeling runs
  // to the floor removing 0, 1, ... and keeps the smallest set.
  const auto g = parse_graph(std::string_view("F a b\nF b c\nF c d\n"));
  const auto r = peel_at_least_p(g, everything(g), 2);
  ASSERT_TRUE(r.best);
  EXPECT_EQ(*r.best, labeled(g, {"c", "d"}));
  EXPECT_EQ(r.trace.removals[0].removed, g.vertex("a"));
  EXPECT_EQ(r.trace.removals[1].removed, g.vertex("b"));
}

TEST(PostProcess, SwapRepairsGraphXPeel) {
  const auto g = graph_x();
  Solution s;
  s.group = labeled(g, {"1", "3", "5"});
  const Query q{2, 3};
  const auto out = post_process(g, s, q, everything(g));
  EXPECT_EQ(out.group, labeled(g, {"1", "3", "4"}));
  EXPECT_TRUE(out.strictly_feasible);
  EXPECT_EQ(out.max_hop, 2);
  EXPECT_DOUBLE_EQ(out.sigma, 1.4 / 3.0);
}

TEST(PostProcess, FeasibleInputIsReturnedRecomputed) {
  const auto g = graph_x();
  Solution s;
  s.group = labeled(g, {"1", "3", "4"});
  s.sigma = 99.0;
  s.max_hop = 7;
  const auto out = post_process(g, s, {2, 3}, everything(g));
  EXPECT_EQ(out.group, s.group);
  EXPECT_TRUE(out.strictly_feasible);
  EXPECT_EQ(out.max_hop, 2);
  EXPECT_DOUBLE_EQ(out.sigma, 1.4 / 3.0);
}

TEST(PostProcess, DropsTheWorstOffenderAboveTheFloor) {
  // Triangle a-b-c with a tail c-d-e; e is 3 hops from a and b.
  const auto g = parse_graph(std::string_view(
      "F a b\nF b c\nF a c\nF c d\nF d e\n"
      "P b e 0.9\nP a d 0.3\n"));
  Solution s;
  s.group = labeled(g, {"a", "b", "c", "e"});
  const auto out = post_process(g, s, {2, 3}, everything(g));
  EXPECT_EQ(out.group, labeled(g, {"a", "b", "c"}));
  EXPECT_TRUE(out.strictly_feasible);
}

TEST(PostProcess, OffenderTieGoesToSmallerIncidentWeight) {
  // Path a-b-c-d-e; at h=2 only the pair a-e is too far apart.
  const auto g = parse_graph(std::string_view(
      "F a b\nF b c\nF c d\nF d e\nP a e 0.9\nP a c 0.1\n"));
  Solution s;
  s.group = labeled(g, {"a", "c", "e"});
  const auto out = post_process(g, s, {4, 2}, everything(g));
  EXPECT_TRUE(out.strictly_feasible);  // already within 4 hops
  const auto tight = post_process(g, s, {2, 2}, everything(g));
  // a-e is the only violation; a and e tie on count, a (1.0) outweighs e
  // (0.9), so e goes.
  EXPECT_EQ(tight.group, labeled(g, {"a", "c"}));
}

TEST(PostProcess, UnrepairableInputIsFlagged) {
  const auto g = parse_graph(std::string_view("F a b\nF c d\nP a c 0.4\nP b d 0.3\n"));
  Solution s;
  s.group = labeled(g, {"a", "c"});
  // With the whole graph to draw from, swapping a for d would repair it.
  EXPECT_TRUE(post_process(g, s, {1, 2}, everything(g)).strictly_feasible);
  const auto out = post_process(g, s, {1, 2}, s.group);
  EXPECT_EQ(out.group, s.group);
  EXPECT_FALSE(out.strictly_feasible);
  EXPECT_EQ(out.max_hop, kInfiniteHops);
}

TEST(ProcessCandidate, GraphXCenters) {
  const auto g = graph_x();
  const auto r1 = process_candidate(g, g.vertex("1"), {2, 3});
  EXPECT_DOUBLE_EQ(r1.upper_bound, 1.4 / 3.0);
  ASSERT_TRUE(r1.best_strict);
  EXPECT_EQ(r1.best_strict->group, labeled(g, {"1", "3", "4"}));

  const auto r3 = process_candidate(g, g.vertex("3"), {2, 3});
  EXPECT_DOUBLE_EQ(r3.upper_bound, 0.8);
  ASSERT_TRUE(r3.best_relaxed);
  EXPECT_EQ(r3.best_relaxed->group, labeled(g, {"1", "3", "5"}));
  EXPECT_FALSE(r3.best_relaxed->strictly_feasible);
  EXPECT_EQ(r3.best_relaxed->max_hop, 3);
  ASSERT_TRUE(r3.best_strict);
  EXPECT_EQ(r3.best_strict->group, labeled(g, {"1", "3", "4"}));
}

TEST(SolveMaxGF, GraphX) {
  const auto g = graph_x();
  const auto a = solve_maxgf(g, {2, 3});
  ASSERT_TRUE(a);
  EXPECT_EQ(a->group, labeled(g, {"1", "3", "4"}));
  EXPECT_TRUE(a->strictly_feasible);
  EXPECT_DOUBLE_EQ(a->sigma, 1.4 / 3.0);
  EXPECT_EQ(a->solver, "maxgf");

  const auto b = solve_maxgf(g, {3, 3});
  ASSERT_TRUE(b);
  EXPECT_EQ(b->group, labeled(g, {"1", "3", "5"}));
  EXPECT_TRUE(b->strictly_feasible);
}

TEST(SolveMaxGF, AbsentAndStrictOnly) {
  const auto g = graph_x();
  EXPECT_FALSE(solve_maxgf(g, {2, 6}));

  // Candidates are 2-vertex balls, so nothing reaches p = 3.
  const auto split = parse_graph(std::string_view("F a b\nF c d\nP a c 0.4\nP b d 0.3\n"));
  EXPECT_TRUE(solve_maxgf(split, {1, 2})->strictly_feasible);
  EXPECT_FALSE(solve_maxgf(split, {1, 3}));

  // The leaves of a star peel out as the densest triple but are 2 hops
  // apart, and no swap can fix that.
  const auto star = parse_graph(std::string_view(
      "F v x\nF v y\nF v z\nP x y 0.5\nP y z 0.5\nP x z 0.5\n"));
  const auto relaxed = solve_maxgf(star, {1, 3});
  ASSERT_TRUE(relaxed);
  EXPECT_EQ(relaxed->group, labeled(star, {"x", "y", "z"}));
  EXPECT_FALSE(relaxed->strictly_feasible);
  EXPECT_EQ(relaxed->max_hop, 2);
  MaxGFConfig strict;
  strict.strict_only = true;
  EXPECT_FALSE(solve_maxgf(star, {1, 3}, strict));
}

TEST(SolveMaxGF, PruningSkipsDominatedCandidates) {
  // Two far-apart clusters; once the heavy one is found the light one is
  // pruned.
  const auto g = parse_graph(std::string_view(
      "F a b\nF b c\nF c x\nF x y\nF y z\nF z d\nF d e\nF e f\n"
      "P a c 0.9\nP d f 0.1\n"));
  const auto r = solve_maxgf_detailed(g, {2, 2});
  ASSERT_TRUE(r.solution);
  EXPECT_GT(r.candidates_pruned, 0u);
  EXPECT_EQ(r.candidates_examined + r.candidates_pruned, g.vertex_count());
  MaxGFConfig off;
  off.prune = false;
  const auto full = solve_maxgf_detailed(g, {2, 2}, off);
  EXPECT_EQ(full.candidates_pruned, 0u);
  EXPECT_EQ(full.solution->group, r.solution->group);
}

class MaxGFProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(MaxGFProperties, AgainstTheOracle) {
  const std::uint64_t seed = GetParam();
  const std::size_t n = 5 + seed % 10;
  const auto g = random_graph(seed + 1000, n, seed % 2 ? 0.2 : 0.35, 0.3);
  for (int h = 1; h <= 3; ++h) {
    for (int p = 1; p <= 4; ++p) {
      const Query q{h, p};
      SCOPED_TRACE("h=" + std::to_string(h) + " p=" + std::to_string(p));
      const auto opt = brute_force_oracle(g, q);
      const auto r = solve_maxgf_detailed(g, q);
      // A feasible group lies inside the ball of each of its members, so
      // some candidate is large enough whenever the optimum exists.
      if (opt) {
        ASSERT_TRUE(r.solution);
      }
      if (!r.solution) {
        for (VertexId v = 0; v < n; ++v) EXPECT_LT(ball(g, v, h).size(), std::size_t(p));
        continue;
      }
      ASSERT_TRUE(r.best_relaxed);

      // The peel result is a 1/3 approximation within 2h hops.
      EXPECT_LE(r.best_relaxed->max_hop, 2 * h);
      EXPECT_GE(r.best_relaxed->group.size(), static_cast<std::size_t>(p));
      if (opt) {
        EXPECT_GE(r.best_relaxed->sigma * 3.0, opt->sigma * (1.0 - 1e-12));
      }

      const auto& s = *r.solution;
      EXPECT_EQ(s.strictly_feasible, is_feasible(g, s.group, q));
      EXPECT_NEAR(s.sigma, average_weight(g, s.group), 1e-12);
      if (s.strictly_feasible) {
        ASSERT_TRUE(opt);
        EXPECT_LE(s.sigma, opt->sigma + 1e-12);
      }
      if (!opt) {
        EXPECT_FALSE(s.strictly_feasible);
      }

      MaxGFConfig cfg;
      cfg.prune = false;
      EXPECT_EQ(solve_maxgf(g, q, cfg)->group, s.group);
      cfg.prune = true;
      cfg.threads = 3;
      EXPECT_EQ(solve_maxgf(g, q, cfg)->group, s.group);

      const auto half = solve_maxgf(g.with_scaled_weights(0.5), q);
      EXPECT_EQ(half->group, s.group);
      EXPECT_EQ(half->sigma, s.sigma * 0.5);

      MaxGFConfig tight;
      tight.radius_mode = RadiusMode::kTight;
      const auto t = solve_maxgf_detailed(g, q, tight);
      // Tight candidates are smaller and may all fall below p.
      if (t.best_relaxed) {
        EXPECT_LE(t.best_relaxed->max_hop, 2 * candidate_radius(h, RadiusMode::kTight));
      }
    }
  }
}

TEST_P(MaxGFProperties, PostProcessingNeverWidensOrShrinksBelowP) {
  const std::uint64_t seed = GetParam();
  const auto g = random_graph(seed + 2000, 6 + seed % 10, 0.25, 0.4);
  for (int h = 1; h <= 3; ++h) {
    for (int p = 1; p <= 4; ++p) {
      const Query q{h, p};
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const Group c = candidate(g, v, q, {});
        const auto peel = peel_at_least_p(g, c, p);
        if (!peel.best) continue;
        Solution relaxed = evaluate_group(g, *peel.best, q, "maxgf");
        const auto out = post_process(g, relaxed, q, c);
        EXPECT_LE(out.max_hop, relaxed.max_hop);
        EXPECT_GE(out.group.size(), static_cast<std::size_t>(p));
        EXPECT_EQ(out.strictly_feasible, is_feasible(g, out.group, q));
        if (relaxed.strictly_feasible) {
          EXPECT_EQ(out.group, relaxed.group);
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, MaxGFProperties, ::testing::Range<std::uint64_t>(0, 40));

}  // namespace
}  // namespace hmgf
