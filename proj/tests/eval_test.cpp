#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "hmgf/dks.hpp"
#include "hmgf/exact.hpp"
#include "hmgf/experiment.hpp"
#include "hmgf/generate.hpp"
#include "hmgf/graph_io.hpp"
#include "hmgf/maxgf.hpp"
#include "hmgf/metrics.hpp"
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

Solution with_hop(int max_hop, int h) {
  Solution s;
  s.group = Group{0, 1};
  s.max_hop = max_hop;
  s.strictly_feasible = max_hop <= h;
  return s;
}

Solution with_sigma(double sigma) {
  Solution s;
  s.sigma = sigma;
  s.strictly_feasible = true;
  return s;
}

TEST(Dks, GraphX) {
  const auto g = graph_x();
  const auto s = dks_comparator(g, {2, 3});
  EXPECT_EQ(s.group, labeled(g, {"2", "3", "4"}));
  EXPECT_EQ(s.sigma, 0.0);
  EXPECT_TRUE(s.strictly_feasible);
  EXPECT_EQ(s.solver, "dks");
}

TEST(Dks, WholeSetAndTooLarge) {
  const auto g = graph_x();
  EXPECT_EQ(dks_comparator(g, {2, 5}).group, everything(g));
  EXPECT_FALSE(dks_comparator(g, {2, 5}).strictly_feasible);  // d(1,5) = 3
  EXPECT_THROW(dks_comparator(g, {2, 6}), std::invalid_argument);
  EXPECT_THROW(dks_comparator(g, {0, 3}), std::invalid_argument);
}

TEST(Dks, WithoutFriendsMatchesPotentialPeeling) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_graph(seed, 12, 0.0, 0.4);
    for (int p = 1; p <= 5; ++p) {
      // The peel trace runs down to exactly p.
      const auto trace = peel_at_least_p(g, everything(g), p).trace;
      std::vector<VertexId> left;
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        bool removed = false;
        for (const auto& step : trace.removals) removed |= step.removed == v;
        if (!removed) left.push_back(v);
      }
      EXPECT_EQ(dks_comparator(g, {1, p}).group, Group(left)) << seed << " " << p;
    }
  }
}

TEST(FeaRatio, Examples) {
  Batch b;
  int i = 0;
  for (int hop : {2, 2, 3, 2}) {
    BatchEntry e;
    e.instance = std::to_string(i++);
    e.query = {2, 2};
    e.solutions.emplace("maxgf", with_hop(hop, 2));
    b.push_back(e);
  }
  EXPECT_DOUBLE_EQ(fea_ratio(b, "maxgf"), 0.75);
  b[2].solutions["maxgf"] = with_hop(1, 2);
  EXPECT_DOUBLE_EQ(fea_ratio(b, "maxgf"), 1.0);
  // Instances without a returned solution are not counted.
  b[0].solutions["maxgf"] = std::nullopt;
  b[1].solutions["maxgf"] = with_hop(5, 2);
  EXPECT_DOUBLE_EQ(fea_ratio(b, "maxgf"), 2.0 / 3.0);

  EXPECT_THROW(fea_ratio({}, "maxgf"), std::invalid_argument);
  EXPECT_THROW(fea_ratio(b, "dks"), std::invalid_argument);
}

TEST(ObjRatio, GraphX) {
  const auto g = graph_x();
  const Query q{2, 3};
  BatchEntry e;
  e.instance = "graph-x";
  e.query = q;
  e.optimal = solve_exact(g, q);
  e.solutions.emplace("maxgf", solve_maxgf(g, q));
  e.solutions.emplace("dks", dks_comparator(g, q));
  const Batch b{e};
  EXPECT_DOUBLE_EQ(fea_ratio(b, "maxgf"), 1.0);
  EXPECT_DOUBLE_EQ(obj_ratio(b, "maxgf").mean, 1.0);
  EXPECT_DOUBLE_EQ(obj_ratio(b, "dks").mean, 0.0);
}

TEST(ObjRatio, MissingZeroAndAbsent) {
  Batch b(3);
  b[0].optimal = with_sigma(0.5);
  b[0].solutions.emplace("maxgf", with_sigma(0.25));
  b[1].optimal = with_sigma(0.0);
  b[1].solutions.emplace("maxgf", with_sigma(0.0));
  b[2].optimal = with_sigma(0.8);
  b[2].solutions.emplace("maxgf", std::nullopt);  // counts as 0
  const auto r = obj_ratio(b, "maxgf");
  EXPECT_DOUBLE_EQ(r.mean, 0.25);
  EXPECT_EQ(r.counted, 2u);
  EXPECT_EQ(r.zero_optimum, 1u);

  b[0].optimal.reset();
  EXPECT_THROW(obj_ratio(b, "maxgf"), std::invalid_argument);
  EXPECT_THROW(obj_ratio(Batch(1, b[1]), "maxgf"), std::invalid_argument);
}

TEST(GenRandom, DeterministicInTheSpec) {
  const GenSpec spec{40, 0.2, 0.3, 7};
  EXPECT_EQ(write_graph(gen_random(spec)), write_graph(gen_random(spec)));
  EXPECT_NE(write_graph(gen_random(spec)), write_graph(gen_random({40, 0.2, 0.3, 8})));
}

TEST(GenRandom, EdgelessAndComplete) {
  const auto none = gen_random({10, 0.0, 0.0, 1});
  EXPECT_EQ(none.vertex_count(), 10u);
  EXPECT_EQ(none.friend_edge_count() + none.potential_edge_count(), 0u);
  EXPECT_EQ(none.label(3), "3");

  EXPECT_EQ(gen_random({12, 1.0, 0.5, 1}).friend_edge_count(), 66u);
  const auto all_potential = gen_random({12, 0.0, 1.0, 1});
  EXPECT_EQ(all_potential.potential_edge_count(), 66u);
  EXPECT_EQ(all_potential.friend_edge_count(), 0u);

  EXPECT_EQ(gen_random({1, 1.0, 1.0, 1}).vertex_count(), 1u);
  EXPECT_EQ(gen_random({0, 0.5, 0.5, 1}).vertex_count(), 0u);
  EXPECT_THROW(gen_random({5, 1.5, 0.0, 1}), std::invalid_argument);
  EXPECT_THROW(gen_random({5, 0.0, -0.1, 1}), std::invalid_argument);
}

TEST(GenRandom, WeightsAndEdgeRates) {
  const GenSpec spec{400, 0.05, 0.1, 11};
  const auto g = gen_random(spec);
  for (const auto& e : g.potential_edge_list()) {
    EXPECT_GT(e.weight, 0.0);
    EXPECT_LE(e.weight, 1.0);
  }
  // Binomial counts within five standard deviations.
  const double pairs = 400.0 * 399.0 / 2.0;
  const double pf = spec.friend_prob;
  const double pr = (1.0 - pf) * spec.potential_prob;
  EXPECT_NEAR(static_cast<double>(g.friend_edge_count()), pairs * pf,
              5.0 * std::sqrt(pairs * pf * (1.0 - pf)));
  EXPECT_NEAR(static_cast<double>(g.potential_edge_count()), pairs * pr,
              5.0 * std::sqrt(pairs * pr * (1.0 - pr)));

  // Every vertex pair position is reachable, including the last one.
  const auto dense = gen_random({30, 0.5, 1.0, 3});
  EXPECT_EQ(dense.friend_edge_count() + dense.potential_edge_count(), 435u);
  EXPECT_TRUE(dense.are_friends(28, 29) || dense.potential_weight(28, 29));
}

TEST(SampleSubgraph, Extremes) {
  const auto g = graph_x();
  EXPECT_EQ(write_graph(sample_subgraph(g, 5, 3)), write_graph(g));
  const auto one = sample_subgraph(g, 1, 3);
  EXPECT_EQ(one.vertex_count(), 1u);
  EXPECT_EQ(one.friend_edge_count() + one.potential_edge_count(), 0u);
  EXPECT_EQ(sample_subgraph(g, 0, 3).vertex_count(), 0u);
  EXPECT_THROW(sample_subgraph(g, 6, 3), std::invalid_argument);
}

TEST(SampleSubgraph, GraphXFromOne) {
  const auto g = graph_x();
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto s = sample_subgraph(g, 3, seed, g.vertex("1"));
    std::string labels;
    for (VertexId v = 0; v < s.vertex_count(); ++v) labels += s.label(v);
    seen.insert(labels);
  }
  EXPECT_EQ(seen, (std::set<std::string>{"123", "124"}));
}

TEST(SampleSubgraph, InducedOnBothRelations) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_graph(seed, 30, 0.08, 0.2);
    const auto s = sample_subgraph(g, 12, seed);
    ASSERT_EQ(s.vertex_count(), 12u);
    for (VertexId a = 0; a < s.vertex_count(); ++a) {
      if (a > 0) {
        EXPECT_LT(g.vertex(s.label(a - 1)), g.vertex(s.label(a)));  // order kept
      }
      for (VertexId b = a + 1; b < s.vertex_count(); ++b) {
        const VertexId u = g.vertex(s.label(a));
        const VertexId v = g.vertex(s.label(b));
        EXPECT_EQ(s.are_friends(a, b), g.are_friends(u, v));
        EXPECT_EQ(s.potential_weight(a, b), g.potential_weight(u, v));
      }
    }
    EXPECT_EQ(write_graph(s), write_graph(sample_subgraph(g, 12, seed)));
  }
}

TEST(SampleSubgraph, RestartsAcrossComponents) {
  const auto g = parse_graph(std::string_view("F a b\nF c d\nF e f\n"));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_EQ(sample_subgraph(g, 6, seed).vertex_count(), 6u);
    EXPECT_EQ(sample_subgraph(g, 4, seed).friend_edge_count(), 2u) << seed;
  }
}

ExperimentConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  return parse_experiment_config(in);
}

TEST(ExperimentConfig, ParsesEveryKey) {
  const auto c = parse_config(
      "# sweep over sizes\n"
      "sweep = n\n"
      "values = 8, 10,12\n"
      "solvers = maxgf,exact\n"
      "reps = 4\n"
      "seed = 99\n"
      "\n"
      "n = 9\nh = 3\np = 2\n"
      "friend_prob = 0.25\npotential_prob = 0.5\n"
      "graph = g.txt\noutput = out\nthreads = 2\nexact_max_ball = 30\n"
      "radius_mode = tight\nstrict_only = true\nprune = false\n");
  EXPECT_EQ(c.sweep, SweepVariable::kVertices);
  EXPECT_EQ(c.values, (std::vector<int>{8, 10, 12}));
  EXPECT_EQ(c.solvers, (std::vector<std::string>{"maxgf", "exact"}));
  EXPECT_EQ(c.reps, 4);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.n, 9);
  EXPECT_EQ(c.hops, 3);
  EXPECT_EQ(c.min_size, 2);
  EXPECT_EQ(c.friend_prob, 0.25);
  EXPECT_EQ(c.potential_prob, 0.5);
  EXPECT_EQ(c.graph, std::filesystem::path("g.txt"));
  EXPECT_EQ(c.output, std::filesystem::path("out"));
  EXPECT_EQ(c.threads, 2u);
  EXPECT_EQ(c.exact_max_ball, 30u);
  EXPECT_EQ(c.maxgf.radius_mode, RadiusMode::kTight);
  EXPECT_TRUE(c.maxgf.strict_only);
  EXPECT_FALSE(c.maxgf.prune);
}

TEST(ExperimentConfig, Errors) {
  const std::string ok = "sweep = h\nvalues = 2\nsolvers = maxgf\n";
  EXPECT_NO_THROW(parse_config(ok));
  EXPECT_THROW(parse_config("sweep = h\nvalues = 2\nsolvers =\n"), std::invalid_argument);
  EXPECT_THROW(parse_config(ok + "colour = red\n"), std::invalid_argument);
  EXPECT_THROW(parse_config(ok + "reps = many\n"), std::invalid_argument);
  EXPECT_THROW(parse_config(ok + "reps = 0\n"), std::invalid_argument);
  EXPECT_THROW(parse_config(ok + "solvers = maxgf,greedy\n"), std::invalid_argument);
  EXPECT_THROW(parse_config(ok + "values = 0\n"), std::invalid_argument);
  EXPECT_THROW(parse_config(ok + "strict_only = yes\n"), std::invalid_argument);
  EXPECT_THROW(parse_config(ok + "just text\n"), std::invalid_argument);
  try {
    parse_config(ok + "colour = red\n");
  } catch (const std::invalid_argument& e) {
    EXPECT_EQ(std::string(e.what()), "line 4: unknown key 'colour'");
  }
}

ExperimentConfig size_sweep() {
  ExperimentConfig c;
  c.sweep = SweepVariable::kVertices;
  c.values = {8, 10, 12};
  c.solvers = {"exact", "maxgf", "dks"};
  c.reps = 30;
  c.seed = 5;
  c.friend_prob = 0.3;
  c.potential_prob = 0.3;
  c.exact_max_ball = 64;
  return c;
}

class SizeSweep : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { report_ = new EvalReport(run_experiment(size_sweep())); }
  static void TearDownTestSuite() { delete report_; }
  static const EvalReport& report() { return *report_; }

 private:
  static EvalReport* report_;
};

EvalReport* SizeSweep::report_ = nullptr;

TEST_F(SizeSweep, RowAndAggregateCounts) {
  EXPECT_EQ(report().rows.size(), 270u);
  EXPECT_EQ(report().aggregates.size(), 9u);
  EXPECT_EQ(report().scenarios, (std::vector<std::string>{"n=8", "n=10", "n=12"}));
  EXPECT_TRUE(report().errors.empty());
}

TEST_F(SizeSweep, RowsAreSorted) {
  const auto& rows = report().rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].scenario, report().scenarios[i / 90]);
    EXPECT_EQ(rows[i].instance, (i % 90) / 3);
    EXPECT_EQ(rows[i].solver, (std::vector<std::string>{"dks", "exact", "maxgf"})[i % 3]);
  }
}

TEST_F(SizeSweep, CsvAndJsonRoundTrip) {
  const auto csv = rows_to_csv(report().rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "scenario,instance,solver,sigma,feasible,max_hop,size,elapsed_ms");
  EXPECT_EQ(rows_from_csv(csv), report().rows);
  const auto json = report_to_json(report());
  const auto from_json = rows_from_json(nlohmann::json::parse(json.dump())["rows"]);
  EXPECT_EQ(from_json, report().rows);
  EXPECT_EQ(rows_to_csv(from_json), csv);
}

TEST_F(SizeSweep, AggregatesFollowFromRows) {
  EXPECT_EQ(aggregate_rows(rows_from_csv(rows_to_csv(report().rows))), report().aggregates);
  const auto json = nlohmann::json::parse(report_to_json(report()).dump());
  EXPECT_EQ(json["aggregates"], aggregates_to_json(report().aggregates));
  for (const auto& a : report().aggregates) {
    EXPECT_EQ(a.rows, 30u);
    EXPECT_EQ(a.errors, 0u);
    if (a.solver == "exact") {
      EXPECT_EQ(a.fea_ratio, 1.0);
      EXPECT_EQ(a.obj_ratio, 1.0);
    }
    if (a.obj_ratio) {
      EXPECT_LE(*a.obj_ratio, 1.0 + 1e-12) << a.solver;
    }
    EXPECT_EQ(a.obj_counted + a.obj_zero_optimum + a.obj_missing_optimum, 30u);
  }
}

TEST_F(SizeSweep, IndependentOfThreadCount) {
  auto c = size_sweep();
  c.threads = 3;
  auto other = run_experiment(c);
  auto mine = report().rows;
  for (auto* rows : {&mine, &other.rows}) {
    for (auto& r : *rows) r.elapsed_ms = 0.0;
  }
  EXPECT_EQ(other.rows, mine);
}

TEST_F(SizeSweep, PlotTables) {
  const auto tables = plot_tables(report());
  ASSERT_EQ(tables.size(), 4u);
  const auto& fea = tables.at("plot_fea_ratio_vs_n.tsv");
  EXPECT_EQ(fea.substr(0, fea.find('\n')), "n\tdks\texact\tmaxgf");
  EXPECT_NE(fea.find("\n8\t"), std::string::npos);
  EXPECT_TRUE(tables.contains("plot_time_ms_vs_n.tsv"));
  EXPECT_TRUE(tables.contains("plot_obj_ratio_vs_n.tsv"));
}

TEST(Experiment, WritesReportFiles) {
  auto c = size_sweep();
  c.values = {6};
  c.reps = 3;
  const auto dir = std::filesystem::path(::testing::TempDir()) / "hmgf_report_test";
  std::filesystem::remove_all(dir);
  write_report(run_experiment(c), dir);
  for (const char* f : {"report.csv", "report.json", "plot_time_ms_vs_n.tsv",
                        "plot_sigma_vs_n.tsv", "plot_fea_ratio_vs_n.tsv",
                        "plot_obj_ratio_vs_n.tsv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  std::ifstream in(dir / "report.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "scenario,instance,solver,sigma,feasible,max_hop,size,elapsed_ms");
  std::filesystem::remove_all(dir);
}

TEST(Experiment, SolverFailuresBecomeErrorRows) {
  ExperimentConfig c;
  c.sweep = SweepVariable::kMinSize;
  c.values = {2};
  c.solvers = {"exact", "maxgf"};
  c.reps = 2;
  c.n = 30;
  c.friend_prob = 0.5;
  c.exact_max_ball = 5;  // every ball is larger
  const auto r = run_experiment(c);
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_EQ(r.rows[0].status, RowStatus::kError);
  EXPECT_FALSE(r.rows[0].sigma);
  EXPECT_EQ(r.rows[1].solver, "maxgf");
  EXPECT_NE(r.rows[1].status, RowStatus::kError);
  ASSERT_EQ(r.errors.size(), 2u);
  EXPECT_EQ(r.errors[0].solver, "exact");
  const auto& exact = r.aggregates[0];
  EXPECT_EQ(exact.errors, 2u);
  EXPECT_FALSE(exact.fea_ratio);
  EXPECT_FALSE(exact.time_mean_ms);
  EXPECT_EQ(r.aggregates[1].obj_missing_optimum, 2u);
  EXPECT_EQ(rows_from_csv(rows_to_csv(r.rows)), r.rows);
}

TEST(Experiment, HopSweepSharesInstancesAndRaisesFeasibility) {
  ExperimentConfig c;
  c.sweep = SweepVariable::kHops;
  c.values = {2, 3, 4};
  c.solvers = {"maxgf"};
  c.reps = 30;
  c.n = 14;
  c.min_size = 3;
  c.friend_prob = 0.2;
  c.potential_prob = 0.3;
  const auto r = run_experiment(c);
  std::vector<double> fea;
  for (const auto& a : r.aggregates) fea.push_back(a.fea_ratio.value());
  for (std::size_t i = 0; i + 1 < fea.size(); ++i) {
    const double sd = std::sqrt(fea[i] * (1.0 - fea[i]) / 30.0);
    EXPECT_GE(fea[i + 1], fea[i] - sd) << i;
  }
}

}  // namespace
}  // namespace hmgf
