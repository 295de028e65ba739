#include "hmgf/commands.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>

#include "hmgf/document.hpp"
#include "hmgf/dks.hpp"
#include "hmgf/exact.hpp"
#include "hmgf/experiment.hpp"
#include "hmgf/generate.hpp"
#include "hmgf/graph_io.hpp"
#include "hmgf/linkpred.hpp"
#include "hmgf/maxgf.hpp"

namespace hmgf {
namespace {

// Thrown by command bodies for conditions that map to an exit code without
// being errors of the library.
struct Exit {
  int code;
  std::string message;
};

struct SolveArgs {
  std::string graph;
  std::string solver = "maxgf";
  int hops = 0;
  int min_size = 0;
  std::string radius_mode = "guarantee";
  bool strict_only = false;
  bool no_prune = false;
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
  std::size_t max_ball = ExactConfig{}.max_ball_size;
  std::optional<long> time_budget_ms;
};

struct PredictArgs {
  std::string graph;
  std::string method;
  std::optional<std::size_t> top_k;
  std::optional<double> threshold;
  std::string output;
};

struct GenerateArgs {
  std::size_t n = 0;
  double friend_prob = 0.0;
  double potential_prob = 0.0;
  std::uint64_t seed = 0;
  std::string output;
};

struct EvaluateArgs {
  std::string config;
  std::string output;
  std::optional<unsigned> threads;
};

// Writes to `path`, or to `out` when no path is given.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) throw Exit{kExitUsage, "cannot write " + path};
}

int solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Query q{a.hops, a.min_size};
  q.validate();
  const HeteroGraph g = read_graph_file(a.graph);
  if (static_cast<std::size_t>(q.min_size) > g.vertex_count()) {
    throw Exit{kExitNoSolution, "no group of " + std::to_string(q.min_size) + " in a graph of " +
                                    std::to_string(g.vertex_count()) + " vertices"};
  }

  using Json = nlohmann::ordered_json;
  Json config = {{"seed", a.seed ? Json(*a.seed) : Json(nullptr)}};
  std::optional<Solution> s;
  if (a.solver == "exact") {
    ExactConfig cfg;
    cfg.max_ball_size = a.max_ball;
    cfg.prune = !a.no_prune;
    cfg.threads = a.threads;
    if (a.time_budget_ms) cfg.time_budget = std::chrono::milliseconds(*a.time_budget_ms);
    config["max_ball_size"] = cfg.max_ball_size;
    config["time_budget_ms"] = a.time_budget_ms ? Json(*a.time_budget_ms) : Json(nullptr);
    config["prune"] = cfg.prune;
    try {
      s = solve_exact(g, q, cfg);
    } catch (const BallTooLarge& e) {
      throw Exit{kExitResource, "ball around vertex '" + g.label(e.center()) + "' has " +
                                    std::to_string(e.size()) +
                                    " vertices, above the exact solver limit of " +
                                    std::to_string(cfg.max_ball_size)};
    }
  } else if (a.solver == "maxgf") {
    MaxGFConfig cfg;
    cfg.radius_mode = parse_radius_mode(a.radius_mode);
    cfg.strict_only = a.strict_only;
    cfg.prune = !a.no_prune;
    cfg.threads = a.threads;
    config["radius_mode"] = radius_mode_name(cfg.radius_mode);
    config["strict_only"] = cfg.strict_only;
    config["prune"] = cfg.prune;
    s = solve_maxgf(g, q, cfg);
  } else {
    s = dks_comparator(g, q);
  }
  if (!s) throw Exit{kExitNoSolution, "no feasible group"};
  if (!s->strictly_feasible) err << "warning: returned group violates the hop constraint\n";
  out << solution_document(g, *s, q, config).dump(2) << '\n';
  return kExitOk;
}

int predict(const PredictArgs& a, std::ostream& out) {
  const LinkMethod method = parse_link_method(a.method);
  if (a.top_k.has_value() == a.threshold.has_value()) {
    throw Exit{kExitUsage, "exactly one of --top-k and --threshold is required"};
  }
  SelectionPolicy policy;
  if (a.top_k) {
    policy.mode = TopK{*a.top_k};
  } else {
    policy.mode = Threshold{*a.threshold};
  }
  policy.validate();
  const HeteroGraph g = read_graph_file(a.graph);
  emit(write_graph(predict_potential_edges(g, method, policy)), a.output, out);
  return kExitOk;
}

int generate(const GenerateArgs& a, std::ostream& out) {
  emit(write_graph(gen_random({a.n, a.friend_prob, a.potential_prob, a.seed})), a.output, out);
  return kExitOk;
}

int evaluate(const EvaluateArgs& a, std::ostream& err) {
  ExperimentConfig cfg = read_experiment_config(a.config);
  if (!a.output.empty()) cfg.output = a.output;
  if (a.threads) cfg.threads = *a.threads;
  const EvalReport report = run_experiment(cfg);
  write_report(report, cfg.output);
  for (const auto& e : report.errors) {
    err << "warning: " << e.scenario << " instance " << e.instance << " " << e.solver << ": "
        << e.message << '\n';
  }
  err << "wrote " << report.rows.size() << " rows to " << cfg.output.string() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hop-bounded maximum group friending"};
  app.name("hmgf");
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "find a group in a graph file");
  solve_cmd->add_option("--graph", sa.graph, "graph file")->required();
  solve_cmd->add_option("--solver", sa.solver, "maxgf, exact or dks")
      ->check(CLI::IsMember({"maxgf", "exact", "dks"}));
  solve_cmd->add_option("--hops", sa.hops, "hop constraint h")->required();
  solve_cmd->add_option("--min-size", sa.min_size, "minimum group size p")->required();
  solve_cmd->add_option("--radius-mode", sa.radius_mode, "maxgf candidate radius")
      ->check(CLI::IsMember({"guarantee", "tight"}));
  solve_cmd->add_flag("--strict-only", sa.strict_only, "maxgf: never return a violating group");
  solve_cmd->add_flag("--no-prune", sa.no_prune, "disable bound pruning");
  solve_cmd->add_option("--threads", sa.threads, "worker threads")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", sa.seed, "recorded in the output; solvers are deterministic");
  solve_cmd->add_option("--max-ball", sa.max_ball, "exact: largest h-ball accepted");
  solve_cmd->add_option("--time-budget-ms", sa.time_budget_ms, "exact: give up after this long")
      ->check(CLI::NonNegativeNumber);

  PredictArgs pa;
  auto* predict_cmd = app.add_subcommand("predict", "add predicted potential edges");
  predict_cmd->add_option("--graph", pa.graph, "graph file")->required();
  predict_cmd->add_option("--method", pa.method, "cn, jaccard or aa")->required();
  predict_cmd->add_option("--top-k", pa.top_k, "keep the k heaviest pairs");
  predict_cmd->add_option("--threshold", pa.threshold, "keep pairs with weight at least T");
  predict_cmd->add_option("-o,--output", pa.output, "output file (default: standard output)");

  GenerateArgs ga;
  auto* generate_cmd = app.add_subcommand("generate", "write a random graph");
  generate_cmd->add_option("--n", ga.n, "vertex count")->required();
  generate_cmd->add_option("--friend-prob", ga.friend_prob, "friend edge probability")->required();
  generate_cmd->add_option("--potential-prob", ga.potential_prob, "potential edge probability")
      ->required();
  generate_cmd->add_option("--seed", ga.seed, "random seed")->required();
  generate_cmd->add_option("-o,--output", ga.output, "output file (default: standard output)");

  EvaluateArgs ea;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "run an experiment sweep");
  evaluate_cmd->add_option("--config", ea.config, "key=value experiment file")->required();
  evaluate_cmd->add_option("--output", ea.output, "report directory (overrides the config)");
  evaluate_cmd->add_option("--threads", ea.threads, "instances solved concurrently")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return solve(sa, out, err);
    if (*predict_cmd) return predict(pa, out);
    if (*generate_cmd) return generate(ga, out);
    return evaluate(ea, err);
  } catch (const Exit& e) {
    err << (e.code == kExitNoSolution ? "no solution: " : "error: ") << e.message << '\n';
    return e.code;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace hmgf
