#include "hmgf/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "hmgf/dks.hpp"
#include "hmgf/exact.hpp"
#include "hmgf/generate.hpp"
#include "hmgf/graph_io.hpp"
#include "parallel.hpp"

namespace hmgf {
namespace {

using nlohmann::json;

const std::set<std::string, std::less<>> kSolvers = {"dks", "exact", "maxgf"};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  for (std::size_t pos = 0;;) {
    const auto comma = s.find(',', pos);
    if (auto item = trim(s.substr(pos, comma - pos)); !item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view s, std::string_view key) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad value '" + std::string(s) + "' for " + std::string(key));
  }
  return value;
}

bool parse_bool(std::string_view s, std::string_view key) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("bad value '" + std::string(s) + "' for " + std::string(key) +
                              " (expected true or false)");
}

void set_key(ExperimentConfig& c, std::string_view key, std::string_view value) {
  if (key == "sweep") {
    if (value == "n") {
      c.sweep = SweepVariable::kVertices;
    } else if (value == "h") {
      c.sweep = SweepVariable::kHops;
    } else if (value == "p") {
      c.sweep = SweepVariable::kMinSize;
    } else {
      throw std::invalid_argument("sweep must be n, h or p");
    }
  } else if (key == "values") {
    c.values.clear();
    for (auto v : split_list(value)) c.values.push_back(parse_number<int>(v, key));
  } else if (key == "solvers") {
    c.solvers.clear();
    for (auto v : split_list(value)) c.solvers.emplace_back(v);
  } else if (key == "reps") {
    c.reps = parse_number<int>(value, key);
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(value, key);
  } else if (key == "n") {
    c.n = parse_number<int>(value, key);
  } else if (key == "h") {
    c.hops = parse_number<int>(value, key);
  } else if (key == "p") {
    c.min_size = parse_number<int>(value, key);
  } else if (key == "friend_prob") {
    c.friend_prob = parse_number<double>(value, key);
  } else if (key == "potential_prob") {
    c.potential_prob = parse_number<double>(value, key);
  } else if (key == "graph") {
    c.graph = std::filesystem::path(value);
  } else if (key == "output") {
    c.output = std::filesystem::path(value);
  } else if (key == "threads") {
    c.threads = parse_number<unsigned>(value, key);
  } else if (key == "exact_max_ball") {
    c.exact_max_ball = parse_number<std::size_t>(value, key);
  } else if (key == "radius_mode") {
    c.maxgf.radius_mode = parse_radius_mode(value);
  } else if (key == "strict_only") {
    c.maxgf.strict_only = parse_bool(value, key);
  } else if (key == "prune") {
    c.maxgf.prune = parse_bool(value, key);
  } else {
    throw std::invalid_argument("unknown key '" + std::string(key) + "'");
  }
}

struct Scenario {
  std::string label;
  int n;
  Query query;
};

std::vector<Scenario> scenarios_of(const ExperimentConfig& c) {
  std::vector<Scenario> out;
  for (int v : c.values) {
    Scenario s{std::string(sweep_variable_name(c.sweep)) + "=" + std::to_string(v), c.n,
               {c.hops, c.min_size}};
    switch (c.sweep) {
      case SweepVariable::kVertices: s.n = v; break;
      case SweepVariable::kHops: s.query.hops = v; break;
      case SweepVariable::kMinSize: s.query.min_size = v; break;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Depends only on the graph size and repetition, so h and p sweeps reuse
// the same instances.
std::uint64_t instance_seed(std::uint64_t base, int n, int rep) {
  return splitmix(base ^ splitmix(static_cast<std::uint64_t>(n) ^
                                  splitmix(static_cast<std::uint64_t>(rep))));
}

std::optional<Solution> run_solver(const std::string& solver, const HeteroGraph& g,
                                   const Query& q, const ExperimentConfig& c) {
  if (solver == "exact") {
    ExactConfig ec;
    ec.max_ball_size = c.exact_max_ball;
    return solve_exact(g, q, ec);
  }
  if (solver == "maxgf") {
    MaxGFConfig mc = c.maxgf;
    mc.threads = 1;
    return solve_maxgf(g, q, mc);
  }
  return dks_comparator(g, q);
}

}  // namespace

std::string_view sweep_variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::kVertices: return "n";
    case SweepVariable::kHops: return "h";
    case SweepVariable::kMinSize: return "p";
  }
  return "n";
}

void ExperimentConfig::validate() const {
  if (values.empty()) throw std::invalid_argument("values must list at least one value");
  if (solvers.empty()) throw std::invalid_argument("solvers must list at least one solver");
  std::set<std::string_view> seen;
  for (const auto& s : solvers) {
    if (!kSolvers.contains(s)) throw std::invalid_argument("unknown solver '" + s + "'");
    if (!seen.insert(s).second) throw std::invalid_argument("solver '" + s + "' listed twice");
  }
  if (reps < 1) throw std::invalid_argument("reps must be ≥ 1");
  if (threads < 1) throw std::invalid_argument("threads must be ≥ 1");
  GenSpec{0, friend_prob, potential_prob, 0}.validate();
  for (const auto& s : scenarios_of(*this)) {
    s.query.validate();
    if (s.n < 1) throw std::invalid_argument("n must be ≥ 1");
  }
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig c;
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    const auto text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    try {
      if (eq == std::string_view::npos) throw std::invalid_argument("expected key=value");
      set_key(c, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line) + ": " + e.what());
    }
  }
  c.validate();
  return c;
}

ExperimentConfig read_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config " + path.string());
  return parse_experiment_config(in);
}

EvalReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  EvalReport report;
  report.config = cfg;
  const auto scenarios = scenarios_of(cfg);
  for (const auto& s : scenarios) report.scenarios.push_back(s.label);

  std::optional<HeteroGraph> base;
  if (cfg.graph) {
    base = read_graph_file(*cfg.graph);
    for (const auto& s : scenarios) {
      if (static_cast<std::size_t>(s.n) > base->vertex_count()) {
        throw std::invalid_argument("n = " + std::to_string(s.n) + " exceeds the " +
                                    std::to_string(base->vertex_count()) + " vertices of " +
                                    cfg.graph->string());
      }
    }
  }

  std::vector<std::string> solvers = cfg.solvers;
  std::sort(solvers.begin(), solvers.end());
  const std::size_t reps = static_cast<std::size_t>(cfg.reps);
  const std::size_t tasks = scenarios.size() * reps;
  std::vector<std::vector<ReportRow>> rows(tasks);
  std::vector<std::vector<ReportError>> errors(tasks);

  detail::parallel_for(tasks, cfg.threads, [&](unsigned, std::size_t t) {
    const Scenario& sc = scenarios[t / reps];
    const int rep = static_cast<int>(t % reps);
    const std::uint64_t seed = instance_seed(cfg.seed, sc.n, rep);
    const HeteroGraph g =
        base ? sample_subgraph(*base, static_cast<std::size_t>(sc.n), seed)
             : gen_random({static_cast<std::size_t>(sc.n), cfg.friend_prob, cfg.potential_prob,
                           seed});
    for (const auto& solver : solvers) {
      ReportRow row;
      row.scenario = sc.label;
      row.instance = static_cast<std::size_t>(rep);
      row.solver = solver;
      const auto start = std::chrono::steady_clock::now();
      try {
        const auto s = run_solver(solver, g, sc.query, cfg);
        if (s) {
          row.sigma = s->sigma;
          row.status = s->strictly_feasible ? RowStatus::kFeasible : RowStatus::kInfeasible;
          row.max_hop = s->max_hop;
          row.size = s->group.size();
        }
      } catch (const std::exception& e) {
        row.status = RowStatus::kError;
        errors[t].push_back({sc.label, row.instance, solver, e.what()});
      }
      row.elapsed_ms = Milliseconds(std::chrono::steady_clock::now() - start).count();
      rows[t].push_back(std::move(row));
    }
  });

  for (std::size_t t = 0; t < tasks; ++t) {
    for (auto& r : rows[t]) report.rows.push_back(std::move(r));
    for (auto& e : errors[t]) report.errors.push_back(std::move(e));
  }
  report.aggregates = aggregate_rows(report.rows);
  return report;
}

json report_to_json(const EvalReport& report) {
  const auto& c = report.config;
  json config = {{"sweep", sweep_variable_name(c.sweep)},
                 {"values", c.values},
                 {"solvers", c.solvers},
                 {"reps", c.reps},
                 {"seed", c.seed},
                 {"n", c.n},
                 {"h", c.hops},
                 {"p", c.min_size},
                 {"friend_prob", c.friend_prob},
                 {"potential_prob", c.potential_prob},
                 {"graph", c.graph ? json(c.graph->string()) : json(nullptr)},
                 {"exact_max_ball", c.exact_max_ball},
                 {"radius_mode", radius_mode_name(c.maxgf.radius_mode)},
                 {"strict_only", c.maxgf.strict_only},
                 {"prune", c.maxgf.prune}};
  json errors = json::array();
  for (const auto& e : report.errors) {
    errors.push_back({{"scenario", e.scenario},
                      {"instance", e.instance},
                      {"solver", e.solver},
                      {"message", e.message}});
  }
  return {{"config", std::move(config)},
          {"scenarios", report.scenarios},
          {"rows", rows_to_json(report.rows)},
          {"aggregates", aggregates_to_json(report.aggregates)},
          {"errors", std::move(errors)}};
}

std::map<std::string, std::string> plot_tables(const EvalReport& report) {
  using Field = std::optional<double> Aggregate::*;
  std::vector<std::pair<std::string, Field>> metrics = {{"time_ms", &Aggregate::time_mean_ms},
                                                        {"sigma", &Aggregate::sigma_mean},
                                                        {"fea_ratio", &Aggregate::fea_ratio}};
  std::vector<std::string> solvers = report.config.solvers;
  std::sort(solvers.begin(), solvers.end());
  if (std::find(solvers.begin(), solvers.end(), "exact") != solvers.end()) {
    metrics.emplace_back("obj_ratio", &Aggregate::obj_ratio);
  }

  const std::string var(sweep_variable_name(report.config.sweep));
  std::map<std::string, std::string> out;
  for (const auto& [metric, field] : metrics) {
    std::ostringstream tsv;
    tsv << var;
    for (const auto& s : solvers) tsv << '\t' << s;
    tsv << '\n';
    for (std::size_t i = 0; i < report.scenarios.size(); ++i) {
      tsv << report.config.values[i];
      for (const auto& s : solvers) {
        tsv << '\t';
        for (const auto& a : report.aggregates) {
          if (a.scenario == report.scenarios[i] && a.solver == s && (a.*field)) {
            tsv << format_number(*(a.*field));
          }
        }
      }
      tsv << '\n';
    }
    out["plot_" + metric + "_vs_" + var + ".tsv"] = tsv.str();
  }
  return out;
}

void write_report(const EvalReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream out(dir / name, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  };
  write("report.csv", rows_to_csv(report.rows));
  write("report.json", report_to_json(report).dump(2) + "\n");
  for (const auto& [name, content] : plot_tables(report)) write(name, content);
}

}  // namespace hmgf
