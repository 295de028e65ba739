#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hmgf/maxgf.hpp"
#include "hmgf/report.hpp"

namespace hmgf {

enum class SweepVariable { kVertices, kHops, kMinSize };

// Key=value experiment description. Recognized keys:
//   sweep            n | h | p
//   values           comma-separated integers for the swept variable
//   solvers          comma-separated subset of exact, maxgf, dks
//   reps             instances per scenario (default 30)
//   seed             base seed (default 1)
//   n, h, p          defaults for the variables not swept
//   friend_prob, potential_prob
//                    generator parameters when no graph is given
//   graph            sample n-vertex subgraphs of this file instead
//   output           report directory (default ".")
//   threads          instances solved concurrently (default 1)
//   exact_max_ball   exact solver ball limit (default 25)
//   radius_mode      guarantee | tight
//   strict_only      true | false
//   prune            true | false
// Blank lines and lines starting with '#' are ignored.
struct ExperimentConfig {
  SweepVariable sweep = SweepVariable::kVertices;
  std::vector<int> values;
  std::vector<std::string> solvers;
  int reps = 30;
  std::uint64_t seed = 1;
  int n = 10;
  int hops = 2;
  int min_size = 3;
  double friend_prob = 0.3;
  double potential_prob = 0.3;
  std::optional<std::filesystem::path> graph;
  std::filesystem::path output = ".";
  unsigned threads = 1;
  std::size_t exact_max_ball = 25;
  MaxGFConfig maxgf;

  // Throws std::invalid_argument describing the first problem found.
  void validate() const;
};

// Throws std::invalid_argument (with the line number) on unknown keys or
// bad values; the result is validated.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig read_experiment_config(const std::filesystem::path& path);

std::string_view sweep_variable_name(SweepVariable v);

struct ReportError {
  std::string scenario;
  std::size_t instance = 0;
  std::string solver;
  std::string message;
};

struct EvalReport {
  ExperimentConfig config;
  std::vector<std::string> scenarios;  // in sweep order
  std::vector<ReportRow> rows;         // sorted by scenario, instance, solver
  std::vector<Aggregate> aggregates;
  std::vector<ReportError> errors;
};

// Solves every (scenario, instance) pair with every configured solver.
// Instances for the h and p sweeps are shared across scenarios; solver
// failures become error rows. Output does not depend on config.threads
// apart from elapsed times.
EvalReport run_experiment(const ExperimentConfig& cfg);

nlohmann::json report_to_json(const EvalReport& report);

// Plot tables keyed by file name (plot_<metric>_vs_<variable>.tsv): a
// header of x and one column per solver, one line per scenario, empty cells
// where the metric is undefined.
std::map<std::string, std::string> plot_tables(const EvalReport& report);

// Writes report.csv, report.json and the plot tables into `dir`, creating
// it if needed.
void write_report(const EvalReport& report, const std::filesystem::path& dir);

}  // namespace hmgf
