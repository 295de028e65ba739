#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace hmgf {

// Value of the `feasible` column.
enum class RowStatus { kFeasible, kInfeasible, kAbsent, kError };

std::string_view row_status_name(RowStatus s);
RowStatus parse_row_status(std::string_view name);

// One solver run on one instance.
struct ReportRow {
  std::string scenario;  // e.g. "h=3"
  std::size_t instance = 0;
  std::string solver;
  std::optional<double> sigma;  // absent for kAbsent and kError
  RowStatus status = RowStatus::kAbsent;
  std::optional<int> max_hop;  // kInfiniteHops for disconnected groups
  std::size_t size = 0;
  double elapsed_ms = 0.0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

// Per (scenario, solver) summary. Means are over rows with a returned
// solution (sigma) or without an error (time); standard deviations are
// sample deviations and need two values.
struct Aggregate {
  std::string scenario;
  std::string solver;
  std::size_t rows = 0;
  std::size_t returned = 0;
  std::size_t errors = 0;
  std::optional<double> sigma_mean;
  std::optional<double> sigma_std;
  std::optional<double> time_mean_ms;
  std::optional<double> time_std_ms;
  std::optional<double> fea_ratio;
  // Against the exact solver's answer on the same instance, when present.
  std::optional<double> obj_ratio;
  std::size_t obj_counted = 0;
  std::size_t obj_zero_optimum = 0;
  std::size_t obj_missing_optimum = 0;

  friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

inline constexpr std::string_view kReportCsvHeader =
    "scenario,instance,solver,sigma,feasible,max_hop,size,elapsed_ms";

// Aggregates in order of first appearance of each scenario, solvers sorted
// by name. A pure function of the rows.
std::vector<Aggregate> aggregate_rows(const std::vector<ReportRow>& rows);

std::string rows_to_csv(const std::vector<ReportRow>& rows);
// Throws std::runtime_error on a malformed document.
std::vector<ReportRow> rows_from_csv(std::string_view csv);

nlohmann::json rows_to_json(const std::vector<ReportRow>& rows);
std::vector<ReportRow> rows_from_json(const nlohmann::json& j);
nlohmann::json aggregates_to_json(const std::vector<Aggregate>& aggregates);

// Shortest decimal form that reads back to the same double.
std::string format_number(double x);

}  // namespace hmgf
