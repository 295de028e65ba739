#include "hmgf/report.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "hmgf/graph.hpp"
#include "hmgf/metrics.hpp"

namespace hmgf {
namespace {

using nlohmann::json;

bool returned(const ReportRow& r) {
  return r.status == RowStatus::kFeasible || r.status == RowStatus::kInfeasible;
}

std::optional<double> mean(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

std::optional<double> sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return std::nullopt;
  const double m = *mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

template <typename T>
T parse_field(std::string_view s, const char* what, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("report line " + std::to_string(line) + ": malformed " + what);
  }
  return value;
}

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

std::string_view row_status_name(RowStatus s) {
  switch (s) {
    case RowStatus::kFeasible: return "true";
    case RowStatus::kInfeasible: return "false";
    case RowStatus::kAbsent: return "absent";
    case RowStatus::kError: return "error";
  }
  return "error";
}

RowStatus parse_row_status(std::string_view name) {
  if (name == "true") return RowStatus::kFeasible;
  if (name == "false") return RowStatus::kInfeasible;
  if (name == "absent") return RowStatus::kAbsent;
  if (name == "error") return RowStatus::kError;
  throw std::runtime_error("unknown feasible value '" + std::string(name) + "'");
}

std::string format_number(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::vector<Aggregate> aggregate_rows(const std::vector<ReportRow>& rows) {
  std::vector<std::string> scenarios;
  std::map<std::string, std::map<std::string, std::vector<const ReportRow*>>> groups;
  // Per scenario and instance, the exact solver's sigma when it proved one.
  std::map<std::string, std::map<std::size_t, double>> optimum;
  std::set<std::string> has_exact;
  for (const auto& r : rows) {
    if (!groups.contains(r.scenario)) scenarios.push_back(r.scenario);
    groups[r.scenario][r.solver].push_back(&r);
    if (r.solver == "exact") {
      has_exact.insert(r.scenario);
      if (r.status == RowStatus::kFeasible) optimum[r.scenario][r.instance] = *r.sigma;
    }
  }

  std::vector<Aggregate> out;
  for (const auto& scenario : scenarios) {
    for (const auto& [solver, list] : groups[scenario]) {
      Aggregate a;
      a.scenario = scenario;
      a.solver = solver;
      a.rows = list.size();
      std::vector<double> sigmas;
      std::vector<double> times;
      Batch fea;
      Batch obj;
      for (const ReportRow* r : list) {
        if (r->status == RowStatus::kError) {
          ++a.errors;
        } else {
          times.push_back(r->elapsed_ms);
        }
        std::optional<Solution> s;
        if (returned(*r)) {
          ++a.returned;
          sigmas.push_back(*r->sigma);
          s.emplace();
          s->sigma = *r->sigma;
          s->strictly_feasible = r->status == RowStatus::kFeasible;
        }
        BatchEntry e;
        e.instance = std::to_string(r->instance);
        e.solutions.emplace(solver, s);
        fea.push_back(e);
        if (!has_exact.contains(scenario)) continue;
        const auto& opt = optimum[scenario];
        if (const auto it = opt.find(r->instance); it == opt.end()) {
          ++a.obj_missing_optimum;
        } else if (it->second == 0.0) {
          ++a.obj_zero_optimum;
        } else {
          e.optimal.emplace();
          e.optimal->sigma = it->second;
          obj.push_back(std::move(e));
        }
      }
      a.sigma_mean = mean(sigmas);
      a.sigma_std = sample_std(sigmas);
      a.time_mean_ms = mean(times);
      a.time_std_ms = sample_std(times);
      if (a.returned > 0) a.fea_ratio = fea_ratio(fea, solver);
      if (!obj.empty()) {
        const ObjRatio o = obj_ratio(obj, solver);
        a.obj_ratio = o.mean;
        a.obj_counted = o.counted;
      }
      out.push_back(std::move(a));
    }
  }
  return out;
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << kReportCsvHeader << '\n';
  for (const auto& r : rows) {
    if (r.scenario.find_first_of(",\"\n") != std::string::npos ||
        r.solver.find_first_of(",\"\n") != std::string::npos) {
      throw std::invalid_argument("scenario and solver names must not contain separators");
    }
    out << r.scenario << ',' << r.instance << ',' << r.solver << ',';
    if (r.sigma) out << format_number(*r.sigma);
    out << ',' << row_status_name(r.status) << ',';
    if (r.max_hop) {
      if (*r.max_hop == kInfiniteHops) {
        out << "inf";
      } else {
        out << *r.max_hop;
      }
    }
    out << ',' << r.size << ',' << format_number(r.elapsed_ms) << '\n';
  }
  return out.str();
}

std::vector<ReportRow> rows_from_csv(std::string_view csv) {
  std::vector<ReportRow> rows;
  std::size_t line_no = 0;
  bool header = true;
  while (!csv.empty()) {
    const auto eol = csv.find('\n');
    std::string_view line = csv.substr(0, eol);
    csv.remove_prefix(eol == std::string_view::npos ? csv.size() : eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (header) {
      if (line != kReportCsvHeader) throw std::runtime_error("unexpected report header");
      header = false;
      continue;
    }
    if (line.empty()) continue;

    std::vector<std::string_view> f;
    for (std::size_t pos = 0;;) {
      const auto comma = line.find(',', pos);
      f.push_back(line.substr(pos, comma - pos));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (f.size() != 8) {
      throw std::runtime_error("report line " + std::to_string(line_no) + ": expected 8 fields");
    }
    ReportRow r;
    r.scenario = f[0];
    r.instance = parse_field<std::size_t>(f[1], "instance", line_no);
    r.solver = f[2];
    if (!f[3].empty()) r.sigma = parse_field<double>(f[3], "sigma", line_no);
    r.status = parse_row_status(f[4]);
    if (f[5] == "inf") {
      r.max_hop = kInfiniteHops;
    } else if (!f[5].empty()) {
      r.max_hop = parse_field<int>(f[5], "max_hop", line_no);
    }
    r.size = parse_field<std::size_t>(f[6], "size", line_no);
    r.elapsed_ms = parse_field<double>(f[7], "elapsed_ms", line_no);
    rows.push_back(std::move(r));
  }
  if (header) throw std::runtime_error("empty report");
  return rows;
}

json rows_to_json(const std::vector<ReportRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json j;
    j["scenario"] = r.scenario;
    j["instance"] = r.instance;
    j["solver"] = r.solver;
    j["sigma"] = optional_number(r.sigma);
    j["feasible"] = row_status_name(r.status);
    // null max_hop on a returned group means the group is disconnected.
    j["max_hop"] = r.max_hop && *r.max_hop != kInfiniteHops ? json(*r.max_hop) : json(nullptr);
    j["size"] = r.size;
    j["elapsed_ms"] = r.elapsed_ms;
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<ReportRow> rows_from_json(const json& j) {
  std::vector<ReportRow> rows;
  for (const auto& e : j) {
    ReportRow r;
    r.scenario = e.at("scenario").get<std::string>();
    r.instance = e.at("instance").get<std::size_t>();
    r.solver = e.at("solver").get<std::string>();
    if (!e.at("sigma").is_null()) r.sigma = e.at("sigma").get<double>();
    r.status = parse_row_status(e.at("feasible").get<std::string>());
    if (!e.at("max_hop").is_null()) {
      r.max_hop = e.at("max_hop").get<int>();
    } else if (returned(r)) {
      r.max_hop = kInfiniteHops;
    }
    r.size = e.at("size").get<std::size_t>();
    r.elapsed_ms = e.at("elapsed_ms").get<double>();
    rows.push_back(std::move(r));
  }
  return rows;
}

json aggregates_to_json(const std::vector<Aggregate>& aggregates) {
  json out = json::array();
  for (const auto& a : aggregates) {
    out.push_back({{"scenario", a.scenario},
                   {"solver", a.solver},
                   {"rows", a.rows},
                   {"returned", a.returned},
                   {"errors", a.errors},
                   {"sigma_mean", optional_number(a.sigma_mean)},
                   {"sigma_std", optional_number(a.sigma_std)},
                   {"time_mean_ms", optional_number(a.time_mean_ms)},
                   {"time_std_ms", optional_number(a.time_std_ms)},
                   {"fea_ratio", optional_number(a.fea_ratio)},
                   {"obj_ratio", optional_number(a.obj_ratio)},
                   {"obj_counted", a.obj_counted},
                   {"obj_zero_optimum", a.obj_zero_optimum},
                   {"obj_missing_optimum", a.obj_missing_optimum}});
  }
  return out;
}

}  // namespace hmgf
