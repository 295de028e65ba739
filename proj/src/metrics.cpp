#include "hmgf/metrics.hpp"

#include <stdexcept>
#include <string>

namespace hmgf {
namespace {

const std::optional<Solution>* find_solution(const BatchEntry& e, std::string_view solver) {
  const auto it = e.solutions.find(solver);
  return it == e.solutions.end() ? nullptr : &it->second;
}

}  // namespace

double fea_ratio(const Batch& b, std::string_view solver) {
  std::size_t returned = 0;
  std::size_t feasible = 0;
  for (const auto& e : b) {
    const auto* s = find_solution(e, solver);
    if (!s || !*s) continue;
    ++returned;
    if ((*s)->strictly_feasible) ++feasible;
  }
  if (returned == 0) {
    throw std::invalid_argument("no solutions from solver '" + std::string(solver) + "'");
  }
  return static_cast<double>(feasible) / static_cast<double>(returned);
}

ObjRatio obj_ratio(const Batch& b, std::string_view solver) {
  ObjRatio out;
  double sum = 0.0;
  for (const auto& e : b) {
    if (!e.optimal) throw std::invalid_argument("instance '" + e.instance + "' has no optimum");
    if (e.optimal->sigma == 0.0) {
      ++out.zero_optimum;
      continue;
    }
    ++out.counted;
    const auto* s = find_solution(e, solver);
    if (s && *s) sum += (*s)->sigma / e.optimal->sigma;
  }
  if (out.counted == 0) throw std::invalid_argument("no instance with a positive optimum");
  out.mean = sum / static_cast<double>(out.counted);
  return out;
}

}  // namespace hmgf
