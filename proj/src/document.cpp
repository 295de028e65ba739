#include "hmgf/document.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace hmgf {

nlohmann::ordered_json solution_document(const HeteroGraph& g, const Solution& s, const Query& q,
                                 const nlohmann::ordered_json& config) {
  std::vector<std::string> members;
  members.reserve(s.group.size());
  for (VertexId v : s.group) members.push_back(g.label(v));
  std::sort(members.begin(), members.end());

  nlohmann::ordered_json doc;
  doc["members"] = std::move(members);
  doc["sigma"] = s.sigma;
  doc["total_weight"] = s.total_weight;
  doc["max_hop"] = s.max_hop == kInfiniteHops ? nlohmann::ordered_json(nullptr)
                                              : nlohmann::ordered_json(s.max_hop);
  doc["strictly_feasible"] = s.strictly_feasible;
  doc["solver"] = s.solver;
  doc["elapsed_ms"] = s.elapsed.count();
  doc["query"] = {{"h", q.hops}, {"p", q.min_size}};
  doc["config"] = config;
  return doc;
}

}  // namespace hmgf
