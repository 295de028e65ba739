#pragma once

#include <json.hpp>

#include "hmgf/graph.hpp"
#include "hmgf/group.hpp"

namespace hmgf {

// The machine interface of `solve`:
//   members            labels, sorted
//   sigma, total_weight
//   max_hop            null when some pair is disconnected
//   strictly_feasible, solver, elapsed_ms
//   query              {h, p}
//   config             `config` as given
nlohmann::ordered_json solution_document(const HeteroGraph& g, const Solution& s, const Query& q,
                                 const nlohmann::ordered_json& config);

}  // namespace hmgf
