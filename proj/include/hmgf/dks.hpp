#pragma once

#include "hmgf/graph.hpp"
#include "hmgf/group.hpp"

namespace hmgf {

// Hop-blind, type-blind densest-p comparator. Every friend edge counts 1 and
// every potential edge its weight; the vertex with the least combined weight
// into the remaining set (ties: smaller index) is peeled until exactly p
// remain. The result is evaluated against `q` like any other solver output.
// Throws std::invalid_argument when p > |V|.
Solution dks_comparator(const HeteroGraph& g, const Query& q);

}  // namespace hmgf
