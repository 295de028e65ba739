#pragma once

#include <cstddef>
#include <string_view>
#include <variant>
#include <vector>

#include "hmgf/graph.hpp"

namespace hmgf {

enum class LinkMethod { kCommonNeighbors, kJaccard, kAdamicAdar };

// Accepts "cn"/"common-neighbors", "jaccard", "aa"/"adamic-adar".
// Throws std::invalid_argument otherwise.
LinkMethod parse_link_method(std::string_view name);
std::string_view link_method_name(LinkMethod method);

struct ScoredPair {
  VertexId u;  // u < v
  VertexId v;
  double raw_score;
  LinkMethod method;
};

// Scores every non-adjacent pair that shares at least one friend (friend
// distance exactly 2); all three predictors vanish beyond that. Output is
// ordered by (u, v).
std::vector<ScoredPair> score_pairs(const HeteroGraph& g, LinkMethod method);

struct TopK {
  std::size_t k;
};
struct Threshold {
  double min_weight;
};

struct SelectionPolicy {
  std::variant<TopK, Threshold> mode;

  // Throws std::invalid_argument unless k >= 1 or threshold in (0,1].
  void validate() const;
};

// Normalizes raw scores by their maximum into weights in (0,1] and keeps the
// pairs chosen by `policy`: the k heaviest (ties by (u, v) ascending) or all
// with weight >= threshold. Returned edges are ordered by (u, v).
std::vector<WeightedPair> select_edges(std::vector<ScoredPair> pairs,
                                       const SelectionPolicy& policy);

// `g` with its potential edges replaced by the selected predictions.
HeteroGraph predict_potential_edges(const HeteroGraph& g, LinkMethod method,
                                    const SelectionPolicy& policy);

}  // namespace hmgf
