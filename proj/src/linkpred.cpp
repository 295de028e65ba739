#include "hmgf/linkpred.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hmgf {

LinkMethod parse_link_method(std::string_view name) {
  if (name == "cn" || name == "common-neighbors") return LinkMethod::kCommonNeighbors;
  if (name == "jaccard") return LinkMethod::kJaccard;
  if (name == "aa" || name == "adamic-adar") return LinkMethod::kAdamicAdar;
  throw std::invalid_argument("unknown link prediction method '" + std::string(name) + "'");
}

std::string_view link_method_name(LinkMethod method) {
  switch (method) {
    case LinkMethod::kCommonNeighbors:
      return "common-neighbors";
    case LinkMethod::kJaccard:
      return "jaccard";
    case LinkMethod::kAdamicAdar:
      return "adamic-adar";
  }
  return "unknown";
}

std::vector<ScoredPair> score_pairs(const HeteroGraph& g, LinkMethod method) {
  const auto n = static_cast<VertexId>(g.vertex_count());
  std::vector<ScoredPair> out;

  // Per-source accumulators over candidates v > u, indexed by v.
  std::vector<std::uint32_t> common(n, 0);
  std::vector<double> adamic(n, 0.0);
  std::vector<VertexId> touched;
  std::vector<char> is_friend(n, 0);

  for (VertexId u = 0; u < n; ++u) {
    const auto nu = g.friends(u);
    for (VertexId z : nu) is_friend[z] = 1;

    for (VertexId z : nu) {
      const auto nz = g.friends(z);
      // z has both u and v as friends, so deg(z) >= 2 and ln(deg(z)) > 0.
      const double inv_log = 1.0 / std::log(static_cast<double>(nz.size()));
      for (auto it = std::upper_bound(nz.begin(), nz.end(), u); it != nz.end(); ++it) {
        const VertexId v = *it;
        if (is_friend[v]) continue;
        if (common[v]++ == 0) touched.push_back(v);
        adamic[v] += inv_log;
      }
    }

    std::sort(touched.begin(), touched.end());
    for (VertexId v : touched) {
      double score = 0.0;
      switch (method) {
        case LinkMethod::kCommonNeighbors:
          score = common[v];
          break;
        case LinkMethod::kJaccard: {
          const double unite =
              static_cast<double>(nu.size() + g.friend_degree(v)) - common[v];
          score = common[v] / unite;
          break;
        }
        case LinkMethod::kAdamicAdar:
          score = adamic[v];
          break;
      }
      out.push_back({u, v, score, method});
      common[v] = 0;
      adamic[v] = 0.0;
    }
    touched.clear();
    for (VertexId z : nu) is_friend[z] = 0;
  }
  return out;
}

void SelectionPolicy::validate() const {
  if (const auto* top = std::get_if<TopK>(&mode)) {
    if (top->k < 1) throw std::invalid_argument("top-k must be at least 1");
  } else {
    const double t = std::get<Threshold>(mode).min_weight;
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("threshold must lie in (0,1]");
  }
}

std::vector<WeightedPair> select_edges(std::vector<ScoredPair> pairs,
                                       const SelectionPolicy& policy) {
  policy.validate();
  std::erase_if(pairs, [](const ScoredPair& p) { return !(p.raw_score > 0.0); });
  if (pairs.empty()) return {};

  double max_score = 0.0;
  for (const auto& p : pairs) max_score = std::max(max_score, p.raw_score);

  std::vector<WeightedPair> weighted;
  weighted.reserve(pairs.size());
  for (const auto& p : pairs) {
    weighted.push_back({p.u, p.v, p.raw_score / max_score});
  }

  auto by_pair = [](const WeightedPair& a, const WeightedPair& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  };

  if (const auto* top = std::get_if<TopK>(&policy.mode)) {
    std::stable_sort(weighted.begin(), weighted.end(), [&](const auto& a, const auto& b) {
      if (a.weight != b.weight) return a.weight > b.weight;
      return by_pair(a, b);
    });
    if (weighted.size() > top->k) weighted.resize(top->k);
  } else {
    const double t = std::get<Threshold>(policy.mode).min_weight;
    std::erase_if(weighted, [t](const WeightedPair& e) { return e.weight < t; });
  }
  std::sort(weighted.begin(), weighted.end(), by_pair);
  return weighted;
}

HeteroGraph predict_potential_edges(const HeteroGraph& g, LinkMethod method,
                                    const SelectionPolicy& policy) {
  const auto edges = select_edges(score_pairs(g, method), policy);
  return g.with_potential_edges(edges);
}

}  // namespace hmgf
