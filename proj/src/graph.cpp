#include "hmgf/graph.hpp"

#include <algorithm>
#include <cmath>

namespace hmgf {
namespace {

std::uint64_t pair_key(VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

bool valid_weight(double w) { return std::isfinite(w) && w > 0.0 && w <= 1.0; }

template <typename T>
void build_csr(std::size_t n, std::vector<std::pair<VertexId, T>>& entries,
               std::vector<std::size_t>& offsets, std::vector<T>& targets) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  offsets.assign(n + 1, 0);
  for (const auto& [src, _] : entries) ++offsets[src + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  targets.clear();
  targets.reserve(entries.size());
  for (auto& [_, t] : entries) targets.push_back(std::move(t));
}

}  // namespace

GraphError::GraphError(const std::string& message, std::size_t line)
    : std::runtime_error(line == 0 ? message
                                   : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

VertexId LabelTable::intern(std::string_view label) {
  if (auto it = index_.find(label); it != index_.end()) return it->second;
  const auto id = static_cast<VertexId>(labels_.size());
  labels_.emplace_back(label);
  index_.emplace(labels_.back(), id);
  return id;
}

std::optional<VertexId> LabelTable::find(std::string_view label) const {
  if (auto it = index_.find(label); it != index_.end()) return it->second;
  return std::nullopt;
}

std::span<const VertexId> HeteroGraph::friends(VertexId v) const {
  check_vertex(v);
  return {friend_targets_.data() + friend_offsets_[v],
          friend_offsets_[v + 1] - friend_offsets_[v]};
}

std::span<const PotentialEdge> HeteroGraph::potentials(VertexId v) const {
  check_vertex(v);
  return {potential_targets_.data() + potential_offsets_[v],
          potential_offsets_[v + 1] - potential_offsets_[v]};
}

bool HeteroGraph::are_friends(VertexId u, VertexId v) const {
  check_vertex(v);
  const auto adj = friends(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::optional<double> HeteroGraph::potential_weight(VertexId u, VertexId v) const {
  check_vertex(v);
  const auto adj = potentials(u);
  auto it = std::lower_bound(adj.begin(), adj.end(), v,
                             [](const PotentialEdge& e, VertexId x) { return e.to < x; });
  if (it == adj.end() || it->to != v) return std::nullopt;
  return it->weight;
}

VertexId HeteroGraph::vertex(std::string_view label) const {
  if (auto v = labels_.find(label)) return *v;
  throw std::out_of_range("unknown vertex label '" + std::string(label) + "'");
}

void HeteroGraph::check_vertex(VertexId v) const {
  if (v >= vertex_count()) {
    throw std::out_of_range("invalid vertex id " + std::to_string(v) + " (graph has " +
                            std::to_string(vertex_count()) + " vertices)");
  }
}

HeteroGraph HeteroGraph::with_scaled_weights(double factor) const {
  HeteroGraph out = *this;
  for (auto& e : out.potential_targets_) {
    e.weight *= factor;
    if (!valid_weight(e.weight)) {
      throw GraphError("scaled potential weight " + std::to_string(e.weight) +
                       " outside (0,1]");
    }
  }
  return out;
}

HeteroGraph HeteroGraph::with_potential_edges(std::span<const WeightedPair> edges) const {
  GraphBuilder builder(labels_);
  for (const auto& [u, v] : friend_edge_list()) builder.add_friend(u, v);
  for (const auto& e : edges) builder.add_potential(e.u, e.v, e.weight);
  return std::move(builder).build();
}

std::vector<std::pair<VertexId, VertexId>> HeteroGraph::friend_edge_list() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(friend_edge_count());
  for (VertexId u = 0; u < vertex_count(); ++u) {
    for (VertexId v : friends(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<WeightedPair> HeteroGraph::potential_edge_list() const {
  std::vector<WeightedPair> out;
  out.reserve(potential_edge_count());
  for (VertexId u = 0; u < vertex_count(); ++u) {
    for (const auto& e : potentials(u)) {
      if (u < e.to) out.push_back({u, e.to, e.weight});
    }
  }
  return out;
}

void GraphBuilder::declare(VertexId u, VertexId v, Relation relation) {
  const auto n = labels_.size();
  if (u >= n || v >= n) throw GraphError("edge endpoint is not a declared vertex");
  if (u == v) throw GraphError("self-loop on '" + labels_.label(u) + "'");
  const auto [it, inserted] = declared_.emplace(pair_key(u, v), relation);
  if (!inserted) {
    const std::string pair = "'" + labels_.label(u) + "'-'" + labels_.label(v) + "'";
    if (it->second == relation) throw GraphError("duplicate edge " + pair);
    throw GraphError("pair " + pair + " declared as both friend and potential edge");
  }
}

void GraphBuilder::add_friend(VertexId u, VertexId v) {
  declare(u, v, Relation::kFriend);
  friend_pairs_.emplace_back(u, v);
}

void GraphBuilder::add_potential(VertexId u, VertexId v, double weight) {
  if (!valid_weight(weight)) {
    throw GraphError("potential weight " + std::to_string(weight) + " outside (0,1]");
  }
  declare(u, v, Relation::kPotential);
  potential_pairs_.push_back({u, v, weight});
}

HeteroGraph GraphBuilder::build() && {
  const std::size_t n = labels_.size();
  HeteroGraph g;

  std::vector<std::pair<VertexId, VertexId>> friend_entries;
  friend_entries.reserve(friend_pairs_.size() * 2);
  for (auto [u, v] : friend_pairs_) {
    friend_entries.emplace_back(u, v);
    friend_entries.emplace_back(v, u);
  }
  std::sort(friend_entries.begin(), friend_entries.end());
  build_csr(n, friend_entries, g.friend_offsets_, g.friend_targets_);

  std::vector<std::pair<VertexId, PotentialEdge>> potential_entries;
  potential_entries.reserve(potential_pairs_.size() * 2);
  for (const auto& e : potential_pairs_) {
    potential_entries.emplace_back(e.u, PotentialEdge{e.v, e.weight});
    potential_entries.emplace_back(e.v, PotentialEdge{e.u, e.weight});
  }
  std::sort(potential_entries.begin(), potential_entries.end(),
            [](const auto& a, const auto& b) {
              return std::pair(a.first, a.second.to) < std::pair(b.first, b.second.to);
            });
  build_csr(n, potential_entries, g.potential_offsets_, g.potential_targets_);

  g.labels_ = std::move(labels_);
  declared_.clear();
  return g;
}

}  // namespace hmgf
