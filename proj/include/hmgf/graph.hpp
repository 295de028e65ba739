#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hmgf {

// Dense vertex index, 0..n-1 in first-seen order.
using VertexId = std::uint32_t;

// Hop count reported for pairs with no friend-edge path.
inline constexpr int kInfiniteHops = std::numeric_limits<int>::max();

struct PotentialEdge {
  VertexId to;
  double weight;

  friend bool operator==(const PotentialEdge&, const PotentialEdge&) = default;
};

// An undirected potential edge, used when (re)building R.
struct WeightedPair {
  VertexId u;
  VertexId v;
  double weight;
};

// Raised for malformed input and violated graph invariants. `line()` is the
// 1-based source line when the error came from parsing, 0 otherwise.
class GraphError : public std::runtime_error {
 public:
  explicit GraphError(const std::string& message, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Bijection between external label tokens and dense indices.
class LabelTable {
 public:
  // Returns the existing index for `label`, or assigns the next one.
  VertexId intern(std::string_view label);
  std::optional<VertexId> find(std::string_view label) const;
  const std::string& label(VertexId v) const { return labels_.at(v); }
  std::size_t size() const { return labels_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId, Hash, std::equal_to<>> index_;
};

// Heterogeneous social graph: unweighted friend edges E and weighted
// potential edges R over the same vertex set. Immutable once built; both
// relations are stored symmetrically in CSR form with neighbors sorted by
// index.
class HeteroGraph {
 public:
  HeteroGraph() = default;

  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t friend_edge_count() const { return friend_targets_.size() / 2; }
  std::size_t potential_edge_count() const {
    return potential_targets_.size() / 2;
  }

  std::span<const VertexId> friends(VertexId v) const;
  std::span<const PotentialEdge> potentials(VertexId v) const;
  std::size_t friend_degree(VertexId v) const { return friends(v).size(); }

  bool are_friends(VertexId u, VertexId v) const;
  std::optional<double> potential_weight(VertexId u, VertexId v) const;

  const LabelTable& labels() const { return labels_; }
  const std::string& label(VertexId v) const { return labels_.label(v); }
  // Looks up a vertex by label; throws std::out_of_range when unknown.
  VertexId vertex(std::string_view label) const;

  // Throws std::out_of_range when `v` is not a vertex of this graph.
  void check_vertex(VertexId v) const;

  // Same vertices and friend edges, every potential weight multiplied by
  // `factor`. Throws GraphError if a scaled weight leaves (0,1].
  HeteroGraph with_scaled_weights(double factor) const;

  // Same vertices and friend edges with R replaced by `edges`.
  HeteroGraph with_potential_edges(std::span<const WeightedPair> edges) const;

  // Every edge once, with u < v, ordered by (u, v).
  std::vector<std::pair<VertexId, VertexId>> friend_edge_list() const;
  std::vector<WeightedPair> potential_edge_list() const;

 private:
  friend class GraphBuilder;

  LabelTable labels_;
  std::vector<std::size_t> friend_offsets_{0};
  std::vector<VertexId> friend_targets_;
  std::vector<std::size_t> potential_offsets_{0};
  std::vector<PotentialEdge> potential_targets_;
};

// Accumulates vertices and edges, validating each declaration, then
// produces an immutable HeteroGraph.
class GraphBuilder {
 public:
  GraphBuilder() = default;
  explicit GraphBuilder(LabelTable labels) : labels_(std::move(labels)) {}

  VertexId add_vertex(std::string_view label) { return labels_.intern(label); }
  std::size_t vertex_count() const { return labels_.size(); }

  // Both throw GraphError on self-loops, repeated pairs, pairs already
  // declared in the other relation, and (for potentials) weights outside
  // (0,1].
  void add_friend(VertexId u, VertexId v);
  void add_potential(VertexId u, VertexId v, double weight);

  HeteroGraph build() &&;

 private:
  enum class Relation : std::uint8_t { kFriend, kPotential };

  void declare(VertexId u, VertexId v, Relation relation);

  LabelTable labels_;
  std::unordered_map<std::uint64_t, Relation> declared_;
  std::vector<std::pair<VertexId, VertexId>> friend_pairs_;
  std::vector<WeightedPair> potential_pairs_;
};

}  // namespace hmgf
