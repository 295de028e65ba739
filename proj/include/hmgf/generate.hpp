#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "hmgf/graph.hpp"

namespace hmgf {

struct GenSpec {
  std::size_t n = 0;
  double friend_prob = 0.0;
  double potential_prob = 0.0;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument for probabilities outside [0,1].
  void validate() const;
};

// Each vertex pair independently becomes a friend edge with friend_prob,
// otherwise a potential edge with potential_prob and weight uniform in
// (0,1]. Vertices are labeled "0".."n-1". Deterministic in the spec on every
// platform; runs in time proportional to n plus the number of edges.
HeteroGraph gen_random(const GenSpec& spec);

// Induced subgraph on `size` vertices collected by a friend-edge BFS from a
// random start (or `start`), visiting neighbors in seeded random order and
// restarting from a random unvisited vertex when the component runs out.
// Vertices keep their labels and relative order. Throws
// std::invalid_argument when size > |V|.
HeteroGraph sample_subgraph(const HeteroGraph& g, std::size_t size, std::uint64_t seed,
                            std::optional<VertexId> start = std::nullopt);

}  // namespace hmgf
