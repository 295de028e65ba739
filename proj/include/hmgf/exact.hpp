#pragma once

#include <chrono>
#include <cstddef>
#include <optional>

#include "hmgf/graph.hpp"
#include "hmgf/group.hpp"

namespace hmgf {

struct ExactConfig {
  // Refuse instances where some h-ball is larger than this.
  std::size_t max_ball_size = 25;
  std::optional<std::chrono::milliseconds> time_budget;
  unsigned threads = 1;
  // Bound-based pruning of partial sets; disabling it only costs time.
  bool prune = true;
};

class BallTooLarge : public ResourceError {
 public:
  BallTooLarge(VertexId center, std::size_t size, std::size_t limit);
  VertexId center() const { return center_; }
  std::size_t size() const { return size_; }

 private:
  VertexId center_;
  std::size_t size_;
};

class TimeBudgetExceeded : public ResourceError {
 public:
  explicit TimeBudgetExceeded(std::chrono::milliseconds budget);
};

// Optimal group by exhaustive search. Each vertex v, in ascending order,
// anchors the sets inside ball(v, h) whose smallest member is v, so every
// feasible set is enumerated exactly once. Ties are broken by the shared
// Solution order (ranks_before). Returns nullopt when no feasible group
// exists, including p > |V|.
std::optional<Solution> solve_exact(const HeteroGraph& g, const Query& q,
                                    const ExactConfig& cfg = {});

// Reference answer by scanning all 2^|V| subsets, with hop distances from
// Floyd-Warshall. Only for graphs of at most 20 vertices (throws
// std::invalid_argument otherwise).
std::optional<Solution> brute_force_oracle(const HeteroGraph& g, const Query& q);

}  // namespace hmgf
