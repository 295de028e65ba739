#pragma once

#include <cstddef>
#include <cstdint>
#include <list>
#include <span>
#include <unordered_map>
#include <vector>

#include "hmgf/graph.hpp"

namespace hmgf {

class Group;

// Reusable scratch space for breadth-first searches over friend edges.
// Visits are tracked with generation stamps, so consecutive searches cost
// only what they touch. Not thread-safe; use one per worker.
class BfsWorkspace {
 public:
  explicit BfsWorkspace(std::size_t vertex_count = 0);

  // Visits vertices in BFS order from `source` up to `radius` hops
  // (kInfiniteHops for unbounded). After the call, `visited()` lists the
  // reached vertices in visit order and `distance(v)` is valid for them.
  void run(const HeteroGraph& g, VertexId source, int radius);

  // Like run(), but stops as soon as every vertex in `targets` has been
  // reached. Returns the largest distance to a target, or kInfiniteHops if
  // one is unreachable.
  int farthest_target(const HeteroGraph& g, VertexId source,
                      std::span<const VertexId> targets);

  bool reached(VertexId v) const { return stamp_[v] == generation_; }
  int distance(VertexId v) const { return reached(v) ? dist_[v] : kInfiniteHops; }
  std::span<const VertexId> visited() const { return order_; }

 private:
  void reset(std::size_t n);

  std::vector<std::uint32_t> stamp_;
  std::vector<int> dist_;
  std::vector<VertexId> order_;
  std::vector<std::uint32_t> target_stamp_;
  std::uint32_t generation_ = 0;
};

// Shortest friend-edge path length between u and v in the full graph;
// potential edges are never traversed. kInfiniteHops when disconnected.
int hop_distance(const HeteroGraph& g, VertexId u, VertexId v);

// All vertices within `radius` friend hops of v, including v.
Group ball(const HeteroGraph& g, VertexId v, int radius);
Group ball(const HeteroGraph& g, VertexId v, int radius, BfsWorkspace& ws);

// Memoizes full single-source distance arrays, holding at most
// `max_entries` sources (least recently used are evicted). Per-worker; not
// safe for concurrent use.
class HopDistanceCache {
 public:
  explicit HopDistanceCache(std::size_t max_entries = 64);

  int distance(const HeteroGraph& g, VertexId u, VertexId v);
  const std::vector<int>& distances_from(const HeteroGraph& g, VertexId source);

  std::size_t size() const { return entries_.size(); }
  std::size_t max_entries() const { return max_entries_; }

 private:
  struct Entry {
    VertexId source;
    std::vector<int> dist;
  };

  std::size_t max_entries_;
  std::list<Entry> entries_;  // most recently used first
  std::unordered_map<VertexId, std::list<Entry>::iterator> index_;
  BfsWorkspace ws_;
};

}  // namespace hmgf
