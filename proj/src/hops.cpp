#include "hmgf/hops.hpp"

#include <algorithm>

#include "hmgf/group.hpp"

namespace hmgf {

BfsWorkspace::BfsWorkspace(std::size_t vertex_count) { reset(vertex_count); }

void BfsWorkspace::reset(std::size_t n) {
  if (stamp_.size() != n) {
    stamp_.assign(n, 0);
    target_stamp_.assign(n, 0);
    dist_.assign(n, 0);
    generation_ = 0;
  }
  if (++generation_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    std::fill(target_stamp_.begin(), target_stamp_.end(), 0);
    generation_ = 1;
  }
  order_.clear();
}

void BfsWorkspace::run(const HeteroGraph& g, VertexId source, int radius) {
  g.check_vertex(source);
  reset(g.vertex_count());
  stamp_[source] = generation_;
  dist_[source] = 0;
  order_.push_back(source);
  for (std::size_t head = 0; head < order_.size(); ++head) {
    const VertexId u = order_[head];
    if (dist_[u] >= radius) continue;
    for (VertexId v : g.friends(u)) {
      if (stamp_[v] == generation_) continue;
      stamp_[v] = generation_;
      dist_[v] = dist_[u] + 1;
      order_.push_back(v);
    }
  }
}

int BfsWorkspace::farthest_target(const HeteroGraph& g, VertexId source,
                                  std::span<const VertexId> targets) {
  g.check_vertex(source);
  reset(g.vertex_count());
  std::size_t remaining = 0;
  for (VertexId t : targets) {
    g.check_vertex(t);
    if (target_stamp_[t] != generation_) {
      target_stamp_[t] = generation_;
      ++remaining;
    }
  }

  int farthest = 0;
  stamp_[source] = generation_;
  dist_[source] = 0;
  order_.push_back(source);
  if (target_stamp_[source] == generation_) --remaining;
  for (std::size_t head = 0; head < order_.size() && remaining > 0; ++head) {
    const VertexId u = order_[head];
    for (VertexId v : g.friends(u)) {
      if (stamp_[v] == generation_) continue;
      stamp_[v] = generation_;
      dist_[v] = dist_[u] + 1;
      order_.push_back(v);
      if (target_stamp_[v] == generation_) {
        farthest = dist_[v];
        if (--remaining == 0) break;
      }
    }
  }
  return remaining == 0 ? farthest : kInfiniteHops;
}

int hop_distance(const HeteroGraph& g, VertexId u, VertexId v) {
  g.check_vertex(v);
  BfsWorkspace ws;
  const VertexId target[] = {v};
  return ws.farthest_target(g, u, target);
}

Group ball(const HeteroGraph& g, VertexId v, int radius) {
  BfsWorkspace ws;
  return ball(g, v, radius, ws);
}

Group ball(const HeteroGraph& g, VertexId v, int radius, BfsWorkspace& ws) {
  ws.run(g, v, radius);
  const auto visited = ws.visited();
  return Group(std::vector<VertexId>(visited.begin(), visited.end()));
}

HopDistanceCache::HopDistanceCache(std::size_t max_entries)
    : max_entries_(std::max<std::size_t>(max_entries, 1)) {}

const std::vector<int>& HopDistanceCache::distances_from(const HeteroGraph& g,
                                                         VertexId source) {
  if (auto it = index_.find(source); it != index_.end()) {
    entries_.splice(entries_.begin(), entries_, it->second);
    return entries_.front().dist;
  }
  ws_.run(g, source, kInfiniteHops);
  std::vector<int> dist(g.vertex_count(), kInfiniteHops);
  for (VertexId v : ws_.visited()) dist[v] = ws_.distance(v);

  if (entries_.size() == max_entries_) {
    index_.erase(entries_.back().source);
    entries_.pop_back();
  }
  entries_.push_front({source, std::move(dist)});
  index_[source] = entries_.begin();
  return entries_.front().dist;
}

int HopDistanceCache::distance(const HeteroGraph& g, VertexId u, VertexId v) {
  g.check_vertex(v);
  return distances_from(g, u)[v];
}

}  // namespace hmgf
