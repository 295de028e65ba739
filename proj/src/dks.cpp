#include "hmgf/dks.hpp"

#include <chrono>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hmgf {

Solution dks_comparator(const HeteroGraph& g, const Query& q) {
  q.validate();
  const std::size_t n = g.vertex_count();
  const auto p = static_cast<std::size_t>(q.min_size);
  if (p > n) throw std::invalid_argument("p exceeds the number of vertices");
  const auto start = std::chrono::steady_clock::now();

  std::vector<double> weight(n, 0.0);
  for (VertexId v = 0; v < n; ++v) {
    weight[v] = static_cast<double>(g.friend_degree(v));
    for (const auto& e : g.potentials(v)) weight[v] += e.weight;
  }
  std::vector<char> alive(n, 1);
  std::set<std::pair<double, VertexId>> queue;
  for (VertexId v = 0; v < n; ++v) queue.emplace(weight[v], v);

  auto lower = [&](VertexId u, double by) {
    queue.erase({weight[u], u});
    weight[u] -= by;
    queue.emplace(weight[u], u);
  };
  for (std::size_t remaining = n; remaining > p; --remaining) {
    const VertexId v = queue.begin()->second;
    queue.erase(queue.begin());
    alive[v] = 0;
    for (VertexId u : g.friends(v)) {
      if (alive[u]) lower(u, 1.0);
    }
    for (const auto& e : g.potentials(v)) {
      if (alive[e.to]) lower(e.to, e.weight);
    }
  }

  std::vector<VertexId> kept;
  kept.reserve(p);
  for (VertexId v = 0; v < n; ++v) {
    if (alive[v]) kept.push_back(v);
  }
  Solution out = evaluate_group(g, Group(std::move(kept)), q, "dks");
  out.elapsed = std::chrono::steady_clock::now() - start;
  return out;
}

}  // namespace hmgf
