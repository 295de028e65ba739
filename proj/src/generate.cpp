#include "hmgf/generate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hmgf {
namespace {

// Uniform in [0, 1) from the top 53 bits, identical on every platform
// (std::uniform_real_distribution is not).
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Uniform in [0, bound) without modulo bias.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must be in [0,1]");
  }
}

}  // namespace

void GenSpec::validate() const {
  check_probability(friend_prob, "friend_prob");
  check_probability(potential_prob, "potential_prob");
}

HeteroGraph gen_random(const GenSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  GraphBuilder b;
  for (std::size_t i = 0; i < spec.n; ++i) b.add_vertex(std::to_string(i));

  // Pairs are visited in (u, v) order, jumping geometrically between those
  // that carry any edge; each hit is then a friend edge with probability
  // friend_prob / hit.
  const double hit = spec.friend_prob + (1.0 - spec.friend_prob) * spec.potential_prob;
  if (spec.n < 2 || hit <= 0.0) return std::move(b).build();
  const double log_miss = std::log1p(-hit);

  const std::uint64_t n = spec.n;
  std::uint64_t u = 0;
  std::uint64_t v = 0;  // column of the last visited pair in row u
  for (;;) {
    std::uint64_t step = 1;
    if (hit < 1.0) {
      const double r = std::floor(std::log1p(-unit(rng)) / log_miss);
      step += r >= 0x1.0p62 ? std::uint64_t{1} << 62 : static_cast<std::uint64_t>(r);
    }
    v += step;
    while (v >= n && u + 2 < n) {
      const std::uint64_t over = v - n;
      ++u;
      v = u + 1 + over;
    }
    if (v >= n) break;
    const auto a = static_cast<VertexId>(u);
    const auto c = static_cast<VertexId>(v);
    if (unit(rng) * hit < spec.friend_prob) {
      b.add_friend(a, c);
    } else {
      b.add_potential(a, c, 1.0 - unit(rng));
    }
  }
  return std::move(b).build();
}

HeteroGraph sample_subgraph(const HeteroGraph& g, std::size_t size, std::uint64_t seed,
                            std::optional<VertexId> start) {
  const std::size_t n = g.vertex_count();
  if (size > n) throw std::invalid_argument("sample size exceeds the number of vertices");
  if (start) g.check_vertex(*start);
  std::mt19937_64 rng(seed);

  std::vector<char> taken(n, 0);
  std::vector<VertexId> picked;
  picked.reserve(size);
  std::deque<VertexId> queue;
  std::vector<VertexId> order;

  auto take = [&](VertexId v) {
    taken[v] = 1;
    picked.push_back(v);
    queue.push_back(v);
  };
  auto random_start = [&]() {
    std::vector<VertexId> free;
    for (VertexId v = 0; v < n; ++v) {
      if (!taken[v]) free.push_back(v);
    }
    return free[below(rng, free.size())];
  };

  if (size > 0) take(start ? *start : static_cast<VertexId>(below(rng, n)));
  while (picked.size() < size) {
    if (queue.empty()) {
      take(random_start());
      continue;
    }
    const VertexId v = queue.front();
    queue.pop_front();
    const auto nbrs = g.friends(v);
    order.assign(nbrs.begin(), nbrs.end());
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[below(rng, i)]);
    }
    for (VertexId u : order) {
      if (picked.size() == size) break;
      if (!taken[u]) take(u);
    }
  }

  std::sort(picked.begin(), picked.end());
  std::vector<VertexId> local(n, 0);
  GraphBuilder b;
  for (std::size_t i = 0; i < picked.size(); ++i) {
    local[picked[i]] = b.add_vertex(g.label(picked[i]));
  }
  for (VertexId v : picked) {
    for (VertexId u : g.friends(v)) {
      if (v < u && taken[u]) b.add_friend(local[v], local[u]);
    }
    for (const auto& e : g.potentials(v)) {
      if (v < e.to && taken[e.to]) b.add_potential(local[v], local[e.to], e.weight);
    }
  }
  return std::move(b).build();
}

}  // namespace hmgf
