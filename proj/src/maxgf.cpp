#include "hmgf/maxgf.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "parallel.hpp"

namespace hmgf {
namespace {

constexpr double kRelativeSlack = 1e-9;

double slack(double sigma) { return kRelativeSlack * std::max(1.0, sigma); }

// Per-worker scratch for peeling and post-processing. Maps graph vertices to
// positions in the current member list with generation stamps.
class CandidateWork {
 public:
  explicit CandidateWork(std::size_t n)
      : bfs_(n), slot_(n, 0), slot_stamp_(n, 0), hits_(n, 0), hit_stamp_(n, 0) {}

  BfsWorkspace& bfs() { return bfs_; }

  PeelResult peel(const HeteroGraph& g, const Group& c, int p, bool trace) {
    PeelResult out;
    const auto members = c.members();
    const std::size_t k = members.size();
    const auto floor = static_cast<std::size_t>(std::max(p, 1));
    if (k < static_cast<std::size_t>(p)) return out;

    index(members);
    offsets_.assign(k + 1, 0);
    adj_.clear();
    inc_.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      for (const auto& e : g.potentials(members[i])) {
        if (const auto j = slot(e.to); j != kNone) {
          adj_.emplace_back(j, e.weight);
          inc_[i] += e.weight;
        }
      }
      offsets_[i + 1] = static_cast<std::uint32_t>(adj_.size());
    }

    double total = 0.0;
    for (std::uint32_t i = 0; i < k; ++i) {
      for (std::uint32_t a = offsets_[i]; a < offsets_[i + 1]; ++a) {
        if (adj_[a].first > i) total += adj_[a].second;
      }
    }

    alive_.assign(k, 1);
    // Min-heap with lazy deletion: incident weights only fall, so an entry is
    // current exactly when its key still equals inc_.
    heap_.clear();
    for (std::uint32_t i = 0; i < k; ++i) heap_.emplace_back(inc_[i], i);
    std::make_heap(heap_.begin(), heap_.end(), std::greater<>{});
    auto pop = [&] {
      for (;;) {
        std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
        const auto top = heap_.back();
        heap_.pop_back();
        if (alive_[top.second] && top.first == inc_[top.second]) return top;
      }
    };

    std::vector<VertexId> removed;
    std::size_t remaining = k;
    std::size_t best_size = k;
    double best_weight = total;
    if (trace) out.trace.records.push_back({k, total, total / static_cast<double>(k)});

    while (remaining > floor) {
      const auto [w, i] = pop();
      alive_[i] = 0;
      removed.push_back(members[i]);
      total -= w;
      --remaining;
      for (std::uint32_t a = offsets_[i]; a < offsets_[i + 1]; ++a) {
        const auto [j, wj] = adj_[a];
        if (!alive_[j]) continue;
        inc_[j] -= wj;
        heap_.emplace_back(inc_[j], j);
        std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
      }
      if (trace) {
        out.trace.removals.push_back({members[i], w});
        out.trace.records.push_back({remaining, total, total / static_cast<double>(remaining)});
      }
      // Later sets are smaller, so ties move the choice forward.
      if (compare_average(total, remaining, best_weight, best_size) >= 0) {
        best_size = remaining;
        best_weight = total;
      }
    }

    removed.resize(k - best_size);
    std::sort(removed.begin(), removed.end());
    std::vector<VertexId> kept;
    kept.reserve(best_size);
    std::set_difference(members.begin(), members.end(), removed.begin(), removed.end(),
                        std::back_inserter(kept));
    out.best = Group(std::move(kept));
    out.total_weight = total_potential_weight(g, *out.best);
    out.sigma = out.total_weight / static_cast<double>(best_size);
    return out;
  }

  Solution post_process(const HeteroGraph& g, const Solution& s, const Query& q,
                        const Group& c) {
    const auto members = s.group.members();
    const std::size_t m = members.size();
    const auto p = static_cast<std::size_t>(q.min_size);
    if (m == 0) return evaluate_group(g, s.group, q, s.solver, bfs_);

    index(members);
    viol_.assign(m * m, 0);
    count_.assign(m, 0);
    std::size_t total_viol = 0;
    int max_hop = 0;
    for (std::size_t i = 0; i < m; ++i) {
      bfs_.run(g, members[i], q.hops);
      for (std::size_t j = 0; j < m; ++j) {
        if (!bfs_.reached(members[j])) {
          viol_[i * m + j] = 1;
          ++count_[i];
          ++total_viol;
        } else {
          max_hop = std::max(max_hop, bfs_.distance(members[j]));
        }
      }
    }
    total_viol /= 2;
    if (total_viol == 0) {
      Solution out = s;
      out.total_weight = total_potential_weight(g, s.group);
      out.sigma = out.total_weight / static_cast<double>(m);
      out.max_hop = max_hop;
      out.strictly_feasible = m >= p;
      return out;
    }

    inc_.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      for (const auto& e : g.potentials(members[i])) {
        if (slot(e.to) != kNone) inc_[i] += e.weight;
      }
    }
    alive_.assign(m, 1);
    std::size_t alive_count = m;

    // (a) drop the worst offender while the size floor allows it.
    while (total_viol > 0 && alive_count > p) {
      std::size_t pick = m;
      for (std::size_t i = 0; i < m; ++i) {
        if (!alive_[i]) continue;
        if (pick == m || count_[i] > count_[pick] ||
            (count_[i] == count_[pick] && inc_[i] < inc_[pick])) {
          pick = i;
        }
      }
      alive_[pick] = 0;
      --alive_count;
      for (std::size_t j = 0; j < m; ++j) {
        if (alive_[j] && viol_[pick * m + j]) {
          --count_[j];
          --total_viol;
        }
      }
      count_[pick] = 0;
      for (const auto& e : g.potentials(members[pick])) {
        if (const auto j = slot(e.to); j != kNone && alive_[j]) inc_[j] -= e.weight;
      }
    }

    std::vector<VertexId> kept;
    for (std::size_t i = 0; i < m; ++i) {
      if (alive_[i]) kept.push_back(members[i]);
    }
    if (total_viol == 0) return evaluate_group(g, Group(std::move(kept)), q, s.solver, bfs_);

    // (b) one-for-one swaps at the size floor.
    if (alive_count == p) {
      std::optional<Solution> best;
      for (std::size_t x = 0; x < m; ++x) {
        // Only a member involved in every remaining violation can be swapped
        // out to leave a violation-free rest.
        if (!alive_[x] || count_[x] != total_viol) continue;
        std::vector<VertexId> rest;
        for (VertexId v : kept) {
          if (v != members[x]) rest.push_back(v);
        }
        for (VertexId y : common_reach(g, rest, q.hops)) {
          if (!c.contains(y) || std::binary_search(kept.begin(), kept.end(), y)) continue;
          std::vector<VertexId> swapped = rest;
          swapped.push_back(y);
          Solution cand;
          cand.group = Group(std::move(swapped));
          cand.total_weight = total_potential_weight(g, cand.group);
          cand.sigma = cand.total_weight / static_cast<double>(cand.group.size());
          if (!best || ranks_before(cand, *best)) best = std::move(cand);
        }
      }
      if (best) return evaluate_group(g, std::move(best->group), q, s.solver, bfs_);
    }

    // (c) no repair found.
    return evaluate_group(g, s.group, q, s.solver, bfs_);
  }

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  void index(std::span<const VertexId> members) {
    if (++generation_ == 0) {
      std::fill(slot_stamp_.begin(), slot_stamp_.end(), 0);
      generation_ = 1;
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      slot_[members[i]] = static_cast<std::uint32_t>(i);
      slot_stamp_[members[i]] = generation_;
    }
  }

  std::uint32_t slot(VertexId v) const {
    return slot_stamp_[v] == generation_ ? slot_[v] : kNone;
  }

  // Vertices within `hops` of every vertex in `sources`, ascending.
  std::vector<VertexId> common_reach(const HeteroGraph& g, const std::vector<VertexId>& sources,
                                     int hops) {
    std::vector<VertexId> out;
    if (sources.empty()) return out;
    if (++hit_generation_ == 0) {
      std::fill(hit_stamp_.begin(), hit_stamp_.end(), 0);
      hit_generation_ = 1;
    }
    bfs_.run(g, sources[0], hops);
    out.assign(bfs_.visited().begin(), bfs_.visited().end());
    for (VertexId v : out) {
      hit_stamp_[v] = hit_generation_;
      hits_[v] = 1;
    }
    for (std::size_t r = 1; r < sources.size(); ++r) {
      bfs_.run(g, sources[r], hops);
      for (VertexId v : bfs_.visited()) {
        if (hit_stamp_[v] == hit_generation_ && hits_[v] == r) ++hits_[v];
      }
    }
    std::erase_if(out, [&](VertexId v) { return hits_[v] != sources.size(); });
    std::sort(out.begin(), out.end());
    return out;
  }

  BfsWorkspace bfs_;
  std::vector<std::uint32_t> slot_;
  std::vector<std::uint32_t> slot_stamp_;
  std::uint32_t generation_ = 0;
  std::vector<std::uint32_t> hits_;
  std::vector<std::uint32_t> hit_stamp_;
  std::uint32_t hit_generation_ = 0;

  std::vector<std::uint32_t> offsets_;
  std::vector<std::pair<std::uint32_t, double>> adj_;
  std::vector<double> inc_;
  std::vector<std::pair<double, std::uint32_t>> heap_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::uint8_t> viol_;
  std::vector<std::size_t> count_;
};

Solution relaxed_solution(const PeelResult& peel) {
  Solution s;
  s.group = *peel.best;
  s.total_weight = peel.total_weight;
  s.sigma = peel.sigma;
  s.solver = "maxgf";
  return s;
}

}  // namespace

RadiusMode parse_radius_mode(std::string_view name) {
  if (name == "guarantee") return RadiusMode::kGuarantee;
  if (name == "tight") return RadiusMode::kTight;
  throw std::invalid_argument("unknown radius mode '" + std::string(name) +
                              "' (expected guarantee or tight)");
}

std::string_view radius_mode_name(RadiusMode mode) {
  return mode == RadiusMode::kTight ? "tight" : "guarantee";
}

int candidate_radius(int hops, RadiusMode mode) {
  return mode == RadiusMode::kTight ? (hops + 1) / 2 : hops;
}

Group candidate(const HeteroGraph& g, VertexId v, const Query& q, const MaxGFConfig& cfg) {
  q.validate();
  return ball(g, v, candidate_radius(q.hops, cfg.radius_mode));
}

double upper_bound(const HeteroGraph& g, const Group& c, int p) {
  if (c.empty()) throw std::invalid_argument("upper bound of an empty candidate");
  if (p < 1) throw std::invalid_argument("p must be ≥ 1");
  return total_potential_weight(g, c) / static_cast<double>(p);
}

PeelResult peel_at_least_p(const HeteroGraph& g, const Group& c, int p) {
  if (p < 1) throw std::invalid_argument("p must be ≥ 1");
  c.check(g);
  CandidateWork work(g.vertex_count());
  return work.peel(g, c, p, true);
}

Solution post_process(const HeteroGraph& g, const Solution& s, const Query& q, const Group& c) {
  q.validate();
  s.group.check(g);
  CandidateWork work(g.vertex_count());
  return work.post_process(g, s, q, c);
}

CandidateResult process_candidate(const HeteroGraph& g, VertexId v, const Query& q,
                                  const MaxGFConfig& cfg) {
  q.validate();
  g.check_vertex(v);
  CandidateResult out;
  out.center = v;
  CandidateWork work(g.vertex_count());
  const Group c = ball(g, v, candidate_radius(q.hops, cfg.radius_mode), work.bfs());
  out.upper_bound = upper_bound(g, c, q.min_size);
  const PeelResult peel = work.peel(g, c, q.min_size, false);
  if (!peel.best) return out;

  Solution relaxed = relaxed_solution(peel);
  Solution repaired = work.post_process(g, relaxed, q, c);
  out.best_relaxed = evaluate_group(g, std::move(relaxed.group), q, "maxgf", work.bfs());
  if (repaired.strictly_feasible) out.best_strict = std::move(repaired);
  return out;
}

bool maxgf_ranks_before(const Solution& a, const Solution& b) {
  if (a.strictly_feasible != b.strictly_feasible) return a.strictly_feasible;
  return ranks_before(a, b);
}

MaxGFResult solve_maxgf_detailed(const HeteroGraph& g, const Query& q, const MaxGFConfig& cfg) {
  q.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = g.vertex_count();
  const int radius = candidate_radius(q.hops, cfg.radius_mode);
  const auto p = static_cast<std::size_t>(q.min_size);

  struct Worker {
    explicit Worker(std::size_t n) : work(n) {}
    CandidateWork work;
    std::optional<Solution> best;
    std::optional<Solution> best_relaxed;
    std::size_t examined = 0;
    std::size_t pruned = 0;
  };

  const unsigned threads = std::max(1u, cfg.threads);
  std::vector<Worker> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) workers.emplace_back(n);
  std::atomic<double> best_strict{-std::numeric_limits<double>::infinity()};

  // Bounds first, then candidates in decreasing bound order so that strong
  // incumbents appear early and most of the tail is skipped.
  std::vector<double> bounds(n, -1.0);
  detail::parallel_for(n, threads, [&](unsigned t, std::size_t i) {
    const Group c = ball(g, static_cast<VertexId>(i), radius, workers[t].work.bfs());
    if (c.size() >= p) bounds[i] = upper_bound(g, c, q.min_size);
  });
  std::vector<VertexId> order;
  for (std::size_t i = 0; i < n; ++i) {
    if (bounds[i] >= 0.0) order.push_back(static_cast<VertexId>(i));
  }
  std::ranges::stable_sort(order, std::greater<>{}, [&](VertexId v) { return bounds[v]; });

  detail::parallel_for(order.size(), threads, [&](unsigned t, std::size_t i) {
    Worker& w = workers[t];
    const VertexId v = order[i];
    if (cfg.prune) {
      // A strictly feasible group of sigma at most the bound cannot beat the
      // incumbent, so skipping the candidate leaves the answer unchanged.
      const double incumbent = best_strict.load(std::memory_order_relaxed);
      if (bounds[v] < incumbent - slack(incumbent)) {
        ++w.pruned;
        return;
      }
    }
    ++w.examined;

    const Group c = ball(g, v, radius, w.work.bfs());
    const PeelResult peel = w.work.peel(g, c, q.min_size, false);
    Solution relaxed = relaxed_solution(peel);
    Solution repaired = w.work.post_process(g, relaxed, q, c);
    if (!w.best_relaxed || ranks_before(relaxed, *w.best_relaxed)) {
      w.best_relaxed = std::move(relaxed);
    }
    if (repaired.strictly_feasible) detail::atomic_max(best_strict, repaired.sigma);
    if (cfg.strict_only && !repaired.strictly_feasible) return;
    if (!w.best || maxgf_ranks_before(repaired, *w.best)) w.best = std::move(repaired);
  });

  MaxGFResult out;
  for (auto& w : workers) {
    out.candidates_examined += w.examined;
    out.candidates_pruned += w.pruned;
    if (w.best && (!out.solution || maxgf_ranks_before(*w.best, *out.solution))) {
      out.solution = std::move(w.best);
    }
    if (w.best_relaxed && (!out.best_relaxed || ranks_before(*w.best_relaxed, *out.best_relaxed))) {
      out.best_relaxed = std::move(w.best_relaxed);
    }
  }
  if (out.best_relaxed) {
    out.best_relaxed = evaluate_group(g, std::move(out.best_relaxed->group), q, "maxgf");
  }
  if (out.solution) {
    out.solution->solver = "maxgf";
    out.solution->elapsed = std::chrono::steady_clock::now() - start;
  }
  return out;
}

std::optional<Solution> solve_maxgf(const HeteroGraph& g, const Query& q, const MaxGFConfig& cfg) {
  return solve_maxgf_detailed(g, q, cfg).solution;
}

}  // namespace hmgf
