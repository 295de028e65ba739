#include "hmgf/exact.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "parallel.hpp"

namespace hmgf {

BallTooLarge::BallTooLarge(VertexId center, std::size_t size, std::size_t limit)
    : ResourceError("ball around vertex " + std::to_string(center) + " has " +
                    std::to_string(size) + " vertices, above the exact solver limit of " +
                    std::to_string(limit)),
      center_(center),
      size_(size) {}

TimeBudgetExceeded::TimeBudgetExceeded(std::chrono::milliseconds budget)
    : ResourceError("exact solver exceeded its time budget of " +
                    std::to_string(budget.count()) + " ms") {}

namespace {

using Clock = std::chrono::steady_clock;
using Mask = std::uint64_t;

constexpr std::size_t kMaxLocal = 64;
constexpr double kRelativeSlack = 1e-9;

// Allowance for summation-order rounding when comparing incrementally
// accumulated weights against canonical ones; it only ever weakens pruning.
double slack(double sigma) { return kRelativeSlack * std::max(1.0, sigma); }

struct Incumbent {
  std::optional<Solution> best;

  double sigma() const {
    return best ? best->sigma : -std::numeric_limits<double>::infinity();
  }
};

// Enumerates the feasible sets anchored at one vertex: subsets of its h-ball
// that contain the anchor and otherwise only larger indices.
class AnchorSearch {
 public:
  AnchorSearch(const HeteroGraph& g, const Query& q, const ExactConfig& cfg,
               std::atomic<double>& shared_best, Clock::time_point deadline)
      : g_(g), q_(q), cfg_(cfg), shared_best_(shared_best), deadline_(deadline) {}

  void run(VertexId anchor, const Group& ball, BfsWorkspace& ws, Incumbent& incumbent) {
    local_.clear();
    local_.push_back(anchor);
    for (VertexId u : ball) {
      if (u > anchor) local_.push_back(u);
    }
    const std::size_t k = local_.size();
    if (k < static_cast<std::size_t>(q_.min_size)) return;

    // Pairwise hop compatibility inside the anchored candidate list.
    compat_.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      ws.run(g_, local_[i], q_.hops);
      for (std::size_t j = 0; j < k; ++j) {
        if (ws.reached(local_[j])) compat_[i] |= Mask{1} << j;
      }
    }

    weight_.assign(k * k, 0.0);
    incident_.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      for (const auto& e : g_.potentials(local_[i])) {
        const auto it = std::lower_bound(local_.begin() + 1, local_.end(), e.to);
        if (e.to == anchor) {
          weight_[i * k] = e.weight;
        } else if (it != local_.end() && *it == e.to) {
          weight_[i * k + static_cast<std::size_t>(it - local_.begin())] = e.weight;
        } else {
          continue;
        }
        incident_[i] += e.weight;
      }
    }

    incumbent_ = &incumbent;
    const Mask candidates = compat_[0] & ~Mask{1};
    extend(Mask{1}, 1, 0.0, candidates);
  }

 private:
  double pair_weight(std::size_t i, std::size_t j) const { return weight_[i * local_.size() + j]; }

  // Weight of the set in the same summation order as total_potential_weight.
  double canonical_weight(Mask set) const {
    double total = 0.0;
    for (Mask a = set; a; a &= a - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(a));
      for (Mask b = set & ~((Mask{2} << i) - 1); b; b &= b - 1) {
        const auto j = static_cast<std::size_t>(std::countr_zero(b));
        if (const double w = pair_weight(i, j); w > 0.0) total += w;
      }
    }
    return total;
  }

  Group to_group(Mask set) const {
    std::vector<VertexId> members;
    for (Mask a = set; a; a &= a - 1) members.push_back(local_[std::countr_zero(a)]);
    return Group(std::move(members));
  }

  double threshold() const {
    return std::max(incumbent_->sigma(), shared_best_.load(std::memory_order_relaxed));
  }

  void consider(Mask set, std::size_t size, double weight) {
    const double sigma = weight / static_cast<double>(size);
    const double best = threshold();
    if (sigma < best - slack(best)) return;

    Solution candidate;
    candidate.total_weight = canonical_weight(set);
    candidate.sigma = candidate.total_weight / static_cast<double>(size);
    candidate.group = to_group(set);
    if (incumbent_->best && !ranks_before(candidate, *incumbent_->best)) return;
    incumbent_->best = std::move(candidate);
    detail::atomic_max(shared_best_, incumbent_->best->sigma);
  }

  void extend(Mask set, std::size_t size, double weight, Mask candidates) {
    if (cfg_.time_budget && (++nodes_ & 0x3ff) == 0 && Clock::now() > deadline_) {
      throw TimeBudgetExceeded(*cfg_.time_budget);
    }
    const auto p = static_cast<std::size_t>(q_.min_size);
    if (size >= p) consider(set, size, weight);
    if (!candidates || size + static_cast<std::size_t>(std::popcount(candidates)) < p) return;

    if (cfg_.prune) {
      double optimistic = weight;
      for (Mask a = candidates; a; a &= a - 1) optimistic += incident_[std::countr_zero(a)];
      const double bound = optimistic / static_cast<double>(std::max(p, size + 1));
      const double best = threshold();
      if (bound < best - slack(best)) return;
    }

    for (Mask a = candidates; a; a &= a - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(a));
      double added = 0.0;
      for (Mask b = set; b; b &= b - 1) added += pair_weight(j, std::countr_zero(b));
      const Mask later = candidates & ~((Mask{2} << j) - 1);
      extend(set | (Mask{1} << j), size + 1, weight + added, later & compat_[j]);
    }
  }

  const HeteroGraph& g_;
  const Query& q_;
  const ExactConfig& cfg_;
  std::atomic<double>& shared_best_;
  Clock::time_point deadline_;

  std::vector<VertexId> local_;
  std::vector<Mask> compat_;
  std::vector<double> weight_;
  std::vector<double> incident_;
  Incumbent* incumbent_ = nullptr;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::optional<Solution> solve_exact(const HeteroGraph& g, const Query& q, const ExactConfig& cfg) {
  q.validate();
  if (cfg.max_ball_size < static_cast<std::size_t>(q.min_size)) {
    throw std::invalid_argument("max_ball_size must be at least p");
  }
  if (cfg.max_ball_size > kMaxLocal) {
    throw std::invalid_argument("max_ball_size above " + std::to_string(kMaxLocal) +
                                " is not supported");
  }
  const auto start = Clock::now();
  const auto n = g.vertex_count();
  if (static_cast<std::size_t>(q.min_size) > n) return std::nullopt;

  BfsWorkspace ws(n);
  std::vector<Group> balls;
  balls.reserve(n);
  for (VertexId v = 0; v < n; ++v) {
    balls.push_back(ball(g, v, q.hops, ws));
    if (balls.back().size() > cfg.max_ball_size) {
      throw BallTooLarge(v, balls.back().size(), cfg.max_ball_size);
    }
  }

  const auto deadline = cfg.time_budget ? start + *cfg.time_budget : Clock::time_point::max();
  std::atomic<double> shared_best{-std::numeric_limits<double>::infinity()};
  const unsigned workers = std::max(1u, cfg.threads);
  std::vector<Incumbent> per_worker(workers);
  std::vector<BfsWorkspace> spaces(workers, BfsWorkspace(n));
  std::vector<AnchorSearch> searches(workers, AnchorSearch(g, q, cfg, shared_best, deadline));

  detail::parallel_for(n, workers, [&](unsigned w, std::size_t v) {
    searches[w].run(static_cast<VertexId>(v), balls[v], spaces[w], per_worker[w]);
  });

  std::optional<Solution> best;
  for (auto& inc : per_worker) {
    if (inc.best && (!best || ranks_before(*inc.best, *best))) best = std::move(inc.best);
  }
  if (!best) return std::nullopt;

  Solution out = evaluate_group(g, std::move(best->group), q, "exact");
  out.elapsed = Clock::now() - start;
  return out;
}

std::optional<Solution> brute_force_oracle(const HeteroGraph& g, const Query& q) {
  q.validate();
  const std::size_t n = g.vertex_count();
  if (n > 20) throw std::invalid_argument("brute-force oracle is limited to 20 vertices");
  const auto start = Clock::now();

  constexpr int kFar = std::numeric_limits<int>::max() / 4;
  std::vector<int> dist(n * n, kFar);
  for (VertexId u = 0; u < n; ++u) {
    dist[u * n + u] = 0;
    for (VertexId v : g.friends(u)) dist[u * n + v] = 1;
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        dist[i * n + j] = std::min(dist[i * n + j], dist[i * n + m] + dist[m * n + j]);
      }
    }
  }

  std::optional<Solution> best;
  const auto p = static_cast<std::size_t>(q.min_size);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) < p) continue;
    std::vector<VertexId> members;
    for (std::uint32_t a = mask; a; a &= a - 1) members.push_back(std::countr_zero(a));

    bool ok = true;
    for (std::size_t i = 0; ok && i < members.size(); ++i) {
      for (std::size_t j = i + 1; ok && j < members.size(); ++j) {
        ok = dist[members[i] * n + members[j]] <= q.hops;
      }
    }
    if (!ok) continue;

    Solution s;
    s.group = Group(std::move(members));
    s.total_weight = total_potential_weight(g, s.group);
    s.sigma = s.total_weight / static_cast<double>(s.group.size());
    if (!best || ranks_before(s, *best)) best = std::move(s);
  }
  if (!best) return std::nullopt;

  Solution out = evaluate_group(g, std::move(best->group), q, "oracle");
  out.elapsed = Clock::now() - start;
  return out;
}

}  // namespace hmgf
