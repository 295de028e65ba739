#include "hmgf/group.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace hmgf {
namespace {

// Exact product as an unevaluated sum hi + lo.
std::pair<double, double> exact_product(double a, double b) {
  const double hi = a * b;
  return {hi, std::fma(a, b, -hi)};
}

std::strong_ordering order_doubles(double a, double b) {
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

Group::Group(std::vector<VertexId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Group::contains(VertexId v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

void Group::check(const HeteroGraph& g) const {
  if (!members_.empty()) g.check_vertex(members_.back());
}

void Query::validate() const {
  if (hops < 1) throw std::invalid_argument("h must be ≥ 1");
  if (min_size < 1) throw std::invalid_argument("p must be ≥ 1");
}

double total_potential_weight(const HeteroGraph& g, const Group& s) {
  s.check(g);
  double total = 0.0;
  for (VertexId u : s) {
    for (const auto& e : g.potentials(u)) {
      if (u < e.to && s.contains(e.to)) total += e.weight;
    }
  }
  return total;
}

double average_weight(const HeteroGraph& g, const Group& s) {
  if (s.empty()) return 0.0;
  return total_potential_weight(g, s) / static_cast<double>(s.size());
}

int max_pairwise_hop(const HeteroGraph& g, const Group& s) {
  BfsWorkspace ws;
  return max_pairwise_hop(g, s, ws);
}

int max_pairwise_hop(const HeteroGraph& g, const Group& s, BfsWorkspace& ws) {
  if (s.empty()) throw std::invalid_argument("max_pairwise_hop of an empty group");
  s.check(g);
  int worst = 0;
  const auto members = s.members();
  // The last member's distances are covered by the earlier searches.
  for (std::size_t i = 0; i + 1 < members.size(); ++i) {
    const int d = ws.farthest_target(g, members[i], members.subspan(i + 1));
    if (d == kInfiniteHops) return kInfiniteHops;
    worst = std::max(worst, d);
  }
  return worst;
}

bool within_hops(const HeteroGraph& g, const Group& s, int hops, BfsWorkspace& ws) {
  s.check(g);
  const auto members = s.members();
  for (std::size_t i = 0; i + 1 < members.size(); ++i) {
    ws.run(g, members[i], hops);
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (!ws.reached(members[j])) return false;
    }
  }
  return true;
}

bool is_feasible(const HeteroGraph& g, const Group& s, const Query& q) {
  if (s.size() < static_cast<std::size_t>(std::max(q.min_size, 0))) return false;
  BfsWorkspace ws;
  return within_hops(g, s, q.hops, ws);
}

std::strong_ordering compare_average(double w1, std::size_t n1, double w2, std::size_t n2) {
  if (n1 == 0) w1 = 0.0, n1 = 1;
  if (n2 == 0) w2 = 0.0, n2 = 1;
  const auto [hi1, lo1] = exact_product(w1, static_cast<double>(n2));
  const auto [hi2, lo2] = exact_product(w2, static_cast<double>(n1));
  if (auto c = order_doubles(hi1, hi2); c != 0) return c;
  return order_doubles(lo1, lo2);
}

bool ranks_before(const Solution& a, const Solution& b) {
  const auto by_average =
      compare_average(a.total_weight, a.group.size(), b.total_weight, b.group.size());
  if (by_average != 0) return by_average > 0;
  if (a.group.size() != b.group.size()) return a.group.size() < b.group.size();
  return a.group < b.group;
}

Solution evaluate_group(const HeteroGraph& g, Group s, const Query& q, std::string solver) {
  BfsWorkspace ws;
  return evaluate_group(g, std::move(s), q, std::move(solver), ws);
}

Solution evaluate_group(const HeteroGraph& g, Group s, const Query& q, std::string solver,
                        BfsWorkspace& ws) {
  Solution out;
  out.total_weight = total_potential_weight(g, s);
  out.sigma = s.empty() ? 0.0 : out.total_weight / static_cast<double>(s.size());
  out.max_hop = s.empty() ? 0 : max_pairwise_hop(g, s, ws);
  out.strictly_feasible = s.size() >= static_cast<std::size_t>(q.min_size) &&
                          out.max_hop <= q.hops;
  out.group = std::move(s);
  out.solver = std::move(solver);
  return out;
}

}  // namespace hmgf
