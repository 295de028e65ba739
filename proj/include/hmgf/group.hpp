#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hmgf/graph.hpp"
#include "hmgf/hops.hpp"

namespace hmgf {

// A sorted, duplicate-free vertex set. Ordering is lexicographic over the
// member list.
class Group {
 public:
  Group() = default;
  explicit Group(std::vector<VertexId> members);
  Group(std::initializer_list<VertexId> members)
      : Group(std::vector<VertexId>(members)) {}

  std::span<const VertexId> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(VertexId v) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  // Throws std::out_of_range if a member is not a vertex of `g`.
  void check(const HeteroGraph& g) const;

  friend auto operator<=>(const Group&, const Group&) = default;
  friend bool operator==(const Group&, const Group&) = default;

 private:
  std::vector<VertexId> members_;
};

// A group query: every pair within `hops` friend hops, at least `min_size`
// members.
struct Query {
  int hops = 1;
  int min_size = 1;

  // Throws std::invalid_argument when h < 1 or p < 1.
  void validate() const;
};

using Milliseconds = std::chrono::duration<double, std::milli>;

struct Solution {
  Group group;
  double sigma = 0.0;
  double total_weight = 0.0;
  int max_hop = 0;  // kInfiniteHops when some pair is disconnected
  bool strictly_feasible = false;
  std::string solver;
  Milliseconds elapsed{0};
};

// Solver failures caused by instance size or time limits rather than bad
// input.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sum of potential weights with both endpoints in `s`, each edge once.
// Members are scanned in ascending order so the result is reproducible
// bit-for-bit for a given set.
double total_potential_weight(const HeteroGraph& g, const Group& s);

// w(s) / |s|, and 0 for the empty group.
double average_weight(const HeteroGraph& g, const Group& s);

// Largest friend-hop distance (measured in the full graph) over all member
// pairs; 0 for a singleton. Throws std::invalid_argument for an empty group.
int max_pairwise_hop(const HeteroGraph& g, const Group& s);
int max_pairwise_hop(const HeteroGraph& g, const Group& s, BfsWorkspace& ws);

// True when every member pair is within `hops` friend hops.
bool within_hops(const HeteroGraph& g, const Group& s, int hops, BfsWorkspace& ws);

bool is_feasible(const HeteroGraph& g, const Group& s, const Query& q);

// Exact comparison of w1/n1 against w2/n2 by cross-multiplication; the
// products are compared with their rounding error, so the result never
// flips due to floating-point rounding. An empty set averages 0.
std::strong_ordering compare_average(double w1, std::size_t n1, double w2, std::size_t n2);

// Total order shared by every solver: higher average weight first, then the
// smaller group, then the lexicographically smaller member list.
bool ranks_before(const Solution& a, const Solution& b);

// Builds a fully evaluated Solution for `s` against `q`.
Solution evaluate_group(const HeteroGraph& g, Group s, const Query& q, std::string solver);
Solution evaluate_group(const HeteroGraph& g, Group s, const Query& q, std::string solver,
                        BfsWorkspace& ws);

}  // namespace hmgf
