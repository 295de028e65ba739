#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "hmgf/graph.hpp"
#include "hmgf/group.hpp"

namespace hmgf {

// Radius of the hop-bounded candidate subgraph around each center.
//   kGuarantee: r = h. Every strictly feasible group containing the center
//               lies inside its candidate; peel results stay within 2h hops.
//   kTight:     r = ceil(h/2). Peel results stay within h+1 hops, without
//               the containment property.
enum class RadiusMode { kGuarantee, kTight };

RadiusMode parse_radius_mode(std::string_view name);
std::string_view radius_mode_name(RadiusMode mode);

struct MaxGFConfig {
  RadiusMode radius_mode = RadiusMode::kGuarantee;
  // Return nothing rather than a group that violates the hop constraint.
  bool strict_only = false;
  // Skip candidates whose bound cannot beat the best strict result so far.
  bool prune = true;
  unsigned threads = 1;
};

int candidate_radius(int hops, RadiusMode mode);

// ball(v, r) with r chosen by the radius mode.
Group candidate(const HeteroGraph& g, VertexId v, const Query& q, const MaxGFConfig& cfg);

// w(c) / p, which dominates sigma of every subset of c with at least p
// members. Throws std::invalid_argument for an empty c or p < 1.
double upper_bound(const HeteroGraph& g, const Group& c, int p);

struct PeelStep {
  VertexId removed;
  double incident_weight;  // weight into the remaining set at removal time
};

struct PeelRecord {
  std::size_t size;
  double total_weight;
  double sigma;
};

struct PeelTrace {
  std::vector<PeelStep> removals;
  std::vector<PeelRecord> records;  // one per visited set of size >= p
};

struct PeelResult {
  std::optional<Group> best;  // absent when |c| < p
  double total_weight = 0.0;
  double sigma = 0.0;
  PeelTrace trace;
};

// Greedy peeling with a size floor: repeatedly drops the member with the
// least potential weight into the current set (ties to the smaller index)
// until max(p, 1) members remain, and returns the visited set of size >= p
// with the highest average weight (ties to the smaller set).
PeelResult peel_at_least_p(const HeteroGraph& g, const Group& c, int p);

// Restores the hop constraint on a peel result drawn from candidate `c`:
//   (a) while some pair is more than h hops apart and the group is larger
//       than p, drop the member in the most violating pairs (ties: smaller
//       potential weight into the group, then smaller index);
//   (b) at exactly p members, try replacing one violating member by a vertex
//       of c outside the group, keeping the violation-free swap with the
//       best average weight;
//   (c) otherwise return `s` unchanged, flagged as not strictly feasible.
// The returned solution's max_hop and feasibility are always recomputed.
Solution post_process(const HeteroGraph& g, const Solution& s, const Query& q, const Group& c);

struct CandidateResult {
  VertexId center = 0;
  std::optional<Solution> best_relaxed;  // peel result before post-processing
  std::optional<Solution> best_strict;   // post-processed, when feasible
  double upper_bound = 0.0;
};

// Candidate, peel and post-process for one center, without pruning.
CandidateResult process_candidate(const HeteroGraph& g, VertexId v, const Query& q,
                                  const MaxGFConfig& cfg = {});

struct MaxGFResult {
  std::optional<Solution> solution;
  // Highest-sigma peel result over the examined candidates, before
  // post-processing.
  std::optional<Solution> best_relaxed;
  std::size_t candidates_examined = 0;
  std::size_t candidates_pruned = 0;
};

// Orders final MaxGF answers: strictly feasible first, then ranks_before.
bool maxgf_ranks_before(const Solution& a, const Solution& b);

// Runs every center (in parallel when cfg.threads > 1) and keeps the best
// post-processed result under maxgf_ranks_before. The answer does not depend
// on the thread count or on pruning.
MaxGFResult solve_maxgf_detailed(const HeteroGraph& g, const Query& q,
                                 const MaxGFConfig& cfg = {});

std::optional<Solution> solve_maxgf(const HeteroGraph& g, const Query& q,
                                    const MaxGFConfig& cfg = {});

}  // namespace hmgf
