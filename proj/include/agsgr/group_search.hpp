#pragma once

#include <cstdint>
#include <vector>

#include "agsgr/social_graph.hpp"
#include "agsgr/types.hpp"

namespace agsgr {

struct Query {
  UserId target = 0;
  int group_size = 0;  // h
  int core = 0;        // k
  int top_k = 0;       // K, size of the location list
  bool friend_constraint = true;
  std::size_t group_cap = 10000;
};

// Throws FormatError unless k >= 1, K >= 1 and h >= k + 1 (a k-core has at
// least k + 1 members, so smaller h can never be satisfied).
void validate(const Query& q);

struct CandidateGroup {
  std::vector<UserId> members;  // sorted ascending
  int component_id = 0;
};

struct CandidatePool {
  std::vector<CandidateGroup> groups;
  std::size_t cap = 0;
  bool empty() const { return groups.empty(); }
};

/// Enumeration state: a partial member set plus the members already used as
// expansion pivots. Both lists are sorted node indices.
struct PartialGroup {
  std::vector<std::uint32_t> members;
  std::vector<std::uint32_t> expanded;
};

// One expansion step. Picks the highest-degree unexpanded member (degree
// within `component`, ties to the smallest user id) and emits every
// extension of the partial by a neighbor subset Vp with
// |Vp| + |partial| <= h and k <= |Vp| + induced_degree(pivot). The empty
// subset — same members, pivot spent — is emitted only when the pivot is
// already degree-feasible and another member remains to expand.
std::vector<PartialGroup> expand_group(const SocialGraph& g, const NodeSet& component,
                                       const PartialGroup& partial, std::uint32_t k,
                                       std::uint32_t h);

/// BFS enumeration of candidate groups seeded at {target}: FIFO queue of
// unextended partials deduped by full state (members + expanded pivots),
// size-h member sets deduped once more at emission, capped at q.group_cap.
// Every emitted group passes is_valid_group under (k, h, target).
CandidatePool get_candidate_groups(const SocialGraph& g, const NodeSet& component,
                                   std::uint32_t target_idx, const Query& q);

}  // namespace agsgr
