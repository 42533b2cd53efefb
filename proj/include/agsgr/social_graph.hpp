#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "agsgr/types.hpp"

namespace agsgr {

// Immutable undirected friendship graph stored as CSR with sorted neighbor
// lists. Duplicate edges and self-loops are dropped at build time, so the
// adjacency is always symmetric and simple. All queries are read-only and
// safe to call concurrently once the graph is built.
class SocialGraph {
 public:
  SocialGraph() = default;

  // `extra_users` registers users that appear in no edge (e.g. check-in-only
  // users); they become isolated nodes.
  static SocialGraph build(const std::vector<std::pair<UserId, UserId>>& edges,
                           std::span<const UserId> extra_users = {});

  std::size_t user_count() const { return ids_.size(); }
  std::size_t edge_count() const { return adj_.size() / 2; }
  std::span<const UserId> users() const { return ids_; }

  bool has_user(UserId u) const { return index_of(u).has_value(); }
  std::optional<std::uint32_t> index_of(UserId u) const;
  UserId id_of(std::uint32_t idx) const { return ids_[idx]; }

  std::span<const std::uint32_t> neighbors(std::uint32_t idx) const {
    return {adj_.data() + offsets_[idx], adj_.data() + offsets_[idx + 1]};
  }
  std::uint32_t degree(std::uint32_t idx) const { return offsets_[idx + 1] - offsets_[idx]; }
  bool has_edge(std::uint32_t a, std::uint32_t b) const;

 private:
  std::vector<UserId> ids_;             // sorted unique user ids
  std::vector<std::uint32_t> offsets_;  // CSR row starts, size user_count()+1
  std::vector<std::uint32_t> adj_;      // neighbor indices, sorted within each row
};

// Core number per node, indexed like the graph.
struct CoreNumbers {
  std::vector<std::uint32_t> core;
  std::uint32_t of(std::uint32_t idx) const { return core[idx]; }
};

// Linear-time bucket peeling; runs in O(|U| + |E|).
CoreNumbers core_decomposition(const SocialGraph& g);

// Node subset of a graph, kept as a sorted index list plus a membership mask.
struct NodeSet {
  std::vector<std::uint32_t> nodes;  // sorted ascending
  std::vector<char> mask;            // size user_count()
  bool contains(std::uint32_t idx) const { return idx < mask.size() && mask[idx] != 0; }
  bool empty() const { return nodes.empty(); }
};

// Induced subgraph on {u : core(u) >= k}; may be empty.
NodeSet k_core_subgraph(const SocialGraph& g, std::uint32_t k);
NodeSet k_core_subgraph(const SocialGraph& g, std::uint32_t k, const CoreNumbers& cores);

// Components of the induced subgraph, each sorted, ordered by smallest member.
std::vector<std::vector<std::uint32_t>> connected_components(const SocialGraph& g,
                                                             const NodeSet& sub);

// Degree of `idx` within the subgraph induced by `members` (sorted indices).
std::uint32_t induced_degree(const SocialGraph& g, std::span<const std::uint32_t> members,
                             std::uint32_t idx);

bool is_connected_subset(const SocialGraph& g, std::span<const std::uint32_t> members);

// Candidate-group test: |members| == h, target inside, induced subgraph
// connected with min degree >= k, and (unless relaxed) every other member a
// direct friend of the target. `members` must be sorted node indices.
bool is_valid_group(const SocialGraph& g, std::span<const std::uint32_t> members, std::uint32_t k,
                    std::uint32_t h, std::uint32_t target_idx,
                    bool require_target_friendship = true);

// Convenience overload on raw user ids; unknown ids make the group invalid.
bool is_valid_group(const SocialGraph& g, std::span<const UserId> member_ids, std::uint32_t k,
                    std::uint32_t h, UserId target, bool require_target_friendship = true);

}  // namespace agsgr
