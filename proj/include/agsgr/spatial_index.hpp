#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "agsgr/geometry.hpp"
#include "agsgr/types.hpp"

namespace agsgr {

struct PoiEntry {
  PoiId id = 0;
  PlanarPoint loc;
  TopicId topic = kNoTopic;
};

struct RankedLocation {
  PoiId poi = 0;
  double adist = 0;  // meters
};

using AnnResult = std::vector<RankedLocation>;

struct SearchStats {
  std::size_t nodes_visited = 0;
  std::size_t leaves_visited = 0;
  std::size_t entries_scanned = 0;
  std::size_t pruned_subtrees = 0;
  std::vector<std::uint32_t> pruned_nodes;  // roots of skipped subtrees
};

// Static MBR hierarchy bulk-loaded with sort-tile-recursive packing.
class SpatialIndex {
 public:
  struct Node {
    Mbr box;
    bool leaf = true;
    std::uint32_t first = 0;  // range into entries() for leaves, child_ids() otherwise
    std::uint32_t count = 0;
  };

  static SpatialIndex build(std::vector<PoiEntry> entries, std::uint32_t fanout = 16);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::uint32_t root() const { return root_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<PoiEntry>& entries() const { return entries_; }
  std::span<const std::uint32_t> children(const Node& n) const;
  std::span<const PoiEntry> leaf_entries(const Node& n) const;

  // Every entry under `node`, in storage order (test support).
  std::vector<PoiEntry> collect_entries(std::uint32_t node) const;

 private:
  std::vector<PoiEntry> entries_;       // reordered by the packing
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> child_ids_;
  std::uint32_t root_ = 0;
};

// Depth-first aggregate nearest-neighbor search: returns the K POIs with the
// smallest max-distance to the group members, ascending (adist, PoiId).
// Children are visited in ascending mindist to the group's enclosing-circle
// center; a subtree is pruned when
//   mindist(subtree, center) > kth_best_adist + min_i |member_i, center|.
// `fault_slack` (test-only) tightens the prune threshold by that many meters
// to make the pruning deliberately unsafe for fault-injection checks.
AnnResult spa_df(const SpatialIndex& index, std::span<const PlanarPoint> group_locs,
                 std::size_t k, SearchStats* stats = nullptr, double fault_slack = 0.0);

// Linear-scan oracle with the same (adist, PoiId) ordering.
AnnResult brute_force_ann(std::span<const PoiEntry> pois, std::span<const PlanarPoint> group_locs,
                          std::size_t k);

}  // namespace agsgr
