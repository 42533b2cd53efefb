#include "agsgr/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "agsgr/errors.hpp"

namespace agsgr {

namespace {

// Sort-tile-recursive tiling: orders items by x into vertical slices, then by
// y within each slice, and cuts the result into runs of `fanout`.
template <typename T, typename GetX, typename GetY>
std::vector<std::pair<std::size_t, std::size_t>> str_tile(std::vector<T>& items,
                                                          std::uint32_t fanout, GetX get_x,
                                                          GetY get_y) {
  const std::size_t n = items.size();
  const auto pages = static_cast<std::size_t>(std::ceil(double(n) / fanout));
  const auto slices = static_cast<std::size_t>(std::ceil(std::sqrt(double(pages))));
  const std::size_t slice_len = slices ? (pages + slices - 1) / slices * fanout : n;

  std::sort(items.begin(), items.end(),
            [&](const T& a, const T& b) { return get_x(a) < get_x(b); });
  for (std::size_t s = 0; s < n; s += slice_len) {
    auto end = std::min(n, s + slice_len);
    std::sort(items.begin() + static_cast<std::ptrdiff_t>(s),
              items.begin() + static_cast<std::ptrdiff_t>(end),
              [&](const T& a, const T& b) { return get_y(a) < get_y(b); });
  }

  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t s = 0; s < n; s += fanout) runs.emplace_back(s, std::min(n, s + fanout));
  return runs;
}

}  // namespace

SpatialIndex SpatialIndex::build(std::vector<PoiEntry> entries, std::uint32_t fanout) {
  SpatialIndex idx;
  if (fanout < 2) fanout = 2;
  if (entries.empty()) return idx;

  // Deterministic base order before tiling so equal coordinates can't make
  // the layout depend on the caller's ordering.
  std::sort(entries.begin(), entries.end(),
            [](const PoiEntry& a, const PoiEntry& b) { return a.id < b.id; });
  auto runs = str_tile(
      entries, fanout, [](const PoiEntry& e) { return e.loc.x; },
      [](const PoiEntry& e) { return e.loc.y; });
  idx.entries_ = std::move(entries);

  std::vector<std::uint32_t> level;
  for (auto [first, end] : runs) {
    Node leaf;
    leaf.leaf = true;
    leaf.first = static_cast<std::uint32_t>(first);
    leaf.count = static_cast<std::uint32_t>(end - first);
    leaf.box = Mbr::of(idx.entries_[first].loc);
    for (std::size_t i = first + 1; i < end; ++i) leaf.box.expand(idx.entries_[i].loc);
    level.push_back(static_cast<std::uint32_t>(idx.nodes_.size()));
    idx.nodes_.push_back(leaf);
  }

  while (level.size() > 1) {
    struct Ref {
      std::uint32_t id;
      double cx, cy;
    };
    std::vector<Ref> refs;
    refs.reserve(level.size());
    for (std::uint32_t id : level) {
      const Mbr& b = idx.nodes_[id].box;
      refs.push_back({id, (b.xmin + b.xmax) / 2, (b.ymin + b.ymax) / 2});
    }
    auto parent_runs = str_tile(
        refs, fanout, [](const Ref& r) { return r.cx; }, [](const Ref& r) { return r.cy; });

    std::vector<std::uint32_t> next;
    for (auto [first, end] : parent_runs) {
      Node inner;
      inner.leaf = false;
      inner.first = static_cast<std::uint32_t>(idx.child_ids_.size());
      inner.count = static_cast<std::uint32_t>(end - first);
      inner.box = idx.nodes_[refs[first].id].box;
      for (std::size_t i = first; i < end; ++i) {
        idx.child_ids_.push_back(refs[i].id);
        inner.box.expand(idx.nodes_[refs[i].id].box);
      }
      next.push_back(static_cast<std::uint32_t>(idx.nodes_.size()));
      idx.nodes_.push_back(inner);
    }
    level = std::move(next);
  }
  idx.root_ = level.front();
  return idx;
}

std::span<const std::uint32_t> SpatialIndex::children(const Node& n) const {
  return {child_ids_.data() + n.first, n.count};
}

std::span<const PoiEntry> SpatialIndex::leaf_entries(const Node& n) const {
  return {entries_.data() + n.first, n.count};
}

std::vector<PoiEntry> SpatialIndex::collect_entries(std::uint32_t node) const {
  std::vector<PoiEntry> out;
  std::vector<std::uint32_t> stack{node};
  while (!stack.empty()) {
    const Node& n = nodes_[stack.back()];
    stack.pop_back();
    if (n.leaf) {
      auto es = leaf_entries(n);
      out.insert(out.end(), es.begin(), es.end());
    } else {
      auto cs = children(n);
      stack.insert(stack.end(), cs.begin(), cs.end());
    }
  }
  return out;
}

namespace {

using Best = std::pair<double, PoiId>;  // (adist, id), lexicographic

struct DfState {
  const SpatialIndex& index;
  std::span<const PlanarPoint> locs;
  PlanarPoint center;
  double min_member_dist;
  std::size_t k;
  double fault_slack;
  SearchStats* stats;
  std::priority_queue<Best> heap;  // max-heap: top is the current k-th best

  double kth() const {
    return heap.size() == k ? heap.top().first : std::numeric_limits<double>::infinity();
  }

  bool prunable(double node_mindist) const {
    return node_mindist > kth() + min_member_dist - fault_slack;
  }

  void visit(std::uint32_t node_id) {
    const SpatialIndex::Node& node = index.nodes()[node_id];
    if (stats) ++stats->nodes_visited;
    if (node.leaf) {
      if (stats) ++stats->leaves_visited;
      for (const PoiEntry& e : index.leaf_entries(node)) {
        if (stats) ++stats->entries_scanned;
        Best cand{adist(e.loc, locs), e.id};
        if (heap.size() < k) {
          heap.push(cand);
        } else if (cand < heap.top()) {
          heap.pop();
          heap.push(cand);
        }
      }
      return;
    }
    std::vector<std::pair<double, std::uint32_t>> order;
    order.reserve(node.count);
    for (std::uint32_t child : index.children(node))
      order.emplace_back(mindist(index.nodes()[child].box, center), child);
    std::sort(order.begin(), order.end());
    for (auto [d, child] : order) {
      if (prunable(d)) {  // re-checked here: the k-th best tightens as we go
        if (stats) {
          ++stats->pruned_subtrees;
          stats->pruned_nodes.push_back(child);
        }
        continue;
      }
      visit(child);
    }
  }
};

}  // namespace

AnnResult spa_df(const SpatialIndex& index, std::span<const PlanarPoint> group_locs,
                 std::size_t k, SearchStats* stats, double fault_slack) {
  if (group_locs.empty()) throw EmptyGroup("spatial query for an empty group");
  if (index.empty() || k == 0) return {};

  const Circle mec = minimum_enclosing_circle(group_locs);
  double min_member = std::numeric_limits<double>::infinity();
  for (const PlanarPoint& p : group_locs) min_member = std::min(min_member, dist(p, mec.center));

  DfState st{index, group_locs, mec.center, min_member, k, fault_slack, stats, {}};
  if (!st.prunable(mindist(index.nodes()[index.root()].box, mec.center))) {
    st.visit(index.root());
  } else if (stats) {
    ++stats->pruned_subtrees;
    stats->pruned_nodes.push_back(index.root());
  }

  AnnResult out(st.heap.size());
  for (std::size_t i = st.heap.size(); i-- > 0;) {
    out[i] = {st.heap.top().second, st.heap.top().first};
    st.heap.pop();
  }
  return out;
}

AnnResult brute_force_ann(std::span<const PoiEntry> pois, std::span<const PlanarPoint> group_locs,
                          std::size_t k) {
  if (group_locs.empty()) throw EmptyGroup("spatial query for an empty group");
  std::vector<Best> all;
  all.reserve(pois.size());
  for (const PoiEntry& e : pois) all.emplace_back(adist(e.loc, group_locs), e.id);
  std::sort(all.begin(), all.end());
  if (all.size() > k) all.resize(k);
  AnnResult out(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) out[i] = {all[i].second, all[i].first};
  return out;
}

}  // namespace agsgr
