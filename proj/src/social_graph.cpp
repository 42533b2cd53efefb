#include "agsgr/social_graph.hpp"

#include <algorithm>
#include <queue>

namespace agsgr {

SocialGraph SocialGraph::build(const std::vector<std::pair<UserId, UserId>>& edges,
                               std::span<const UserId> extra_users) {
  SocialGraph g;
  g.ids_.reserve(edges.size() * 2 + extra_users.size());
  for (const auto& [a, b] : edges) {
    g.ids_.push_back(a);
    g.ids_.push_back(b);
  }
  g.ids_.insert(g.ids_.end(), extra_users.begin(), extra_users.end());
  std::sort(g.ids_.begin(), g.ids_.end());
  g.ids_.erase(std::unique(g.ids_.begin(), g.ids_.end()), g.ids_.end());

  // Normalize to index pairs, drop self-loops, dedup.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> idx_edges;
  idx_edges.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a == b) continue;
    auto ia = *g.index_of(a);
    auto ib = *g.index_of(b);
    idx_edges.emplace_back(std::min(ia, ib), std::max(ia, ib));
  }
  std::sort(idx_edges.begin(), idx_edges.end());
  idx_edges.erase(std::unique(idx_edges.begin(), idx_edges.end()), idx_edges.end());

  const std::size_t n = g.ids_.size();
  g.offsets_.assign(n + 1, 0);
  for (const auto& [a, b] : idx_edges) {
    ++g.offsets_[a + 1];
    ++g.offsets_[b + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];

  g.adj_.resize(idx_edges.size() * 2);
  std::vector<std::uint32_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [a, b] : idx_edges) {
    g.adj_[cursor[a]++] = b;
    g.adj_[cursor[b]++] = a;
  }
  for (std::size_t i = 0; i < n; ++i)
    std::sort(g.adj_.begin() + g.offsets_[i], g.adj_.begin() + g.offsets_[i + 1]);
  return g;
}

std::optional<std::uint32_t> SocialGraph::index_of(UserId u) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), u);
  if (it == ids_.end() || *it != u) return std::nullopt;
  return static_cast<std::uint32_t>(it - ids_.begin());
}

bool SocialGraph::has_edge(std::uint32_t a, std::uint32_t b) const {
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

CoreNumbers core_decomposition(const SocialGraph& g) {
  const std::size_t n = g.user_count();
  CoreNumbers out;
  out.core.assign(n, 0);
  if (n == 0) return out;

  std::uint32_t maxdeg = 0;
  std::vector<std::uint32_t> deg(n);
  for (std::size_t v = 0; v < n; ++v) {
    deg[v] = g.degree(static_cast<std::uint32_t>(v));
    maxdeg = std::max(maxdeg, deg[v]);
  }

  // Counting sort of vertices by degree.
  std::vector<std::uint32_t> bin(maxdeg + 2, 0);
  for (std::size_t v = 0; v < n; ++v) ++bin[deg[v]];
  std::uint32_t start = 0;
  for (std::uint32_t d = 0; d <= maxdeg; ++d) {
    std::uint32_t cnt = bin[d];
    bin[d] = start;
    start += cnt;
  }
  std::vector<std::uint32_t> vert(n), pos(n);
  for (std::size_t v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]];
    vert[pos[v]] = static_cast<std::uint32_t>(v);
    ++bin[deg[v]];
  }
  for (std::uint32_t d = maxdeg; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;

  // Peel in order of current degree; each removal demotes its neighbors.
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t v = vert[i];
    out.core[v] = deg[v];
    for (std::uint32_t u : g.neighbors(v)) {
      if (deg[u] > deg[v]) {
        std::uint32_t du = deg[u];
        std::uint32_t pu = pos[u];
        std::uint32_t pw = bin[du];
        std::uint32_t w = vert[pw];
        if (u != w) {
          std::swap(vert[pu], vert[pw]);
          pos[u] = pw;
          pos[w] = pu;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  return out;
}

NodeSet k_core_subgraph(const SocialGraph& g, std::uint32_t k, const CoreNumbers& cores) {
  NodeSet s;
  s.mask.assign(g.user_count(), 0);
  for (std::uint32_t v = 0; v < g.user_count(); ++v) {
    if (cores.of(v) >= k) {
      s.nodes.push_back(v);
      s.mask[v] = 1;
    }
  }
  return s;
}

NodeSet k_core_subgraph(const SocialGraph& g, std::uint32_t k) {
  return k_core_subgraph(g, k, core_decomposition(g));
}

std::vector<std::vector<std::uint32_t>> connected_components(const SocialGraph& g,
                                                             const NodeSet& sub) {
  std::vector<std::vector<std::uint32_t>> comps;
  std::vector<char> seen(g.user_count(), 0);
  for (std::uint32_t start : sub.nodes) {
    if (seen[start]) continue;
    std::vector<std::uint32_t> comp;
    std::queue<std::uint32_t> q;
    q.push(start);
    seen[start] = 1;
    while (!q.empty()) {
      std::uint32_t v = q.front();
      q.pop();
      comp.push_back(v);
      for (std::uint32_t u : g.neighbors(v)) {
        if (sub.contains(u) && !seen[u]) {
          seen[u] = 1;
          q.push(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::uint32_t induced_degree(const SocialGraph& g, std::span<const std::uint32_t> members,
                             std::uint32_t idx) {
  std::uint32_t d = 0;
  for (std::uint32_t u : g.neighbors(idx))
    if (std::binary_search(members.begin(), members.end(), u)) ++d;
  return d;
}

bool is_connected_subset(const SocialGraph& g, std::span<const std::uint32_t> members) {
  if (members.empty()) return false;
  std::vector<std::uint32_t> stack{members[0]};
  std::vector<char> seen(members.size(), 0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t u : g.neighbors(v)) {
      auto it = std::lower_bound(members.begin(), members.end(), u);
      if (it == members.end() || *it != u) continue;
      std::size_t mi = static_cast<std::size_t>(it - members.begin());
      if (!seen[mi]) {
        seen[mi] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == members.size();
}

bool is_valid_group(const SocialGraph& g, std::span<const std::uint32_t> members, std::uint32_t k,
                    std::uint32_t h, std::uint32_t target_idx, bool require_target_friendship) {
  if (members.size() != h) return false;
  if (!std::binary_search(members.begin(), members.end(), target_idx)) return false;
  for (std::uint32_t m : members) {
    if (induced_degree(g, members, m) < k) return false;
    if (require_target_friendship && m != target_idx && !g.has_edge(target_idx, m)) return false;
  }
  return is_connected_subset(g, members);
}

bool is_valid_group(const SocialGraph& g, std::span<const UserId> member_ids, std::uint32_t k,
                    std::uint32_t h, UserId target, bool require_target_friendship) {
  std::vector<std::uint32_t> idx;
  idx.reserve(member_ids.size());
  for (UserId u : member_ids) {
    auto i = g.index_of(u);
    if (!i) return false;
    idx.push_back(*i);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (idx.size() != member_ids.size()) return false;  // duplicate members
  auto t = g.index_of(target);
  if (!t) return false;
  return is_valid_group(g, idx, k, h, *t, require_target_friendship);
}

}  // namespace agsgr
