#include "agsgr/group_search.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "agsgr/errors.hpp"

namespace agsgr {

void validate(const Query& q) {
  if (q.core < 1) throw FormatError("query: core constraint k must be >= 1");
  if (q.top_k < 1) throw FormatError("query: top-k must be >= 1");
  if (q.group_size < q.core + 1)
    throw FormatError("query: group size h must be >= k + 1 (a k-core needs k+1 members)");
}

namespace {

// Degree within the component's induced subgraph.
std::uint32_t component_degree(const SocialGraph& g, const NodeSet& component, std::uint32_t v) {
  std::uint32_t d = 0;
  for (std::uint32_t u : g.neighbors(v))
    if (component.contains(u)) ++d;
  return d;
}

// Pivot choice: highest component degree, ties to the smallest user id.
// Returns the number of unexpanded members (0 = nothing left to expand).
std::size_t pick_pivot(const SocialGraph& g, const NodeSet& component, const PartialGroup& p,
                       std::uint32_t& pivot) {
  std::size_t unexpanded = 0;
  std::uint32_t best_deg = 0;
  for (std::uint32_t m : p.members) {
    if (std::binary_search(p.expanded.begin(), p.expanded.end(), m)) continue;
    std::uint32_t d = component_degree(g, component, m);
    if (unexpanded == 0 || d > best_deg) {  // index order == id order, first win is smallest id
      best_deg = d;
      pivot = m;
    }
    ++unexpanded;
  }
  return unexpanded;
}

// Emits successors of `partial` to `fn`; stops early when fn returns false.
//
// Successors extend the pivot u by every neighbor subset Vp satisfying the
// size bound |Vp| + |partial| <= h and the degree-feasibility bound
// k <= |Vp| + induced-degree(u).  The empty subset ("mark u expanded, move
// on") is emitted only when it can lead anywhere: u already degree-feasible
// and some other member still unexpanded.  Dropping it otherwise keeps
// dead-end states out of the queue without losing any completable group.
//
// `allowed` further restricts extension candidates (used to confine the
// search to the target's friends when the friendship constraint is on).
template <typename Fn>
bool for_each_successor(const SocialGraph& g, const NodeSet& component, const NodeSet* allowed,
                        const PartialGroup& partial, std::uint32_t k, std::uint32_t h, Fn&& fn) {
  if (partial.members.size() >= h) return true;
  std::uint32_t pivot = 0;
  const std::size_t unexpanded = pick_pivot(g, component, partial, pivot);
  if (unexpanded == 0) return true;

  std::vector<std::uint32_t> cand;
  for (std::uint32_t u : g.neighbors(pivot)) {
    if (!component.contains(u)) continue;
    if (allowed && !allowed->contains(u)) continue;
    if (std::binary_search(partial.members.begin(), partial.members.end(), u)) continue;
    cand.push_back(u);
  }

  std::vector<std::uint32_t> next_expanded = partial.expanded;
  next_expanded.insert(std::lower_bound(next_expanded.begin(), next_expanded.end(), pivot), pivot);

  const std::uint32_t deg_in = induced_degree(g, partial.members, pivot);
  const std::uint32_t s_min = k > deg_in ? k - deg_in : 0;
  const std::uint32_t s_max = static_cast<std::uint32_t>(h - partial.members.size());

  // Subsets by size, lexicographic within each size.
  for (std::uint32_t s = s_min; s <= s_max && s <= cand.size(); ++s) {
    if (s == 0) {
      if (unexpanded < 2) continue;
      PartialGroup succ{partial.members, next_expanded};
      if (!fn(std::move(succ))) return false;
      continue;
    }
    std::vector<std::uint32_t> pick(s);
    for (std::uint32_t i = 0; i < s; ++i) pick[i] = i;
    while (true) {
      PartialGroup succ;
      succ.members = partial.members;
      for (std::uint32_t i : pick)
        succ.members.insert(
            std::lower_bound(succ.members.begin(), succ.members.end(), cand[i]), cand[i]);
      succ.expanded = next_expanded;
      if (!fn(std::move(succ))) return false;

      // Next combination.
      std::int64_t j = static_cast<std::int64_t>(s) - 1;
      while (j >= 0 && pick[j] == cand.size() - s + j) --j;
      if (j < 0) break;
      ++pick[j];
      for (std::uint32_t i = static_cast<std::uint32_t>(j) + 1; i < s; ++i)
        pick[i] = pick[i - 1] + 1;
    }
  }
  return true;
}

// Dedup key for a search state: members | sentinel | expanded.
std::vector<std::uint32_t> state_key(const PartialGroup& p) {
  std::vector<std::uint32_t> key;
  key.reserve(p.members.size() + p.expanded.size() + 1);
  key.insert(key.end(), p.members.begin(), p.members.end());
  key.push_back(std::numeric_limits<std::uint32_t>::max());
  key.insert(key.end(), p.expanded.begin(), p.expanded.end());
  return key;
}

}  // namespace

std::vector<PartialGroup> expand_group(const SocialGraph& g, const NodeSet& component,
                                       const PartialGroup& partial, std::uint32_t k,
                                       std::uint32_t h) {
  std::vector<PartialGroup> out;
  for_each_successor(g, component, nullptr, partial, k, h, [&](PartialGroup succ) {
    out.push_back(std::move(succ));
    return true;
  });
  return out;
}

CandidatePool get_candidate_groups(const SocialGraph& g, const NodeSet& component,
                                   std::uint32_t target_idx, const Query& q) {
  CandidatePool pool;
  pool.cap = q.group_cap;
  if (!component.contains(target_idx)) return pool;

  const auto k = static_cast<std::uint32_t>(q.core);
  const auto h = static_cast<std::uint32_t>(q.group_size);

  // With the friendship constraint on, only friends of the target can ever
  // appear in a valid group; restricting the expansion early keeps the
  // state space near C(deg(target), h-1).
  NodeSet allowed;
  const NodeSet* allowed_ptr = nullptr;
  if (q.friend_constraint) {
    allowed.mask.assign(g.user_count(), 0);
    allowed.mask[target_idx] = 1;
    for (std::uint32_t u : g.neighbors(target_idx)) allowed.mask[u] = 1;
    allowed_ptr = &allowed;
  }

  // Intermediate-state budget: the group cap bounds emissions, this bounds
  // memory when a hub neighborhood floods the queue.
  const std::size_t state_budget =
      q.group_cap == SIZE_MAX ? SIZE_MAX : std::max<std::size_t>(1'000'000, 10 * q.group_cap);

  std::deque<PartialGroup> ug;                   // unextended groups, FIFO
  std::set<std::vector<std::uint32_t>> seen;     // full search states
  std::set<std::vector<std::uint32_t>> emitted;  // size-h member sets already handled
  std::size_t enqueued = 0;

  PartialGroup seed;
  seed.members = {target_idx};
  seen.insert(state_key(seed));
  ug.push_back(std::move(seed));
  ++enqueued;

  while (!ug.empty() && pool.groups.size() < q.group_cap) {
    PartialGroup cur = std::move(ug.front());
    ug.pop_front();

    if (cur.members.size() == h) {
      if (!emitted.insert(cur.members).second) continue;
      if (is_valid_group(g, cur.members, k, h, target_idx, q.friend_constraint)) {
        CandidateGroup cg;
        cg.members.reserve(h);
        for (std::uint32_t m : cur.members) cg.members.push_back(g.id_of(m));
        pool.groups.push_back(std::move(cg));
      }
      continue;
    }

    for_each_successor(g, component, allowed_ptr, cur, k, h, [&](PartialGroup succ) {
      if (enqueued >= state_budget) return false;
      if (seen.insert(state_key(succ)).second) {
        ug.push_back(std::move(succ));
        ++enqueued;
      }
      return true;
    });
  }
  return pool;
}

}  // namespace agsgr
