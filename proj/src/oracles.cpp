#include "agsgr/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "agsgr/errors.hpp"

namespace agsgr::oracles {

std::vector<std::uint32_t> brute_force_core_numbers(const SocialGraph& g) {
  const std::size_t n = g.user_count();
  std::vector<std::uint32_t> core(n, 0);
  std::vector<char> alive(n, 1);
  for (std::uint32_t k = 1;; ++k) {
    std::vector<char> cur = alive;  // the (k-1)-core; peel it down to the k-core
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::uint32_t v = 0; v < n; ++v) {
        if (!cur[v]) continue;
        std::uint32_t d = 0;
        for (std::uint32_t u : g.neighbors(v)) d += cur[u] != 0;
        if (d < k) {
          cur[v] = 0;
          changed = true;
        }
      }
    }
    bool any = false;
    for (std::uint32_t v = 0; v < n; ++v)
      if (cur[v]) {
        core[v] = k;
        any = true;
      }
    if (!any) return core;
    alive = std::move(cur);
  }
}

std::vector<std::vector<UserId>> exhaustive_valid_groups(const SocialGraph& g,
                                                         std::uint32_t target_idx, std::uint32_t k,
                                                         std::uint32_t h,
                                                         bool require_target_friendship) {
  std::vector<std::vector<UserId>> out;
  const auto n = static_cast<std::uint32_t>(g.user_count());
  if (h == 0 || h > n) return out;

  std::vector<std::uint32_t> others;
  others.reserve(n - 1);
  for (std::uint32_t v = 0; v < n; ++v)
    if (v != target_idx) others.push_back(v);

  const std::uint32_t pick_n = h - 1;
  if (pick_n > others.size()) return out;

  std::vector<std::uint32_t> pick(pick_n);
  for (std::uint32_t i = 0; i < pick_n; ++i) pick[i] = i;
  while (true) {
    std::vector<std::uint32_t> members;
    members.reserve(h);
    members.push_back(target_idx);
    for (std::uint32_t i : pick) members.push_back(others[i]);
    std::sort(members.begin(), members.end());
    if (is_valid_group(g, members, k, h, target_idx, require_target_friendship)) {
      std::vector<UserId> ids;
      ids.reserve(h);
      for (std::uint32_t m : members) ids.push_back(g.id_of(m));
      out.push_back(std::move(ids));
    }

    if (pick_n == 0) break;
    std::int64_t j = static_cast<std::int64_t>(pick_n) - 1;
    while (j >= 0 && pick[j] == others.size() - pick_n + static_cast<std::uint32_t>(j)) --j;
    if (j < 0) break;
    ++pick[j];
    for (std::uint32_t i = static_cast<std::uint32_t>(j) + 1; i < pick_n; ++i)
      pick[i] = pick[i - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Circumcenter from the perpendicular-bisector system; false when (nearly)
// collinear.
bool circumcircle(const PlanarPoint& a, const PlanarPoint& b, const PlanarPoint& c,
                  PlanarPoint& center) {
  const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
  double scale = 0;
  for (const PlanarPoint& p : {a, b, c})
    scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  if (std::abs(d) < 1e-12 * std::max(1.0, scale * scale)) return false;
  const double a2 = a.x * a.x + a.y * a.y;
  const double b2 = b.x * b.x + b.y * b.y;
  const double c2 = c.x * c.x + c.y * c.y;
  center.x = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
  center.y = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
  return true;
}

}  // namespace

Circle brute_force_mec(std::span<const PlanarPoint> points) {
  if (points.empty()) throw EmptyGroup("minimum enclosing circle of zero points");
  const std::size_t n = points.size();
  Circle best{points[0], std::numeric_limits<double>::infinity()};
  if (n == 1) return {points[0], 0.0};

  // The optimal center is the midpoint of some pair or the circumcenter of
  // some triple; minimizing the covering radius over that finite candidate
  // set therefore yields the exact optimum, with no containment epsilon.
  auto consider = [&](const PlanarPoint& c) {
    double r = 0;
    for (const PlanarPoint& p : points) r = std::max(r, std::hypot(p.x - c.x, p.y - c.y));
    if (r < best.radius) best = {c, r};
  };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      consider({(points[i].x + points[j].x) / 2, (points[i].y + points[j].y) / 2});
      for (std::size_t l = j + 1; l < n; ++l) {
        PlanarPoint c;
        if (circumcircle(points[i], points[j], points[l], c)) consider(c);
      }
    }
  return best;
}

}  // namespace agsgr::oracles
