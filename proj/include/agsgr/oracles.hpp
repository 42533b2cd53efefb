#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "agsgr/geometry.hpp"
#include "agsgr/social_graph.hpp"
#include "agsgr/types.hpp"

// Slow reference implementations used to cross-check the real algorithms.
// Everything here is deliberately written from the definitions, sharing no
// helper code with the production paths.
namespace agsgr::oracles {

// Core numbers by repeated whole-graph peeling: for k = 1, 2, ... delete
// nodes of remaining degree < k until stable; survivors of round k have core
// number >= k.  O(k_max * n^2) — fine for the small graphs it is fed.
std::vector<std::uint32_t> brute_force_core_numbers(const SocialGraph& g);

// Every valid candidate group found by testing all C(n-1, h-1) subsets that
// contain the target.  Returned as sorted user-id vectors in lexicographic
// order.
std::vector<std::vector<UserId>> exhaustive_valid_groups(const SocialGraph& g,
                                                         std::uint32_t target_idx, std::uint32_t k,
                                                         std::uint32_t h,
                                                         bool require_target_friendship = true);

// Smallest enclosing circle by trying every pair (as a diameter) and every
// triple (as a circumcircle).  O(n^4) including the containment checks.
Circle brute_force_mec(std::span<const PlanarPoint> points);

}  // namespace agsgr::oracles
