#include "doctest.h"

#include <random>

#include "agsgr/oracles.hpp"
#include "agsgr/rng.hpp"
#include "agsgr/social_graph.hpp"
#include "agsgr/synth.hpp"

using namespace agsgr;

namespace {

std::vector<UserId> ids_of(const SocialGraph& g, const std::vector<std::uint32_t>& idxs) {
  std::vector<UserId> out;
  for (std::uint32_t i : idxs) out.push_back(g.id_of(i));
  return out;
}

}  // namespace

TEST_CASE("build drops duplicates and self-loops") {
  SocialGraph g = SocialGraph::build({{1, 2}, {2, 1}, {3, 3}});
  CHECK(g.user_count() == 3);
  CHECK(g.edge_count() == 1);
  CHECK(g.degree(*g.index_of(1)) == 1);
  CHECK(g.degree(*g.index_of(2)) == 1);
  CHECK(g.degree(*g.index_of(3)) == 0);
  CHECK(g.has_edge(*g.index_of(1), *g.index_of(2)));
}

TEST_CASE("build registers extra users as isolated nodes") {
  const UserId extra[] = {9, 2};
  SocialGraph g = SocialGraph::build({{1, 2}}, extra);
  CHECK(g.user_count() == 3);
  CHECK(g.has_user(9));
  CHECK(g.degree(*g.index_of(9)) == 0);
}

TEST_CASE("empty edge list gives an empty graph") {
  SocialGraph g = SocialGraph::build({});
  CHECK(g.user_count() == 0);
  CHECK(g.edge_count() == 0);
  CHECK(connected_components(g, k_core_subgraph(g, 1)).empty());
}

TEST_CASE("triangle adjacency is symmetric with all degrees 2") {
  SocialGraph g = SocialGraph::build({{1, 2}, {2, 3}, {3, 1}});
  for (std::uint32_t i = 0; i < 3; ++i) CHECK(g.degree(i) == 2);
  CoreNumbers cn = core_decomposition(g);
  for (std::uint32_t i = 0; i < 3; ++i) CHECK(cn.of(i) == 2);
}

TEST_CASE("star graph peels to core 1 everywhere") {
  SocialGraph g = SocialGraph::build({{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  CoreNumbers cn = core_decomposition(g);
  for (std::uint32_t i = 0; i < g.user_count(); ++i) CHECK(cn.of(i) == 1);
}

TEST_CASE("clique with a bridge to a tree: only the clique survives k=3") {
  // A K4 {0,1,2,3}, a bridge 3-4, and a small tree hanging off 4.
  SocialGraph g = SocialGraph::build(
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {4, 6}, {6, 7}});
  NodeSet sub = k_core_subgraph(g, 3);
  CHECK(ids_of(g, sub.nodes) == std::vector<UserId>{0, 1, 2, 3});

  auto slow = oracles::brute_force_core_numbers(g);
  CHECK(core_decomposition(g).core == slow);
}

TEST_CASE("core numbers match brute-force peeling on random graphs") {
  for (std::size_t trial = 0; trial < 100; ++trial) {
    std::mt19937_64 rng(seed_for(42, "test.core", trial));
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 30)(rng);
    const double p = std::uniform_real_distribution<double>(0.1, 0.5)(rng);
    SocialGraph g = synth::random_graph(rng, n, p);
    CoreNumbers fast = core_decomposition(g);
    REQUIRE(fast.core == oracles::brute_force_core_numbers(g));

    // Core nesting: the (k+1)-core node set is contained in the k-core's.
    for (std::uint32_t k = 1; k <= 3; ++k) {
      NodeSet inner = k_core_subgraph(g, k + 1, fast);
      NodeSet outer = k_core_subgraph(g, k, fast);
      for (std::uint32_t v : inner.nodes) CHECK(outer.contains(v));
    }
  }
}

TEST_CASE("connected components partition the induced subgraph") {
  // Two disjoint triangles plus an isolated-by-core node.
  SocialGraph g = SocialGraph::build({{0, 1}, {1, 2}, {2, 0}, {10, 11}, {11, 12}, {12, 10}, {0, 20}});
  NodeSet sub = k_core_subgraph(g, 2);
  auto comps = connected_components(g, sub);
  REQUIRE(comps.size() == 2);
  CHECK(ids_of(g, comps[0]) == std::vector<UserId>{0, 1, 2});
  CHECK(ids_of(g, comps[1]) == std::vector<UserId>{10, 11, 12});
}

TEST_CASE("path of 5 nodes is a single component") {
  SocialGraph g = SocialGraph::build({{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  auto comps = connected_components(g, k_core_subgraph(g, 1));
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].size() == 5);
}

TEST_CASE("is_valid_group accepts a K4 and rejects broken variants") {
  SocialGraph g = SocialGraph::build({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                                      {0, 4}, {4, 5}, {5, 6}, {6, 4}, {0, 6}});
  const UserId k4[] = {0, 1, 2, 3};
  CHECK(is_valid_group(g, k4, 3, 4, UserId{0}));

  // Wrong size.
  const UserId k3[] = {0, 1, 2};
  CHECK_FALSE(is_valid_group(g, k3, 3, 4, UserId{0}));

  // Target not inside.
  CHECK_FALSE(is_valid_group(g, k4, 3, 4, UserId{5}));

  // Connected 2-core but member 5 is no friend of the target.
  const UserId tri[] = {0, 4, 5, 6};
  CHECK_FALSE(is_valid_group(g, tri, 2, 4, UserId{0}));
  CHECK(is_valid_group(g, tri, 2, 4, UserId{0}, /*require_target_friendship=*/false));
}

TEST_CASE("is_valid_group rejects a disconnected set of the right size") {
  SocialGraph g = SocialGraph::build({{0, 1}, {2, 3}});
  const UserId split[] = {0, 1, 2, 3};
  CHECK_FALSE(is_valid_group(g, split, 1, 4, UserId{0}));
}

TEST_CASE("induced degree and connectivity helpers") {
  SocialGraph g = SocialGraph::build({{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  const std::uint32_t tri[] = {0, 1, 2};
  CHECK(induced_degree(g, tri, 2) == 2);  // node 3 outside the set
  CHECK(is_connected_subset(g, tri));
  const std::uint32_t gap[] = {0, 3};
  CHECK_FALSE(is_connected_subset(g, gap));
}
