#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "haarpool/chain.hpp"
#include "haarpool/graph.hpp"
#include "support/fixtures.hpp"

using namespace haarpool;

TEST_SUITE_BEGIN("graph");

TEST_CASE("normalize_graph merges duplicates and canonicalizes endpoints") {
  Graph g = normalize_graph(3, {{1, 0, 2.0}, {0, 1, 3.0}});
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].u == 0);
  CHECK(g.edges[0].v == 1);
  CHECK(g.edges[0].w == 5.0);
}

TEST_CASE("normalize_graph drops self-loops") {
  Graph g = normalize_graph(3, {{2, 2, 1.0}});
  CHECK(g.num_nodes == 3);
  CHECK(g.edges.empty());
}

TEST_CASE("normalize_graph rejects bad edges") {
  CHECK_THROWS_AS(normalize_graph(2, {{0, 5, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(normalize_graph(2, {{0, 1, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(normalize_graph(2, {{0, 1, -2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(normalize_graph(2, {{0, 1, std::nan("")}}), std::invalid_argument);
}

TEST_CASE("normalize_graph is idempotent") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    Graph g = testing::random_test_graph(rng, 12, 0.4);
    Graph again = normalize_graph(g.num_nodes, g.edges);
    REQUIRE(again.edges.size() == g.edges.size());
    for (size_t i = 0; i < g.edges.size(); ++i) {
      CHECK(again.edges[i].u == g.edges[i].u);
      CHECK(again.edges[i].v == g.edges[i].v);
      CHECK(again.edges[i].w == g.edges[i].w);
    }
  }
}

TEST_CASE("weighted_degrees sums incident weights") {
  Graph g = normalize_graph(4, {{0, 1, 1.5}, {1, 2, 2.0}});
  std::vector<double> deg = g.weighted_degrees();
  CHECK(deg[0] == 1.5);
  CHECK(deg[1] == 3.5);
  CHECK(deg[2] == 2.0);
  CHECK(deg[3] == 0.0);
}

TEST_CASE("induce_coarse_graph accumulates cross-cluster weight") {
  // Path 0-1-2-3 with clusters {0,1} and {2,3}: edge (1,2) is the only
  // crossing, intra-cluster edges vanish.
  Graph g = normalize_graph(4, {{0, 1, 1.0}, {1, 2, 4.0}, {2, 3, 1.0}});
  ClusterAssignment a;
  a.parent = {0, 0, 1, 1};
  a.child_counts = {2, 2};
  Graph coarse = induce_coarse_graph(g, a);
  REQUIRE(coarse.num_nodes == 2);
  REQUIRE(coarse.edges.size() == 1);
  CHECK(coarse.edges[0].w == 4.0);
}

TEST_CASE("induce_coarse_graph merges parallel crossings") {
  Graph g = normalize_graph(4, {{0, 2, 1.0}, {0, 3, 2.0}, {1, 2, 3.0}});
  ClusterAssignment a;
  a.parent = {0, 0, 1, 1};
  a.child_counts = {2, 2};
  Graph coarse = induce_coarse_graph(g, a);
  REQUIRE(coarse.edges.size() == 1);
  CHECK(coarse.edges[0].w == 6.0);
}

TEST_CASE("induce_coarse_graph conserves cross-cluster weight") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    Graph g = testing::random_test_graph(rng, 16, 0.35);
    ClusterAssignment a;
    a.child_counts.assign(4, 0);
    for (int v = 0; v < 16; ++v) {
      int p = bounded_int(rng, 4);
      a.parent.push_back(p);
      ++a.child_counts[static_cast<size_t>(p)];
    }
    if (std::count(a.child_counts.begin(), a.child_counts.end(), 0) > 0) continue;
    Graph coarse = induce_coarse_graph(g, a);
    double total_cross = 0.0;
    for (const Edge& e : g.edges)
      if (a.parent[static_cast<size_t>(e.u)] != a.parent[static_cast<size_t>(e.v)])
        total_cross += e.w;
    double total_coarse = 0.0;
    for (const Edge& e : coarse.edges) total_coarse += e.w;
    CHECK(total_coarse == doctest::Approx(total_cross).epsilon(1e-12));
  }
}

TEST_CASE("validate_chain accepts the figure chain") {
  CHECK(validate_chain(testing::figure_chain()).empty());
}

TEST_CASE("validate_chain flags non-decreasing sizes") {
  CoarseChain chain = testing::figure_chain();
  chain.layers[1].num_nodes = 8;  // as large as layer 0
  std::vector<std::string> v = validate_chain(chain);
  REQUIRE(!v.empty());
  bool found = false;
  for (const std::string& msg : v)
    if (msg.find("strictly decreasing") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("validate_chain flags empty clusters and orphans") {
  CoarseChain chain = testing::figure_chain();
  SUBCASE("empty cluster") {
    for (int& p : chain.assignments[0].parent)
      if (p == 2) p = 1;
    chain.assignments[0].child_counts = {3, 5, 0};
    std::vector<std::string> v = validate_chain(chain);
    bool found = false;
    for (const std::string& msg : v)
      if (msg.find("empty cluster") != std::string::npos) found = true;
    CHECK(found);
  }
  SUBCASE("orphan vertex") {
    chain.assignments[0].parent[7] = 9;
    std::vector<std::string> v = validate_chain(chain);
    bool found = false;
    for (const std::string& msg : v)
      if (msg.find("orphan") != std::string::npos) found = true;
    CHECK(found);
  }
}

TEST_CASE("validate_chain flags orderings that split clusters") {
  CoarseChain chain = testing::figure_chain();
  // Interleave two clusters at layer 0.
  chain.orderings[0] = {0, 3, 1, 4, 2, 5, 6, 7};
  std::vector<std::string> v = validate_chain(chain);
  bool found = false;
  for (const std::string& msg : v)
    if (msg.find("splits cluster") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("every vertex has exactly one ancestor per layer") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    CoarseChain chain = testing::random_chain(1000 + static_cast<std::uint64_t>(rep));
    REQUIRE(validate_chain(chain).empty());
    for (int v = 0; v < chain.layer_size(0); ++v) {
      int cur = v;
      for (const ClusterAssignment& a : chain.assignments) {
        REQUIRE(cur >= 0);
        REQUIRE(cur < a.num_nodes());
        cur = a.parent[static_cast<size_t>(cur)];
      }
      CHECK(cur >= 0);
      CHECK(cur < chain.layer_size(chain.depth()));
    }
  }
}

TEST_SUITE_END();
