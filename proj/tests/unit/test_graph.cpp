#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pmk/graph.hpp"

using pmk::Graph;

TEST_CASE("graph construction keeps labels sorted and deduplicates") {
  Graph g = pmk::graph_from_edges({{5, 2}, {2, 9}, {9, 2}}, {7});
  CHECK(g.labels == std::vector<int>{2, 5, 7, 9});
  CHECK(g.order() == 4);
  CHECK(g.size() == 2);
  CHECK(g.has_edge(2, 5));
  CHECK(g.has_edge(9, 2));
  CHECK(!g.has_edge(5, 9));
  CHECK(g.degree_ix(g.index_of(7)) == 0);
  CHECK(g.index_of(3) == -1);
  CHECK(g.edge_list() == std::vector<std::pair<int, int>>{{2, 5}, {2, 9}});
  CHECK(g.neighbors(2) == std::vector<int>{5, 9});
}

TEST_CASE("distances agree with Floyd-Warshall") {
  auto check = [](const Graph& g) {
    pmk::DistanceOracle d(g);
    auto fw = oracle::fw_distances(g);
    for (int u = 0; u < g.order(); ++u)
      for (int v = 0; v < g.order(); ++v) {
        int expect = fw[u][v] >= oracle::kInf ? -1 : fw[u][v];
        CHECK(d.dist_ix(u, v) == expect);
      }
  };
  check(fx::grid_graph(3, 4));
  check(fx::cube_graph());
  check(fx::suspended_cogwheel(4));
  check(pmk::graph_from_edges({{0, 1}, {2, 3}}));  // disconnected
  check(fx::star_graph(5));
}

TEST_CASE("distance oracle table cutoff gives same answers") {
  Graph g = fx::grid_graph(4, 5);
  pmk::DistanceOracle big(g);           // tabled
  pmk::DistanceOracle small(g, 4);      // forced per-query path
  CHECK(big.tabled());
  CHECK(!small.tabled());
  for (int u = 0; u < g.order(); ++u)
    for (int v = 0; v < g.order(); ++v) CHECK(big.dist_ix(u, v) == small.dist_ix(u, v));
  CHECK(big.dist(0, 19) == 3 + 4);
}

TEST_CASE("interval matches brute force") {
  for (const Graph& g : {fx::cube_graph(), fx::grid_graph(3, 3), fx::cogwheel(4)}) {
    pmk::DistanceOracle d(g);
    auto fw = oracle::fw_distances(g);
    for (int u = 0; u < g.order(); ++u)
      for (int v = 0; v < g.order(); ++v) {
        auto got = pmk::interval_ix(g, d, u, v);
        auto want = oracle::interval_ix(fw, u, v);
        std::sort(got.begin(), got.end());
        CHECK(got == want);
      }
  }
  Graph q = fx::cube_graph();
  pmk::DistanceOracle d(q);
  CHECK(pmk::interval_ix(q, d, 0, 7).size() == 8);  // antipodal pair spans the cube
}

TEST_CASE("connectivity, bipartiteness, trees") {
  CHECK(pmk::is_connected(fx::grid_graph(2, 2)));
  CHECK(!pmk::is_connected(pmk::graph_from_edges({{0, 1}, {2, 3}})));
  CHECK(pmk::is_bipartite(fx::cycle_graph(6)));
  CHECK(!pmk::is_bipartite(fx::cycle_graph(5)));
  CHECK(pmk::is_tree(fx::path_graph(6)));
  CHECK(pmk::is_tree(fx::star_graph(4)));
  CHECK(!pmk::is_tree(fx::cycle_graph(4)));
  CHECK(!pmk::is_tree(pmk::graph_from_edges({{0, 1}, {2, 3}})));  // forest, not tree

  auto comps = pmk::connected_components(pmk::graph_from_edges({{0, 1}, {2, 3}, {3, 4}}));
  CHECK(comps.size() == 2);

  auto bc = pmk::check_bipartite(fx::cycle_graph(7));
  REQUIRE(!bc.coloring.has_value());
  auto& cyc = bc.odd_cycle;
  REQUIRE(cyc.size() % 2 == 1);
  std::set<int> distinct(cyc.begin(), cyc.end());
  CHECK(distinct.size() == cyc.size());
  Graph c7 = fx::cycle_graph(7);
  for (size_t i = 0; i < cyc.size(); ++i)
    CHECK(c7.has_edge(cyc[i], cyc[(i + 1) % cyc.size()]));
}

TEST_CASE("odd cycle extraction from a tangled graph") {
  // bipartite-looking bulk plus one odd cycle far from the BFS root
  auto g = pmk::graph_from_edges(
      {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 6}});
  auto bc = pmk::check_bipartite(g);
  REQUIRE(!bc.coloring.has_value());
  REQUIRE(bc.odd_cycle.size() == 3);
  CHECK(std::set<int>(bc.odd_cycle.begin(), bc.odd_cycle.end()) ==
        std::set<int>{6, 7, 8});
}

TEST_CASE("induced subgraph keeps labels") {
  Graph g = fx::grid_graph(3, 3);
  Graph sub = g.induced({0, 1, 3, 4, 8});
  CHECK(sub.labels == std::vector<int>{0, 1, 3, 4, 8});
  CHECK(sub.has_edge(0, 1));
  CHECK(sub.has_edge(0, 3));
  CHECK(sub.has_edge(1, 4));
  CHECK(sub.has_edge(3, 4));
  CHECK(sub.size() == 4);  // vertex 8 became isolated
  CHECK(sub.degree_ix(sub.index_of(8)) == 0);
}

TEST_CASE("isomorphism finds a valid bijection") {
  Graph g = fx::grid_graph(2, 3);
  Graph h = fx::shuffled_copy(g, 42);
  auto iso = pmk::are_isomorphic(g, h);
  REQUIRE(iso.has_value());
  CHECK(iso->size() == static_cast<size_t>(g.order()));
  for (auto [u, v] : g.edge_list()) {
    int mu = -1, mv = -1;
    for (auto [a, b] : *iso) {
      if (a == u) mu = b;
      if (a == v) mv = b;
    }
    CHECK(h.has_edge(mu, mv));
  }
}

TEST_CASE("isomorphism distinguishes close but different graphs") {
  CHECK(pmk::are_isomorphic(fx::grid_graph(2, 3), fx::cycle_graph(6)).has_value() ==
        false);
  CHECK(!pmk::are_isomorphic(fx::path_graph(4), fx::star_graph(3)).has_value());
  CHECK(!pmk::are_isomorphic(fx::cube_graph(), fx::complete_bipartite(4, 4)).has_value());
  // same degree sequence, different structure: C7 vs C3 + C4
  Graph b = pmk::graph_from_edges({{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 6}, {6, 3}});
  CHECK(!pmk::are_isomorphic(fx::cycle_graph(7), b).has_value());
  CHECK(pmk::are_isomorphic(fx::grid_graph(2, 3), fx::grid_graph(3, 2)).has_value());
}

TEST_CASE("crown graph is the cube in disguise") {
  // K4,4 minus a perfect matching is isomorphic to Q3
  Graph k44 = fx::complete_bipartite(4, 4);
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : k44.edge_list())
    if (v - u != 4) edges.emplace_back(u, v);
  CHECK(pmk::are_isomorphic(pmk::graph_from_edges(edges), fx::cube_graph()).has_value());
}
