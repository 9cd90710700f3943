#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "pmk/embedding.hpp"
#include "pmk/median.hpp"
#include "pmk/nesting.hpp"

using pmk::Embedding;
using pmk::ForestNode;
using pmk::Graph;
using pmk::NestingForest;
using pmk::Square;

namespace {

Embedding embed(const Graph& g) {
  auto pc = pmk::planar_embed(g);
  REQUIRE(pc.planar());
  return *pc.embedding;
}

// face bounded by exactly this square, -1 if none
int face_of_square(const Embedding& e, const Square& s) {
  std::vector<int> want(s.v.begin(), s.v.end());
  std::sort(want.begin(), want.end());
  for (int f = 0; f < e.n_faces(); ++f) {
    auto w = e.walk_labels(f);
    if (w.size() != 4) continue;
    std::sort(w.begin(), w.end());
    if (w == want) return f;
  }
  return -1;
}

void check_well_formed(const NestingForest& f) {
  std::set<int> roots(f.roots.begin(), f.roots.end());
  REQUIRE(roots.size() == f.roots.size());
  int deepest = 0;
  for (int id = 0; id < static_cast<int>(f.nodes.size()); ++id) {
    const auto& nd = f.nodes[id];
    CHECK((nd.parent == -1) == (roots.count(id) > 0));
    if (nd.parent == -1) {
      CHECK(nd.level == 0);
    } else {
      const auto& p = f.nodes[nd.parent];
      CHECK(p.kind == ForestNode::Kind::Square);
      CHECK(nd.level == p.level + 1);
      CHECK(std::count(p.children.begin(), p.children.end(), id) == 1);
    }
    for (int c : nd.children) CHECK(f.nodes[c].parent == id);
    if (nd.kind == ForestNode::Kind::Vertex) {
      CHECK(nd.children.empty());
      CHECK(f.vertex_node(nd.vertex) == id);
    } else {
      CHECK(f.square_node(nd.square) == id);
    }
    deepest = std::max(deepest, nd.level);
  }
  CHECK(f.max_level == deepest);
}

void check_matches_brute(const Embedding& e) {
  NestingForest f = pmk::nesting_forest(e.g, e);
  check_well_formed(f);
  oracle::BruteForest b = oracle::brute_forest(e);
  int S = static_cast<int>(b.squares.size());
  REQUIRE(f.nodes.size() == b.squares.size() + b.wnode.size());
  for (int i = 0; i < S; ++i) {
    REQUIRE(f.nodes[i].kind == ForestNode::Kind::Square);
    CHECK(f.nodes[i].square == b.squares[i]);
    CHECK(f.nodes[i].parent == b.parent[i]);  // square node id == square index
    CHECK(f.nodes[i].level == b.level[i]);
  }
  for (size_t k = 0; k < b.wnode.size(); ++k) {
    const auto& nd = f.nodes[S + k];
    REQUIRE(nd.kind == ForestNode::Kind::Vertex);
    CHECK(nd.vertex == b.wnode[k].first);
    CHECK(nd.parent == b.wnode[k].second);
    CHECK(nd.level == b.wlevel[k]);
  }
}

std::vector<std::pair<int, int>> proper_pairs(const pmk::SquareOrder& o) {
  std::vector<std::pair<int, int>> out;
  for (auto [i, j] : o.contains)
    if (i != j) out.emplace_back(i, j);
  return out;
}

}  // namespace

TEST_CASE("containment order of a lone square is just reflexive") {
  auto e = embed(fx::cycle_graph(4));
  auto o = pmk::square_order(e.g, e);
  REQUIRE(o.squares.size() == 1);
  CHECK(o.contains == std::vector<std::pair<int, int>>{{0, 0}});
}

TEST_CASE("domino cells sit side by side") {
  auto e = embed(fx::domino());
  auto o = pmk::square_order(e.g, e);
  REQUIRE(o.squares.size() == 2);
  CHECK(proper_pairs(o).empty());
}

TEST_CASE("book: the middle page contains exactly one outer page") {
  auto e = embed(fx::book_graph(3));
  auto o = pmk::square_order(e.g, e);
  REQUIRE(o.squares.size() == 3);
  CHECK(proper_pairs(o).size() == 1);
}

TEST_CASE("cube seen from one face: that square contains the other five") {
  auto e = embed(fx::cube_graph());
  auto squares = pmk::enumerate_squares(e.g);
  REQUIRE(squares.size() == 6);
  for (int i = 0; i < 6; ++i) {
    int f = face_of_square(e, squares[i]);
    REQUIRE(f >= 0);
    auto o = pmk::square_order(e.g, pmk::reroot_outer(e, f));
    auto pp = proper_pairs(o);
    CHECK(pp.size() == 5);
    for (auto [a, b] : pp) {
      CHECK(a == i);
      CHECK(b != i);
    }
  }
}

TEST_CASE("containment is a partial order in every embedding") {
  std::vector<Graph> hosts = {fx::domino(),     fx::l_tromino(),
                              fx::grid_graph(3, 4), fx::cogwheel(4),
                              fx::book_graph(3),    fx::cube_graph()};
  for (const auto& g : hosts) {
    auto e0 = embed(g);
    for (int f = 0; f < e0.n_faces(); ++f) {
      auto o = pmk::square_order(g, pmk::reroot_outer(e0, f));
      std::set<std::pair<int, int>> rel(o.contains.begin(), o.contains.end());
      int S = static_cast<int>(o.squares.size());
      for (int i = 0; i < S; ++i) CHECK(rel.count({i, i}));
      for (auto [i, j] : rel)
        if (i != j) CHECK(!rel.count({j, i}));
      for (auto [i, j] : rel)
        for (auto [k, l] : rel)
          if (j == k) CHECK(rel.count({i, l}));
    }
  }
}

TEST_CASE("grid squares are all roots") {
  auto e = embed(fx::grid_graph(3, 4));
  auto f = pmk::nesting_forest(e.g, e);
  check_well_formed(f);
  REQUIRE(f.nodes.size() == 6);
  CHECK(f.roots.size() == 6);
  CHECK(f.max_level == 0);
}

TEST_CASE("cube: the outer square swallows the other five") {
  auto e = embed(fx::cube_graph());
  for (int face = 0; face < e.n_faces(); ++face) {
    auto f = pmk::nesting_forest(e.g, pmk::reroot_outer(e, face));
    check_well_formed(f);
    REQUIRE(f.nodes.size() == 6);
    REQUIRE(f.roots.size() == 1);
    const auto& root = f.nodes[f.roots[0]];
    CHECK(root.children.size() == 5);
    CHECK(f.max_level == 1);
  }
}

TEST_CASE("book forest: two roots in a page-to-page view, a chain from a page face") {
  auto e = embed(fx::book_graph(3));
  auto f = pmk::nesting_forest(e.g, e);  // outer face is a hexagon
  check_well_formed(f);
  REQUIRE(f.nodes.size() == 3);
  std::multiset<int> levels;
  for (const auto& nd : f.nodes) levels.insert(nd.level);
  CHECK(f.roots.size() == 2);
  CHECK(levels == std::multiset<int>{0, 0, 1});

  // from a page face the three pages form one chain
  int sqface = -1;
  for (int face = 0; face < e.n_faces(); ++face)
    if (e.walk_labels(face).size() == 4) sqface = face;
  REQUIRE(sqface >= 0);
  auto fc = pmk::nesting_forest(e.g, pmk::reroot_outer(e, sqface));
  check_well_formed(fc);
  CHECK(fc.roots.size() == 1);
  CHECK(fc.max_level == 2);
}

TEST_CASE("a pendant vertex lands inside or outside depending on the view") {
  auto g = pmk::graph_from_edges({{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}});
  auto e = pmk::embedding_from_rotation(g, {{1, 4, 3}, {2, 0}, {3, 1}, {0, 2}, {0}});
  REQUIRE(e.n_faces() == 2);

  // default outer is the six-step walk with the spur: the pendant is outside
  auto f = pmk::nesting_forest(g, e);
  check_well_formed(f);
  REQUIRE(f.nodes.size() == 2);
  int w = f.vertex_node(4);
  REQUIRE(w >= 0);
  CHECK(f.nodes[w].parent == -1);
  CHECK(f.roots.size() == 2);

  // flip to the square face as outer: now the pendant hangs inside the square
  int sqface = e.walk_labels(0).size() == 4 ? 0 : 1;
  auto fi = pmk::nesting_forest(g, pmk::reroot_outer(e, sqface));
  check_well_formed(fi);
  w = fi.vertex_node(4);
  REQUIRE(w >= 0);
  CHECK(fi.nodes[w].parent == fi.square_node(pmk::make_square(0, 1, 2, 3)));
  CHECK(fi.nodes[w].level == 1);
  CHECK(fi.roots.size() == 1);
  CHECK(fi.max_level == 1);
}

TEST_CASE("forest agrees with the pairwise rebuild on the fixture corpus") {
  auto cube_pendant = [] {
    auto edges = fx::cube_graph().edge_list();
    edges.push_back({3, 100});
    return pmk::graph_from_edges(edges);
  };
  std::vector<Graph> hosts = {fx::domino(),          fx::l_tromino(),
                              fx::grid_graph(3, 3),  fx::grid_graph(3, 4),
                              fx::cogwheel(4),       fx::cogwheel(6),
                              fx::book_graph(3),     fx::book_graph(4),
                              fx::cube_graph(),      cube_pendant(),
                              fx::path_graph(6),     fx::star_graph(5)};
  for (const auto& g : hosts) {
    auto e = embed(g);
    for (int face = 0; face < e.n_faces(); ++face)
      check_matches_brute(pmk::reroot_outer(e, face));
  }
}

TEST_CASE("forest agrees with the pairwise rebuild on all small hosts") {
  int seen = 0;
  for (int n = 5; n <= 8; ++n) {
    oracle::each_connected_bipartite(n, 12, [&](const Graph& g) {
      if (pmk::contains_k23(g)) return;
      auto pc = pmk::planar_embed(g);
      if (!pc.planar()) return;
      ++seen;
      const auto& e = *pc.embedding;
      check_matches_brute(e);
      if (e.n_faces() > 1)
        check_matches_brute(pmk::reroot_outer(e, (e.outer + 1) % e.n_faces()));
    });
  }
  CHECK(seen > 1000);
}

TEST_CASE("level slices cover every level") {
  auto e = embed(fx::cube_graph());
  auto f = pmk::nesting_forest(e.g, e);
  auto slices = pmk::level_slices(f);
  REQUIRE(slices.size() == 2);
  CHECK(slices.at(0).size() == 1);
  CHECK(slices.at(1).size() == 5);

  auto fg = pmk::nesting_forest(fx::grid_graph(3, 4), embed(fx::grid_graph(3, 4)));
  auto sg = pmk::level_slices(fg);
  REQUIRE(sg.size() == 1);
  CHECK(sg.at(0).size() == 6);
}

TEST_CASE("an outer face bounded by a square forces a single tree") {
  for (const auto& g : {fx::cube_graph(), fx::grid_graph(3, 3), fx::grid_graph(3, 4)}) {
    auto e = embed(g);
    for (const auto& s : pmk::enumerate_squares(g)) {
      int face = face_of_square(e, s);
      if (face < 0) continue;
      auto f = pmk::nesting_forest(g, pmk::reroot_outer(e, face));
      CHECK(f.roots.size() == 1);
      CHECK(f.nodes[f.roots[0]].square == s);
    }
  }
}

TEST_CASE("forest JSON lists nodes, roots, and the depth") {
  auto e = embed(fx::cube_graph());
  auto f = pmk::nesting_forest(e.g, e);
  auto j = nlohmann::json::parse(pmk::forest_json(f));
  REQUIRE(j["nodes"].size() == 6);
  CHECK(j["roots"].size() == 1);
  CHECK(j["max_level"] == 1);
  int root_id = j["roots"][0];
  CHECK(j["nodes"][root_id]["parent"].is_null());
  CHECK(j["nodes"][root_id]["kind"] == "square");
  CHECK(j["nodes"][root_id]["square"].size() == 4);

  auto g = pmk::graph_from_edges({{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}});
  auto ep = pmk::embedding_from_rotation(g, {{1, 4, 3}, {2, 0}, {3, 1}, {0, 2}, {0}});
  auto jp = nlohmann::json::parse(
      pmk::forest_json(pmk::nesting_forest(g, ep)));
  bool saw_vertex = false;
  for (const auto& nd : jp["nodes"])
    if (nd["kind"] == "vertex") {
      saw_vertex = true;
      CHECK(nd["vertex"] == 4);
    }
  CHECK(saw_vertex);
}

TEST_CASE("forest DOT names squares and free vertices") {
  auto g = pmk::graph_from_edges({{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}});
  auto e = pmk::embedding_from_rotation(g, {{1, 4, 3}, {2, 0}, {3, 1}, {0, 2}, {0}});
  int sqface = e.walk_labels(0).size() == 4 ? 0 : 1;
  auto dot = pmk::forest_dot(pmk::nesting_forest(g, pmk::reroot_outer(e, sqface)));
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("shape=box") != std::string::npos);
  CHECK(dot.find("v4") != std::string::npos);
  CHECK(dot.find("shape=circle") != std::string::npos);
  CHECK(dot.find("->") != std::string::npos);
}

TEST_CASE("nesting forest wants a connected host") {
  auto g = pmk::graph_from_edges({{0, 1}, {1, 2}, {2, 3}, {3, 0},
                                  {10, 11}, {11, 12}, {12, 13}, {13, 10}});
  auto e = embed(g);
  CHECK_THROWS_AS(pmk::nesting_forest(g, e), pmk::error);
}
