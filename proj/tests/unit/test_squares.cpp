#include <doctest.h>

#include <algorithm>
#include <json.hpp>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pmk/embedding.hpp"
#include "pmk/squares.hpp"

using pmk::Graph;
using pmk::Square;

namespace {

std::set<std::array<int, 4>> square_set(const Graph& g) {
  std::set<std::array<int, 4>> out;
  for (const Square& s : pmk::enumerate_squares(g)) out.insert(s.v);
  return out;
}

// every 4-subset of vertices inducing a 4-cycle, canonicalized
std::set<std::array<int, 4>> brute_squares(const Graph& g) {
  std::set<std::array<int, 4>> out;
  int n = g.order();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          int perm[3][4] = {{a, b, c, d}, {a, b, d, c}, {a, c, b, d}};
          for (auto& p : perm) {
            bool cyc = g.has_edge_ix(p[0], p[1]) && g.has_edge_ix(p[1], p[2]) &&
                       g.has_edge_ix(p[2], p[3]) && g.has_edge_ix(p[3], p[0]);
            if (cyc)
              out.insert(pmk::make_square(g.labels[p[0]], g.labels[p[1]],
                                          g.labels[p[2]], g.labels[p[3]])
                             .v);
          }
        }
  return out;
}

}  // namespace

TEST_CASE("square canonicalization") {
  Square s = pmk::make_square(3, 1, 7, 2);
  CHECK(pmk::make_square(1, 7, 2, 3).v == s.v);
  CHECK(pmk::make_square(2, 7, 1, 3).v == s.v);
  CHECK(s.v[0] == 1);
  CHECK_THROWS_AS(pmk::make_square(1, 2, 1, 3), pmk::error);
}

TEST_CASE("square enumeration matches brute force") {
  for (const Graph& g :
       {fx::cube_graph(), fx::grid_graph(3, 4), fx::book_graph(4), fx::cogwheel(5),
        fx::k23(), fx::complete_bipartite(2, 4), fx::l_tromino(), fx::path_graph(5),
        fx::complete_graph(5), fx::hypercube(4), fx::suspended_cogwheel(4)}) {
    CHECK(square_set(g) == brute_squares(g));
  }
}

TEST_CASE("square counts of known graphs") {
  CHECK(pmk::enumerate_squares(fx::cube_graph()).size() == 6);
  CHECK(pmk::enumerate_squares(fx::domino()).size() == 2);
  CHECK(pmk::enumerate_squares(fx::path_graph(6)).size() == 0);
  CHECK(pmk::enumerate_squares(fx::grid_graph(4, 5)).size() == 12);
  CHECK(pmk::enumerate_squares(fx::k23()).size() == 3);
  CHECK(pmk::enumerate_squares(fx::cogwheel(6)).size() == 6);
  CHECK(pmk::enumerate_squares(fx::cycle_graph(4)).size() == 1);
}

TEST_CASE("K23 scan finds hubs regardless of degree order") {
  auto direct = pmk::scan_squares(fx::k23(), true);
  REQUIRE(direct.k23.has_value());
  CHECK(std::set<int>({(*direct.k23)[0], (*direct.k23)[1]}) == std::set<int>{0, 1});

  // legs carry extra pendants so they outrank the hubs in degree order
  std::vector<std::pair<int, int>> e = fx::k23().edge_list();
  int next = 100;
  for (int leg : {2, 3, 4})
    for (int t = 0; t < 4; ++t) e.emplace_back(leg, next++);
  Graph padded = pmk::graph_from_edges(e);
  auto scan = pmk::scan_squares(padded, true);
  REQUIRE(scan.k23.has_value());
  auto& w = *scan.k23;
  for (int i = 2; i < 5; ++i) {
    CHECK(padded.has_edge(w[0], w[i]));
    CHECK(padded.has_edge(w[1], w[i]));
  }
  CHECK(std::set<int>(w.begin(), w.end()).size() == 5);

  CHECK(!pmk::scan_squares(fx::grid_graph(5, 5), true).k23.has_value());
  CHECK(!pmk::scan_squares(fx::cube_graph(), true).k23.has_value());
  CHECK(pmk::scan_squares(fx::complete_bipartite(2, 9), true).k23.has_value());
}

TEST_CASE("cube recognition") {
  CHECK(pmk::is_cube(fx::cube_graph()));
  CHECK(pmk::is_cube(fx::shuffled_copy(fx::cube_graph(), 7)));
  CHECK(!pmk::is_cube(fx::cube_minus_vertex()));
  CHECK(!pmk::is_cube(fx::cycle_graph(6)));  // K33 minus a perfect matching
  CHECK(!pmk::is_cube(fx::cycle_graph(8)));
  CHECK(!pmk::is_cube(fx::hypercube(4)));
  CHECK(!pmk::is_cube(fx::complete_bipartite(3, 3)));

  // K4,4 minus a perfect matching is a relabeled cube
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : fx::complete_bipartite(4, 4).edge_list())
    if (v - u != 4) edges.emplace_back(u, v);
  CHECK(pmk::is_cube(pmk::graph_from_edges(edges)));
}

TEST_CASE("book detection") {
  auto hit = pmk::find_book(fx::book_graph(3));
  REQUIRE(hit.has_value());
  CHECK(hit->kind == pmk::ForbiddenWitness::Kind::Book);
  CHECK(hit->spine == std::pair<int, int>{0, 1});
  CHECK(hit->pages.size() == 3);
  CHECK(hit->vertices.size() == 8);
  // corner pairs are pairwise disjoint
  std::set<int> corners;
  for (const auto& p : hit->pages)
    for (int v : p)
      if (v != 0 && v != 1) corners.insert(v);
  CHECK(corners.size() == 6);

  CHECK(pmk::find_book(fx::book_graph(4)).has_value());
  CHECK(!pmk::find_book(fx::cube_graph()).has_value());
  CHECK(!pmk::find_book(fx::domino()).has_value());
  CHECK(!pmk::find_book(fx::grid_graph(4, 4)).has_value());
  CHECK(!pmk::find_book(fx::k23()).has_value());
  // K2,4: edges lie in 3 squares but corner pairs always share a hub
  CHECK(!pmk::find_book(fx::complete_bipartite(2, 4)).has_value());
}

TEST_CASE("cube subgraph search") {
  auto hit = pmk::find_cube_subgraph(fx::cube_graph());
  REQUIRE(hit.has_value());
  CHECK(hit->kind == pmk::ForbiddenWitness::Kind::Cube);
  REQUIRE(hit->vertices.size() == 8);
  // image respects the Q3 adjacency pattern
  Graph q = fx::cube_graph();
  for (int p = 0; p < 8; ++p)
    for (int b = 0; b < 3; ++b)
      CHECK(q.has_edge(hit->vertices[p], hit->vertices[p ^ (1 << b)]));

  Graph plus = pmk::graph_from_edges([] {
    auto e = fx::cube_graph().edge_list();
    e.emplace_back(7, 9);
    return e;
  }());
  CHECK(pmk::find_cube_subgraph(plus).has_value());
  CHECK(pmk::find_cube_subgraph(fx::hypercube(4)).has_value());
  CHECK(!pmk::find_cube_subgraph(fx::domino()).has_value());
  CHECK(!pmk::find_cube_subgraph(fx::grid_graph(5, 5)).has_value());
  CHECK(!pmk::find_cube_subgraph(fx::cube_minus_vertex()).has_value());
  CHECK(!pmk::find_cube_subgraph(fx::complete_bipartite(3, 3)).has_value());
}

TEST_CASE("suspended cogwheel detection") {
  auto hit = pmk::find_suspended_cogwheel(fx::suspended_cogwheel(4));
  REQUIRE(hit.has_value());
  CHECK(hit->kind == pmk::ForbiddenWitness::Kind::SuspendedCogwheel);
  CHECK(hit->hub == 0);
  CHECK(hit->pendant == 9);
  REQUIRE(hit->rim.size() >= 8);
  REQUIRE(hit->rim.size() % 2 == 0);
  // rim alternates spokes and connectors and closes up
  Graph g = fx::suspended_cogwheel(4);
  int k = static_cast<int>(hit->rim.size());
  for (int i = 0; i < k; ++i) {
    CHECK(g.has_edge(hit->rim[i], hit->rim[(i + 1) % k]));
    if (i % 2 == 0) CHECK(g.has_edge(0, hit->rim[i]));
    if (i % 2 == 1) CHECK(!g.has_edge(0, hit->rim[i]));
  }
  CHECK(g.has_edge(hit->hub, hit->pendant));

  CHECK(pmk::find_suspended_cogwheel(fx::suspended_cogwheel(5)).has_value());
  CHECK(!pmk::find_suspended_cogwheel(fx::cogwheel(4)).has_value());  // no pendant
  CHECK(!pmk::find_suspended_cogwheel(fx::cogwheel(6)).has_value());
  CHECK(!pmk::find_suspended_cogwheel(fx::cube_graph()).has_value());  // degree < 5
  CHECK(!pmk::find_suspended_cogwheel(fx::grid_graph(5, 5)).has_value());
  CHECK(!pmk::find_suspended_cogwheel(fx::star_graph(8)).has_value());
  // a suspended M3 is too small: k >= 4 required
  CHECK(!pmk::find_suspended_cogwheel(fx::suspended_cogwheel(3)).has_value());
}

TEST_CASE("square-graph recognition") {
  for (const Graph& g :
       {fx::path_graph(6), fx::star_graph(5), fx::cycle_graph(4), fx::domino(),
        fx::l_tromino(), fx::grid_graph(3, 4), fx::cogwheel(4), fx::cogwheel(6)}) {
    auto r = pmk::is_square_graph(g);
    CHECK(r.ok);
  }

  auto cube = pmk::is_square_graph(fx::cube_graph());
  REQUIRE(!cube.ok);
  REQUIRE(cube.forbidden.has_value());
  CHECK(cube.forbidden->kind == pmk::ForbiddenWitness::Kind::Cube);

  auto book = pmk::is_square_graph(fx::book_graph(3));
  REQUIRE(!book.ok);
  REQUIRE(book.forbidden.has_value());
  CHECK(book.forbidden->kind == pmk::ForbiddenWitness::Kind::Book);

  for (int k : {4, 5}) {
    auto wheel = pmk::is_square_graph(fx::suspended_cogwheel(k));
    REQUIRE(!wheel.ok);
    REQUIRE(wheel.forbidden.has_value());
    CHECK(wheel.forbidden->kind == pmk::ForbiddenWitness::Kind::SuspendedCogwheel);
  }

  auto c6 = pmk::is_square_graph(fx::cycle_graph(6));
  REQUIRE(!c6.ok);
  REQUIRE(c6.median_witness.has_value());

  auto k23 = pmk::is_square_graph(fx::k23());
  REQUIRE(!k23.ok);
  REQUIRE(k23.median_witness.has_value());
}

TEST_CASE("square-graph recognition agrees with the embedding oracle") {
  // trees and 2-connected instances where the all-faces-squares test is exact
  std::vector<Graph> corpus = {fx::path_graph(8),
                               fx::star_graph(6),
                               fx::cycle_graph(4),
                               fx::cycle_graph(6),
                               fx::cycle_graph(8),
                               fx::domino(),
                               fx::l_tromino(),
                               fx::grid_graph(3, 3),
                               fx::grid_graph(2, 5),
                               fx::cube_graph(),
                               fx::cube_minus_vertex(),
                               fx::book_graph(3),
                               fx::cogwheel(4),
                               fx::cogwheel(5),
                               fx::k23(),
                               fx::complete_bipartite(2, 4),
                               fx::cells_graph({{0, 0}, {1, 0}, {2, 0}, {0, 1}}),
                               fx::cells_graph({{0, 0}, {1, 0}, {0, 1}, {1, 1}})};
  for (const Graph& g : corpus) {
    auto want = oracle::square_graph_oracle(g);
    REQUIRE(want.has_value());
    CHECK(pmk::is_square_graph(g).ok == *want);
  }
  oracle::each_connected_bipartite(6, 12, [](const Graph& g) {
    auto want = oracle::square_graph_oracle(g);
    if (!want.has_value()) return;
    CHECK(pmk::is_square_graph(g).ok == *want);
  });
}

TEST_CASE("every square of a recognized square-graph bounds a face") {
  // not true of an arbitrary plane drawing -- a flipped bridge can bury a
  // square inside another -- but some drawing always realizes all of them
  for (const Graph& g : {fx::domino(), fx::l_tromino(), fx::grid_graph(3, 4),
                         fx::cogwheel(4), fx::cogwheel(6)}) {
    REQUIRE(pmk::is_square_graph(g).ok);
    std::set<std::array<int, 4>> squares;
    for (const Square& s : pmk::enumerate_squares(g)) squares.insert(s.v);
    auto covers_all = [&](const pmk::Embedding& e) {
      std::set<std::array<int, 4>> faces;
      for (int f = 0; f < e.n_faces(); ++f) {
        auto w = e.walk_labels(f);
        if (w.size() == 4 && std::set<int>(w.begin(), w.end()).size() == 4)
          faces.insert(pmk::make_square(w[0], w[1], w[2], w[3]).v);
      }
      return std::includes(faces.begin(), faces.end(), squares.begin(),
                           squares.end());
    };
    auto found = oracle::each_planar_embedding(
        g, 4'000'000, [&](const pmk::Embedding& e) { return !covers_all(e); });
    REQUIRE(found.has_value());
    CHECK(*found);
  }
}

TEST_CASE("basic piece classification") {
  CHECK(pmk::is_basic_qs(fx::cube_graph()) == pmk::BasicKind::Cube);
  CHECK(pmk::is_basic_qs(fx::cycle_graph(4)) == pmk::BasicKind::CyclicSquareGraph);
  CHECK(pmk::is_basic_qs(fx::domino()) == pmk::BasicKind::CyclicSquareGraph);
  CHECK(pmk::is_basic_qs(fx::cogwheel(5)) == pmk::BasicKind::CyclicSquareGraph);
  CHECK(pmk::is_basic_qs(fx::path_graph(5)) == pmk::BasicKind::No);
  CHECK(pmk::is_basic_qs(fx::star_graph(4)) == pmk::BasicKind::No);
  CHECK(pmk::is_basic_qs(fx::book_graph(3)) == pmk::BasicKind::No);
  CHECK(pmk::is_basic_qs(fx::cycle_graph(6)) == pmk::BasicKind::No);
  CHECK(pmk::is_basic_qs(fx::cube_minus_vertex()) == pmk::BasicKind::No);
}

TEST_CASE("forbidden witness json") {
  auto book = pmk::find_book(fx::book_graph(3));
  auto j = nlohmann::json::parse(pmk::forbidden_json(*book));
  CHECK(j["kind"] == "book");
  CHECK(j["extra"]["spine"].size() == 2);
  CHECK(j["extra"]["pages"].size() == 3);

  auto wheel = pmk::find_suspended_cogwheel(fx::suspended_cogwheel(4));
  auto j2 = nlohmann::json::parse(pmk::forbidden_json(*wheel));
  CHECK(j2["kind"] == "cogwheel");
  CHECK(j2["extra"]["hub"] == 0);
  CHECK(j2["extra"]["rim"].size() >= 8);

  auto cube = pmk::find_cube_subgraph(fx::cube_graph());
  auto j3 = nlohmann::json::parse(pmk::forbidden_json(*cube));
  CHECK(j3["kind"] == "cube");
  CHECK(j3["vertices"].size() == 8);
}
