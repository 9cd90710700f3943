#include "fixtures.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace fx {

using pmk::Graph;

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  if (n == 1) return pmk::graph_from_edges({}, {0});
  return pmk::graph_from_edges(e);
}

Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return pmk::graph_from_edges(e);
}

Graph grid_graph(int rows, int cols) {
  std::vector<std::pair<int, int>> e;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.emplace_back(r * cols + c, r * cols + c + 1);
      if (r + 1 < rows) e.emplace_back(r * cols + c, (r + 1) * cols + c);
    }
  return pmk::graph_from_edges(e);
}

Graph hypercube(int dim) {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < (1 << dim); ++v)
    for (int b = 0; b < dim; ++b)
      if (v < (v ^ (1 << b))) e.emplace_back(v, v ^ (1 << b));
  return pmk::graph_from_edges(e);
}

Graph cube_graph() { return hypercube(3); }

Graph cube_minus_vertex() {
  Graph q = cube_graph();
  return q.induced({0, 1, 2, 3, 4, 5, 6});
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return pmk::graph_from_edges(e);
}

Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return pmk::graph_from_edges(e);
}

Graph star_graph(int leaves) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return pmk::graph_from_edges(e);
}

Graph book_graph(int pages) {
  std::vector<std::pair<int, int>> e{{0, 1}};
  for (int i = 0; i < pages; ++i) {
    int c = 2 + 2 * i, d = 3 + 2 * i;
    e.emplace_back(0, c);
    e.emplace_back(c, d);
    e.emplace_back(d, 1);
  }
  return pmk::graph_from_edges(e);
}

Graph cogwheel(int k) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= 2 * k; ++i) e.emplace_back(i, i % (2 * k) + 1);
  for (int i = 1; i <= 2 * k; i += 2) e.emplace_back(0, i);
  return pmk::graph_from_edges(e);
}

Graph suspended_cogwheel(int k) {
  Graph m = cogwheel(k);
  auto e = m.edge_list();
  e.emplace_back(0, 2 * k + 1);
  return pmk::graph_from_edges(e);
}

Graph k23() { return complete_bipartite(2, 3); }

Graph cells_graph(const std::vector<std::pair<int, int>>& cells) {
  auto corner = [](int x, int y) { return y * 1000 + x; };
  std::set<std::pair<int, int>> e;
  for (auto [x, y] : cells) {
    e.insert(std::minmax(corner(x, y), corner(x + 1, y)));
    e.insert(std::minmax(corner(x, y + 1), corner(x + 1, y + 1)));
    e.insert(std::minmax(corner(x, y), corner(x, y + 1)));
    e.insert(std::minmax(corner(x + 1, y), corner(x + 1, y + 1)));
  }
  return pmk::graph_from_edges({e.begin(), e.end()});
}

Graph domino() { return cells_graph({{0, 0}, {1, 0}}); }

Graph l_tromino() { return cells_graph({{0, 0}, {1, 0}, {0, 1}}); }

Graph shuffled_copy(const Graph& g, uint64_t seed) {
  int n = g.order();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<int, int>> e;
  for (auto [u, v] : g.edge_list())
    e.emplace_back(perm[g.index_of(u)], perm[g.index_of(v)]);
  std::vector<int> iso;
  for (int ix = 0; ix < n; ++ix)
    if (g.degree_ix(ix) == 0) iso.push_back(perm[ix]);
  return pmk::graph_from_edges(e, iso);
}

}  // namespace fx
