#include "pmk/squares.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <json.hpp>

#include "pmk/embedding.hpp"

namespace pmk {

Square make_square(int a, int b, int c, int d) {
  std::array<int, 4> q{a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (q[i] == q[j]) throw error("square with repeated vertex");
  Square best{q};
  for (int refl = 0; refl < 2; ++refl) {
    std::array<int, 4> w = q;
    if (refl) std::reverse(w.begin(), w.end());
    for (int r = 0; r < 4; ++r) {
      Square cand{{w[r], w[(r + 1) % 4], w[(r + 2) % 4], w[(r + 3) % 4]}};
      if (cand.v < best.v) best = cand;
    }
  }
  return best;
}

SquareScan scan_squares(const Graph& g, bool stop_on_k23) {
  int n = g.order();
  SquareScan out;
  if (n < 4) return out;

  // mutable adjacency with twin back-pointers for O(1) vertex deletion
  std::vector<std::vector<std::pair<int, int>>> al(n);
  for (int u = 0; u < n; ++u)
    for (int v : g.adj[u])
      if (u < v) {
        al[u].emplace_back(v, static_cast<int>(al[v].size()));
        al[v].emplace_back(u, static_cast<int>(al[u].size()) - 1);
      }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (g.degree_ix(a) != g.degree_ix(b)) return g.degree_ix(a) > g.degree_ix(b);
    return a < b;
  });

  std::vector<std::vector<int>> bucket(n);
  std::vector<int> touched;
  // diagonal pair -> corner vertices seen, for the cross-step K2,3 count
  std::map<std::pair<int, int>, std::vector<int>> diag;

  auto k23_result = [&](int hub1, int hub2, const std::vector<int>& legs) {
    out.k23 = std::array<int, 5>{g.labels[hub1], g.labels[hub2], g.labels[legs[0]],
                                 g.labels[legs[1]], g.labels[legs[2]]};
  };

  for (int v : order) {
    touched.clear();
    for (auto [u, tu] : al[v]) {
      (void)tu;
      for (auto [w, tw] : al[u]) {
        (void)tw;
        if (w == v) continue;
        if (bucket[w].empty()) touched.push_back(w);
        bucket[w].push_back(u);
        if (stop_on_k23 && bucket[w].size() == 3) {
          k23_result(v, w, bucket[w]);
          for (int t : touched) bucket[t].clear();
          return out;
        }
      }
    }
    for (int w : touched) {
      auto& B = bucket[w];
      for (size_t i = 0; i < B.size(); ++i)
        for (size_t j = i + 1; j < B.size(); ++j) {
          out.squares.push_back(make_square(g.labels[v], g.labels[B[i]],
                                            g.labels[w], g.labels[B[j]]));
          if (stop_on_k23) {
            auto key = std::minmax(B[i], B[j]);
            auto& commons = diag[{key.first, key.second}];
            if (std::find(commons.begin(), commons.end(), v) == commons.end())
              commons.push_back(v);
            if (std::find(commons.begin(), commons.end(), w) == commons.end())
              commons.push_back(w);
            if (commons.size() >= 3) {
              k23_result(key.first, key.second, commons);
              for (int t : touched) bucket[t].clear();
              return out;
            }
          }
        }
      B.clear();
    }
    // delete v
    while (!al[v].empty()) {
      auto [u, j] = al[v].back();
      al[v].pop_back();
      auto last = al[u].back();
      al[u][j] = last;
      if (last.first != v) al[last.first][last.second].second = j;
      al[u].pop_back();
    }
  }

  std::sort(out.squares.begin(), out.squares.end());
  out.squares.erase(std::unique(out.squares.begin(), out.squares.end()),
                    out.squares.end());
  return out;
}

std::vector<Square> enumerate_squares(const Graph& g) {
  return scan_squares(g, false).squares;
}

bool is_cube(const Graph& g) {
  if (g.order() != 8 || g.size() != 12) return false;
  for (int v = 0; v < 8; ++v)
    if (g.degree_ix(v) != 3) return false;
  if (!is_bipartite(g)) return false;
  static const Graph q3 = [] {
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 3; ++b)
        if (a < (a ^ (1 << b))) e.emplace_back(a, a ^ (1 << b));
    return graph_from_edges(e);
  }();
  return are_isomorphic(g, q3).has_value();
}

std::optional<ForbiddenWitness> find_book(const Graph& g) {
  std::vector<Square> squares = enumerate_squares(g);
  std::map<std::pair<int, int>, std::vector<const Square*>> per_edge;
  for (const Square& s : squares)
    for (int k = 0; k < 4; ++k) {
      int a = s.v[k], b = s.v[(k + 1) % 4];
      per_edge[{std::min(a, b), std::max(a, b)}].push_back(&s);
    }
  for (const auto& [edge, on] : per_edge) {
    if (on.size() < 3) continue;
    auto [a, b] = edge;
    // corner pair of each square relative to the spine edge
    auto corners = [&](const Square& s) {
      std::vector<int> c;
      for (int x : s.v)
        if (x != a && x != b) c.push_back(x);
      return c;
    };
    std::vector<const Square*> picked;
    std::vector<int> used;
    for (const Square* s : on) {
      std::vector<int> c = corners(*s);
      if (std::find(used.begin(), used.end(), c[0]) != used.end()) continue;
      if (std::find(used.begin(), used.end(), c[1]) != used.end()) continue;
      picked.push_back(s);
      used.insert(used.end(), c.begin(), c.end());
      if (picked.size() == 3) break;
    }
    if (picked.size() < 3) continue;  // shared corners mean no genuine book here

    ForbiddenWitness w;
    w.kind = ForbiddenWitness::Kind::Book;
    w.spine = edge;
    w.vertices = {a, b};
    for (const Square* s : picked) {
      w.pages.push_back(s->v);
      for (int x : s->v)
        if (x != a && x != b) w.vertices.push_back(x);
    }
    std::sort(w.vertices.begin(), w.vertices.end());
    w.vertices.erase(std::unique(w.vertices.begin(), w.vertices.end()),
                     w.vertices.end());
    return w;
  }
  return std::nullopt;
}

namespace {

// Q3 pattern in an insertion order where every vertex sees mapped neighbors.
struct CubeSearch {
  const Graph& g;
  static constexpr int ord[8] = {0, 1, 3, 2, 4, 5, 7, 6};
  std::array<int, 8> img{};  // pattern vertex -> host index
  std::vector<int8_t> used;

  explicit CubeSearch(const Graph& g_) : g(g_), used(g_.order(), 0) {
    img.fill(-1);
  }

  bool place(int step) {
    if (step == 8) return true;
    int p = ord[step];
    std::vector<int> need;  // mapped pattern neighbors
    for (int b = 0; b < 3; ++b) {
      int q = p ^ (1 << b);
      if (img[q] >= 0) need.push_back(img[q]);
    }
    // candidates: neighbors of the first anchor (or all vertices for step 0)
    auto try_vertex = [&](int x) {
      if (used[x] || g.degree_ix(x) < 3) return false;
      for (int y : need)
        if (!g.has_edge_ix(x, y)) return false;
      img[p] = x;
      used[x] = 1;
      if (place(step + 1)) return true;
      used[x] = 0;
      img[p] = -1;
      return false;
    };
    if (need.empty()) {
      for (int x = 0; x < g.order(); ++x)
        if (try_vertex(x)) return true;
    } else {
      for (int x : g.adj[need[0]])
        if (try_vertex(x)) return true;
    }
    return false;
  }
};

}  // namespace

std::optional<ForbiddenWitness> find_cube_subgraph(const Graph& g) {
  if (g.order() < 8) return std::nullopt;
  CubeSearch cs(g);
  if (!cs.place(0)) return std::nullopt;
  ForbiddenWitness w;
  w.kind = ForbiddenWitness::Kind::Cube;
  for (int p = 0; p < 8; ++p) w.vertices.push_back(g.labels[cs.img[p]]);
  return w;
}

namespace {

struct CogwheelSearch {
  const Graph& g;
  int hub = -1, pendant = -1;
  std::vector<int8_t> in_nc, used;
  std::vector<int> rim;  // v1 u1 v2 u2 ...

  explicit CogwheelSearch(const Graph& g_)
      : g(g_), in_nc(g_.order(), 0), used(g_.order(), 0) {}

  bool spoke_ok(int v) {
    return in_nc[v] && !used[v] && v != pendant && v >= rim[0];
  }

  bool connector_ok(int u) {
    return !in_nc[u] && !used[u] && u != hub && u != pendant;
  }

  // rim holds v1 u1 ... v_i (odd size) or ... u_i (even size)
  bool extend() {
    int tail = rim.back();
    if (rim.size() % 2 == 1) {  // place a connector
      for (int u : g.adj[tail]) {
        if (!connector_ok(u)) continue;
        if (rim.size() >= 7 && g.has_edge_ix(u, rim[0])) {  // close: k >= 4
          rim.push_back(u);
          return true;
        }
        used[u] = 1;
        rim.push_back(u);
        if (extend()) return true;
        rim.pop_back();
        used[u] = 0;
      }
    } else {  // place a spoke
      for (int v : g.adj[tail]) {
        if (!spoke_ok(v)) continue;
        used[v] = 1;
        rim.push_back(v);
        if (extend()) return true;
        rim.pop_back();
        used[v] = 0;
      }
    }
    return false;
  }

  std::optional<ForbiddenWitness> run() {
    for (int c = 0; c < g.order(); ++c) {
      if (g.degree_ix(c) < 5) continue;
      hub = c;
      std::fill(in_nc.begin(), in_nc.end(), 0);
      for (int y : g.adj[c]) in_nc[y] = 1;
      for (int x : g.adj[c]) {
        pendant = x;
        for (int v1 : g.adj[c]) {
          if (v1 == x) continue;
          std::fill(used.begin(), used.end(), 0);
          used[v1] = 1;
          rim = {v1};
          if (extend()) {
            ForbiddenWitness w;
            w.kind = ForbiddenWitness::Kind::SuspendedCogwheel;
            w.hub = g.labels[c];
            w.pendant = g.labels[x];
            for (int t : rim) w.rim.push_back(g.labels[t]);
            w.vertices = w.rim;
            w.vertices.push_back(w.hub);
            w.vertices.push_back(w.pendant);
            std::sort(w.vertices.begin(), w.vertices.end());
            return w;
          }
        }
      }
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<ForbiddenWitness> find_suspended_cogwheel(const Graph& g) {
  return CogwheelSearch(g).run();
}

SquareGraphCheck is_square_graph(const Graph& g) {
  SquareGraphCheck out;
  MedianVerdict mv;
  if (g.order() <= 300) {
    mv = is_median_oracle(g);
  } else {
    PlanarCheck pc = planar_embed(g);
    if (!pc.planar()) {
      out.note = "not planar, hence not a square-graph";
      return out;
    }
    mv = is_median_planar(g);
  }
  if (!mv.median) {
    out.median_witness = std::move(mv.witness);
    return out;
  }
  if (auto c = find_cube_subgraph(g)) {
    out.forbidden = std::move(c);
    return out;
  }
  if (auto b = find_book(g)) {
    out.forbidden = std::move(b);
    return out;
  }
  if (auto s = find_suspended_cogwheel(g)) {
    out.forbidden = std::move(s);
    return out;
  }
  out.ok = true;
  return out;
}

BasicKind is_basic_qs(const Graph& g) {
  if (is_cube(g)) return BasicKind::Cube;
  if (enumerate_squares(g).empty()) return BasicKind::No;
  if (!is_square_graph(g).ok) return BasicKind::No;
  return BasicKind::CyclicSquareGraph;
}

std::string forbidden_json(const ForbiddenWitness& w) {
  nlohmann::ordered_json j;
  switch (w.kind) {
    case ForbiddenWitness::Kind::Cube: j["kind"] = "cube"; break;
    case ForbiddenWitness::Kind::Book: j["kind"] = "book"; break;
    case ForbiddenWitness::Kind::SuspendedCogwheel: j["kind"] = "cogwheel"; break;
  }
  j["vertices"] = w.vertices;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  if (w.kind == ForbiddenWitness::Kind::Book) {
    extra["spine"] = {w.spine.first, w.spine.second};
    nlohmann::ordered_json pages = nlohmann::ordered_json::array();
    for (const auto& p : w.pages) pages.push_back(p);
    extra["pages"] = std::move(pages);
  } else if (w.kind == ForbiddenWitness::Kind::SuspendedCogwheel) {
    extra["hub"] = w.hub;
    extra["pendant"] = w.pendant;
    extra["rim"] = w.rim;
  }
  j["extra"] = std::move(extra);
  return j.dump(2) + "\n";
}

}  // namespace pmk
