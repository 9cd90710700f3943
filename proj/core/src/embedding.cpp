#include "pmk/embedding.hpp"

#include <algorithm>
#include <numeric>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <json.hpp>

namespace pmk {

int Embedding::dir_id(int u, int v) const {
  const auto& r = rot[u];
  for (size_t i = 0; i < r.size(); ++i)
    if (r[i] == v) return offset[u] + static_cast<int>(i);
  throw error("no directed edge " + std::to_string(g.labels[u]) + "->" +
              std::to_string(g.labels[v]));
}

std::vector<int> Embedding::walk_labels(int f) const {
  std::vector<int> out;
  out.reserve(face_walk[f].size());
  for (int v : face_walk[f]) out.push_back(g.labels[v]);
  return out;
}

namespace {

void trace_faces(Embedding& e) {
  const Graph& g = e.g;
  int n = g.order();
  e.offset.assign(n + 1, 0);
  for (int v = 0; v < n; ++v)
    e.offset[v + 1] = e.offset[v] + static_cast<int>(e.rot[v].size());
  int total = e.offset[n];

  std::vector<int> dir_src(total);
  for (int v = 0; v < n; ++v)
    for (int i = e.offset[v]; i < e.offset[v + 1]; ++i) dir_src[i] = v;

  // twin ids via bucketing by target, no hashing
  e.twin.assign(total, -1);
  std::vector<std::vector<std::pair<int, int>>> bucket(n);  // target -> (src, id)
  for (int v = 0; v < n; ++v)
    for (size_t i = 0; i < e.rot[v].size(); ++i)
      bucket[e.rot[v][i]].emplace_back(v, e.offset[v] + static_cast<int>(i));
  std::vector<int> scratch(n, -1);
  for (int w = 0; w < n; ++w) {
    for (size_t j = 0; j < e.rot[w].size(); ++j) scratch[e.rot[w][j]] = static_cast<int>(j);
    for (auto [v, id] : bucket[w]) e.twin[id] = e.offset[w] + scratch[v];
  }

  e.face_of_dir.assign(total, -1);
  e.face_walk.clear();
  for (int start = 0; start < total; ++start) {
    if (e.face_of_dir[start] >= 0) continue;
    int f = static_cast<int>(e.face_walk.size());
    std::vector<int> walk;
    int cur = start;
    do {
      e.face_of_dir[cur] = f;
      int v = dir_src[cur];
      walk.push_back(v);
      int w = e.rot[v][cur - e.offset[v]];
      int j = e.twin[cur] - e.offset[w];
      int deg = static_cast<int>(e.rot[w].size());
      cur = e.offset[w] + (j + 1) % deg;
    } while (cur != start);
    e.face_walk.push_back(std::move(walk));
  }
}

void check_euler(const Embedding& e) {
  const Graph& g = e.g;
  auto comps = connected_components(g);
  std::vector<int> comp_of(g.order(), -1);
  for (size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) comp_of[v] = static_cast<int>(c);
  std::vector<long long> V(comps.size(), 0), E(comps.size(), 0), F(comps.size(), 0);
  for (size_t c = 0; c < comps.size(); ++c) V[c] = static_cast<long long>(comps[c].size());
  for (int v = 0; v < g.order(); ++v) E[comp_of[v]] += g.degree_ix(v);
  for (const auto& w : e.face_walk) F[comp_of[w[0]]] += 1;
  for (size_t c = 0; c < comps.size(); ++c) {
    E[c] /= 2;
    if (E[c] == 0) continue;  // isolated vertex, no traced face
    if (V[c] - E[c] + F[c] != 2)
      throw error("rotation system fails Euler check (component " +
                  std::to_string(c) + ")");
  }
}

// Booth's least-rotation index
int least_rotation(const std::vector<int>& s) {
  int n = static_cast<int>(s.size());
  if (n <= 1) return 0;
  std::vector<int> f(2 * n, -1);
  int k = 0;
  for (int j = 1; j < 2 * n; ++j) {
    int sj = s[j % n];
    int i = f[j - k - 1];
    while (i != -1 && sj != s[(k + i + 1) % n]) {
      if (sj < s[(k + i + 1) % n]) k = j - i - 1;
      i = f[i];
    }
    if (sj != s[(k + i + 1) % n]) {
      if (sj < s[k % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k % n;
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

Embedding embedding_from_rotation(Graph g, std::vector<std::vector<int>> rot) {
  if (static_cast<int>(rot.size()) != g.order())
    throw error("rotation size does not match vertex count");
  for (int v = 0; v < g.order(); ++v) {
    std::vector<int> a = rot[v];
    std::sort(a.begin(), a.end());
    if (a != g.adj[v])
      throw error("rotation at vertex " + std::to_string(g.labels[v]) +
                  " is not a permutation of its neighbors");
  }
  Embedding e;
  e.g = std::move(g);
  e.rot = std::move(rot);
  trace_faces(e);
  check_euler(e);
  if (e.n_faces() > 0) e.outer = default_outer_face(e);
  return e;
}

int default_outer_face(const Embedding& e) {
  size_t best_len = 0;
  for (const auto& w : e.face_walk) best_len = std::max(best_len, w.size());
  int best = -1;
  std::vector<int> best_canon;
  for (int f = 0; f < e.n_faces(); ++f) {
    if (e.face_walk[f].size() != best_len) continue;
    std::vector<int> lab = e.walk_labels(f);
    int r = least_rotation(lab);
    std::vector<int> canon(lab.size());
    for (size_t i = 0; i < lab.size(); ++i) canon[i] = lab[(r + i) % lab.size()];
    if (best < 0 || canon < best_canon) {
      best = f;
      best_canon = std::move(canon);
    }
  }
  return best;
}

Embedding reroot_outer(Embedding e, int face) {
  if (face < 0 || face >= e.n_faces()) throw error("reroot_outer: no such face");
  e.outer = face;
  return e;
}

PlanarCheck planar_embed(const Graph& g) {
  namespace bg = boost;
  using BGraph =
      bg::adjacency_list<bg::vecS, bg::vecS, bg::undirectedS,
                         bg::property<bg::vertex_index_t, int>,
                         bg::property<bg::edge_index_t, int>>;
  using EdgeD = bg::graph_traits<BGraph>::edge_descriptor;

  int n = g.order();
  if (n == 0) {
    Embedding e;
    e.g = g;
    return PlanarCheck{std::move(e), {}};
  }

  BGraph bgr(n);
  for (int u = 0; u < n; ++u)
    for (int v : g.adj[u])
      if (u < v) bg::add_edge(u, v, bgr);
  auto eim = bg::get(bg::edge_index, bgr);
  int ei = 0;
  for (auto [it, end] = bg::edges(bgr); it != end; ++it) bg::put(eim, *it, ei++);

  std::vector<std::vector<EdgeD>> emb(n);
  std::vector<EdgeD> kur;
  bool planar = bg::boyer_myrvold_planarity_test(
      bg::boyer_myrvold_params::graph = bgr,
      bg::boyer_myrvold_params::embedding = emb.data(),
      bg::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kur));

  if (!planar) {
    PlanarCheck out;
    for (const EdgeD& ed : kur) {
      int u = static_cast<int>(bg::source(ed, bgr));
      int v = static_cast<int>(bg::target(ed, bgr));
      out.kuratowski.emplace_back(g.labels[std::min(u, v)], g.labels[std::max(u, v)]);
    }
    std::sort(out.kuratowski.begin(), out.kuratowski.end());
    return out;
  }

  std::vector<std::vector<int>> rot(n);
  for (int v = 0; v < n; ++v) {
    rot[v].reserve(emb[v].size());
    for (const EdgeD& ed : emb[v]) {
      int s = static_cast<int>(bg::source(ed, bgr));
      int t = static_cast<int>(bg::target(ed, bgr));
      rot[v].push_back(s == v ? t : s);
    }
  }
  return PlanarCheck{embedding_from_rotation(g, std::move(rot)), {}};
}

SideMap side_map(const Embedding& e, const std::array<int, 4>& sq) {
  const Graph& g = e.g;
  for (int k = 0; k < 4; ++k) {
    if (sq[k] < 0 || sq[k] >= g.order()) throw error("side_map: bad square vertex");
    if (!g.has_edge_ix(sq[k], sq[(k + 1) % 4]))
      throw error("side_map: quadruple is not a 4-cycle");
  }
  if (e.outer < 0) throw error("side_map: embedding has no faces");

  auto is_sq_edge = [&](int a, int b) {
    for (int k = 0; k < 4; ++k) {
      int x = sq[k], y = sq[(k + 1) % 4];
      if ((a == x && b == y) || (a == y && b == x)) return true;
    }
    return false;
  };

  Dsu dsu(e.n_faces());
  for (int v = 0; v < g.order(); ++v)
    for (size_t i = 0; i < e.rot[v].size(); ++i) {
      int w = e.rot[v][i];
      if (v > w) continue;
      if (is_sq_edge(v, w)) continue;
      int id = e.offset[v] + static_cast<int>(i);
      dsu.unite(e.face_of_dir[id], e.face_of_dir[e.twin[id]]);
    }

  std::vector<int> roots;
  for (int f = 0; f < e.n_faces(); ++f) roots.push_back(dsu.find(f));
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  if (roots.size() != 2)
    throw error("side_map: square does not split the faces in two (host must be "
                "connected)");

  int outer_root = dsu.find(e.outer);
  SideMap sm;
  sm.face_side.assign(e.n_faces(), 0);
  for (int f = 0; f < e.n_faces(); ++f)
    sm.face_side[f] = static_cast<int8_t>(dsu.find(f) == outer_root ? 2 : 1);

  sm.vertex_side.assign(g.order(), 0);
  std::vector<int8_t> on_sq(g.order(), 0);
  for (int k = 0; k < 4; ++k) on_sq[sq[k]] = 1;
  for (int v = 0; v < g.order(); ++v) {
    if (on_sq[v]) {
      sm.vertex_side[v] = 0;
    } else if (e.rot[v].empty()) {
      sm.vertex_side[v] = 2;
    } else {
      sm.vertex_side[v] = sm.face_side[e.face_of_dir[e.offset[v]]];
    }
  }
  return sm;
}

SquareSplit split_at_square(const Embedding& e, const std::array<int, 4>& square_labels) {
  std::array<int, 4> sq;
  for (int k = 0; k < 4; ++k) {
    sq[k] = e.g.index_of(square_labels[k]);
    if (sq[k] < 0)
      throw error("split_at_square: no vertex labeled " +
                  std::to_string(square_labels[k]));
  }
  SideMap sm = side_map(e, sq);
  std::vector<int> in_labels, out_labels;
  for (int v = 0; v < e.g.order(); ++v) {
    if (sm.vertex_side[v] != 2) in_labels.push_back(e.g.labels[v]);
    if (sm.vertex_side[v] != 1) out_labels.push_back(e.g.labels[v]);
  }
  return SquareSplit{e.g.induced(in_labels), e.g.induced(out_labels)};
}

Embedding restrict_embedding(const Embedding& e, const Graph& sub) {
  std::vector<std::vector<int>> rot(sub.order());
  for (int i = 0; i < sub.order(); ++i) {
    int h = e.g.index_of(sub.labels[i]);
    if (h < 0)
      throw error("restrict_embedding: vertex " + std::to_string(sub.labels[i]) +
                  " not in host");
    for (int w : e.rot[h]) {
      int j = sub.index_of(e.g.labels[w]);
      if (j >= 0 && sub.has_edge_ix(i, j)) rot[i].push_back(j);
    }
  }
  return embedding_from_rotation(sub, std::move(rot));
}

std::string embedding_json(const Embedding& e) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json rot = nlohmann::ordered_json::object();
  for (int v = 0; v < e.g.order(); ++v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (int w : e.rot[v]) arr.push_back(e.g.labels[w]);
    rot[std::to_string(e.g.labels[v])] = std::move(arr);
  }
  j["rotation"] = std::move(rot);
  j["outer_face"] =
      e.outer >= 0 ? nlohmann::ordered_json(e.walk_labels(e.outer)) : nlohmann::ordered_json::array();
  return j.dump(2) + "\n";
}

}  // namespace pmk
