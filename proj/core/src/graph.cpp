#include "pmk/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace pmk {

int Graph::index_of(int label) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it == labels.end() || *it != label) return -1;
  return static_cast<int>(it - labels.begin());
}

bool Graph::has_edge_ix(int u, int v) const {
  const auto& a = adj[u];
  return std::binary_search(a.begin(), a.end(), v);
}

bool Graph::has_edge(int ulabel, int vlabel) const {
  int u = index_of(ulabel), v = index_of(vlabel);
  if (u < 0 || v < 0) return false;
  return has_edge_ix(u, v);
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<size_t>(m));
  for (int u = 0; u < order(); ++u)
    for (int v : adj[u])
      if (u < v) out.emplace_back(labels[u], labels[v]);
  return out;
}

std::vector<int> Graph::neighbors(int label) const {
  int u = index_of(label);
  if (u < 0) throw error("no vertex labeled " + std::to_string(label));
  std::vector<int> out;
  out.reserve(adj[u].size());
  for (int v : adj[u]) out.push_back(labels[v]);
  return out;
}

Graph Graph::induced(const std::vector<int>& keep_labels) const {
  std::vector<int> keep = keep_labels;
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

  Graph h;
  h.labels.reserve(keep.size());
  std::vector<int> old_ix;
  old_ix.reserve(keep.size());
  for (int lab : keep) {
    int ix = index_of(lab);
    if (ix < 0) throw error("induced: no vertex labeled " + std::to_string(lab));
    h.labels.push_back(lab);
    old_ix.push_back(ix);
  }
  // old_ix ascends (labels sorted, index order == label order), so membership
  // can be resolved by binary search without touching all of the host
  h.adj.resize(h.labels.size());
  for (size_t i = 0; i < old_ix.size(); ++i) {
    for (int w : adj[old_ix[i]]) {
      auto it = std::lower_bound(old_ix.begin(), old_ix.end(), w);
      if (it != old_ix.end() && *it == w)
        h.adj[i].push_back(static_cast<int>(it - old_ix.begin()));
    }
    h.m += static_cast<long long>(h.adj[i].size());
  }
  h.m /= 2;
  return h;
}

std::vector<int> Graph::to_labels(const std::vector<int>& ixs) const {
  std::vector<int> out;
  out.reserve(ixs.size());
  for (int ix : ixs) out.push_back(labels[ix]);
  return out;
}

Graph graph_from_edges(const std::vector<std::pair<int, int>>& edges,
                       const std::vector<int>& isolated) {
  for (auto [u, v] : edges)
    if (u == v) throw error("self-loop at vertex " + std::to_string(u));

  std::vector<int> labels;
  labels.reserve(edges.size() * 2 + isolated.size());
  for (auto [u, v] : edges) {
    labels.push_back(u);
    labels.push_back(v);
  }
  labels.insert(labels.end(), isolated.begin(), isolated.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  Graph g;
  g.labels = std::move(labels);
  g.adj.resize(g.labels.size());
  for (auto [u, v] : edges) {
    int ui = g.index_of(u), vi = g.index_of(v);
    g.adj[ui].push_back(vi);
    g.adj[vi].push_back(ui);
  }
  for (auto& a : g.adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    g.m += static_cast<long long>(a.size());
  }
  g.m /= 2;
  return g;
}

static void bfs_fill(const Graph& g, int src, std::vector<int>& dist) {
  dist.assign(g.order(), -1);
  std::deque<int> q;
  dist[src] = 0;
  q.push_back(src);
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : g.adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
  }
}

bool is_connected(const Graph& g) {
  if (g.order() == 0) return true;
  std::vector<int> dist;
  bfs_fill(g, 0, dist);
  return std::find(dist.begin(), dist.end(), -1) == dist.end();
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<std::vector<int>> comps;
  std::vector<int8_t> seen(g.order(), 0);
  for (int s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    std::vector<int> comp{s};
    seen[s] = 1;
    for (size_t head = 0; head < comp.size(); ++head)
      for (int v : g.adj[comp[head]])
        if (!seen[v]) {
          seen[v] = 1;
          comp.push_back(v);
        }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

BipartiteCheck check_bipartite(const Graph& g) {
  int n = g.order();
  std::vector<int8_t> color(n, -1);
  std::vector<int> parent(n, -1), depth(n, 0);
  for (int s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int v : g.adj[u]) {
        if (color[v] < 0) {
          color[v] = static_cast<int8_t>(1 - color[u]);
          parent[v] = u;
          depth[v] = depth[u] + 1;
          q.push_back(v);
        } else if (color[v] == color[u]) {
          // climb to the common ancestor; the two tree paths plus edge uv
          // close an odd cycle
          std::vector<int> pu{u}, pv{v};
          int x = u, y = v;
          while (depth[x] > depth[y]) pu.push_back(x = parent[x]);
          while (depth[y] > depth[x]) pv.push_back(y = parent[y]);
          while (x != y) {
            pu.push_back(x = parent[x]);
            pv.push_back(y = parent[y]);
          }
          std::vector<int> cyc(pu.begin(), pu.end());  // u .. x
          for (auto it = pv.rbegin() + 1; it != pv.rend(); ++it) cyc.push_back(*it);
          return BipartiteCheck{std::nullopt, std::move(cyc)};
        }
      }
    }
  }
  return BipartiteCheck{std::move(color), {}};
}

bool is_bipartite(const Graph& g) { return check_bipartite(g).coloring.has_value(); }

bool is_tree(const Graph& g) {
  return g.order() > 0 && is_connected(g) && g.size() == g.order() - 1;
}

DistanceOracle::DistanceOracle(const Graph& g, int table_limit)
    : g_(&g), n_(g.order()), tabled_(g.order() <= table_limit) {
  if (tabled_) {
    tab_.assign(static_cast<size_t>(n_) * n_, -1);
    std::vector<int> row;
    for (int s = 0; s < n_; ++s) {
      bfs_fill(*g_, s, row);
      for (int v = 0; v < n_; ++v)
        tab_[static_cast<size_t>(s) * n_ + v] = static_cast<int16_t>(row[v]);
    }
  }
}

void DistanceOracle::fill_row(int src, std::vector<int>& out) const {
  bfs_fill(*g_, src, out);
}

int DistanceOracle::dist_ix(int u, int v) const {
  if (tabled_) return tab_[static_cast<size_t>(u) * n_ + v];
  if (row_src_ != u) {
    fill_row(u, row_);
    row_src_ = u;
  }
  return row_[v];
}

int DistanceOracle::dist(int ulabel, int vlabel) const {
  int u = g_->index_of(ulabel), v = g_->index_of(vlabel);
  if (u < 0 || v < 0) throw error("distance query on unknown label");
  return dist_ix(u, v);
}

std::vector<int> DistanceOracle::row_ix(int src) const {
  if (tabled_) {
    std::vector<int> out(n_);
    for (int v = 0; v < n_; ++v) out[v] = tab_[static_cast<size_t>(src) * n_ + v];
    return out;
  }
  std::vector<int> out;
  fill_row(src, out);
  return out;
}

std::vector<int> interval_ix(const Graph& g, const DistanceOracle& d, int u, int v) {
  std::vector<int> du = d.row_ix(u), dv = d.row_ix(v);
  int duv = du[v];
  if (duv < 0) throw error("interval endpoints lie in different components");
  std::vector<int> out;
  for (int x = 0; x < g.order(); ++x)
    if (du[x] >= 0 && dv[x] >= 0 && du[x] + dv[x] == duv) out.push_back(x);
  return out;
}

namespace {

// color refinement over the disjoint union so classes are comparable across
// the two graphs
void joint_colors(const Graph& a, const Graph& b, std::vector<int>& ca,
                  std::vector<int>& cb) {
  int na = a.order(), nb = b.order(), n = na + nb;
  auto deg = [&](int u) { return u < na ? a.degree_ix(u) : b.degree_ix(u - na); };
  auto nbrs = [&](int u) -> const std::vector<int>& {
    return u < na ? a.adj[u] : b.adj[u - na];
  };
  std::vector<int> col(n);
  for (int u = 0; u < n; ++u) col[u] = deg(u);
  int classes = -1;
  for (int round = 0; round < n + 1; ++round) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(n);
    for (int u = 0; u < n; ++u) {
      std::vector<int> sig;
      sig.reserve(nbrs(u).size() + 1);
      int base = u < na ? 0 : na;
      for (int v : nbrs(u)) sig.push_back(col[base + v]);
      std::sort(sig.begin(), sig.end());
      sig.push_back(col[u]);
      next[u] = ids.emplace(std::move(sig), static_cast<int>(ids.size())).first->second;
    }
    col = std::move(next);
    int now = static_cast<int>(ids.size());
    if (now == classes) break;
    classes = now;
  }
  ca.assign(col.begin(), col.begin() + na);
  cb.assign(col.begin() + na, col.end());
}

bool extend_iso(const Graph& a, const Graph& b, const std::vector<int>& order,
                size_t pos, std::vector<int>& map_ab, std::vector<int8_t>& used,
                const std::vector<int>& ca, const std::vector<int>& cb) {
  if (pos == order.size()) return true;
  int u = order[pos];
  for (int w = 0; w < b.order(); ++w) {
    if (used[w] || cb[w] != ca[u]) continue;
    bool ok = true;
    for (size_t i = 0; i < pos && ok; ++i) {
      int p = order[i];
      if (a.has_edge_ix(u, p) != b.has_edge_ix(w, map_ab[p])) ok = false;
    }
    if (!ok) continue;
    map_ab[u] = w;
    used[w] = 1;
    if (extend_iso(a, b, order, pos + 1, map_ab, used, ca, cb)) return true;
    used[w] = 0;
    map_ab[u] = -1;
  }
  return false;
}

}  // namespace

std::optional<std::vector<std::pair<int, int>>> are_isomorphic(const Graph& a,
                                                               const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return std::nullopt;
  if (a.order() == 0) return std::vector<std::pair<int, int>>{};

  std::vector<int> ca, cb;
  joint_colors(a, b, ca, cb);
  std::vector<int> ha = ca, hb = cb;
  std::sort(ha.begin(), ha.end());
  std::sort(hb.begin(), hb.end());
  if (ha != hb) return std::nullopt;

  // fill rare color classes first
  std::vector<int> class_size(*std::max_element(ca.begin(), ca.end()) + 1, 0);
  for (int c : ca) ++class_size[c];
  std::vector<int> order(a.order());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (class_size[ca[x]] != class_size[ca[y]]) return class_size[ca[x]] < class_size[ca[y]];
    if (ca[x] != ca[y]) return ca[x] < ca[y];
    return x < y;
  });

  std::vector<int> map_ab(a.order(), -1);
  std::vector<int8_t> used(b.order(), 0);
  if (!extend_iso(a, b, order, 0, map_ab, used, ca, cb)) return std::nullopt;

  std::vector<std::pair<int, int>> out;
  out.reserve(a.order());
  for (int u = 0; u < a.order(); ++u) out.emplace_back(a.labels[u], b.labels[map_ab[u]]);
  return out;
}

}  // namespace pmk
