#include "pmk/median.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <set>
#include <thread>

#include <json.hpp>

#include "pmk/embedding.hpp"
#include "pmk/squares.hpp"

namespace pmk {

int thread_budget() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("PMK_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<int>(std::min<long>(v, 256));
  }
  return hw;
}

std::vector<int> median_of_triple(const Graph& g, const DistanceOracle& d, int u,
                                  int v, int w) {
  int ui = g.index_of(u), vi = g.index_of(v), wi = g.index_of(w);
  if (ui < 0 || vi < 0 || wi < 0) throw error("median_of_triple: unknown label");
  std::vector<int> du = d.row_ix(ui), dv = d.row_ix(vi), dw = d.row_ix(wi);
  if (du[vi] < 0 || du[wi] < 0 || dv[wi] < 0)
    throw error("median_of_triple: vertices in different components");
  std::vector<int> out;
  for (int x = 0; x < g.order(); ++x) {
    if (du[x] < 0) continue;
    bool in_uv = du[x] + dv[x] == du[vi];
    bool in_vw = dv[x] + dw[x] == dv[wi];
    bool in_uw = du[x] + dw[x] == du[wi];
    if (in_uv && in_vw && in_uw) out.push_back(g.labels[x]);
  }
  return out;
}

MedianVerdict is_median_oracle(const Graph& g) {
  int n = g.order();
  if (n == 0) return MedianVerdict{true, std::nullopt};
  if (!is_connected(g)) {
    auto comps = connected_components(g);
    auto smallest = std::min_element(
        comps.begin(), comps.end(),
        [](const auto& a, const auto& b) { return a.size() < b.size(); });
    MedianWitness w{MedianFailTag::Disconnected, g.to_labels(*smallest), -1,
                    "graph has " + std::to_string(comps.size()) + " components"};
    return MedianVerdict{false, std::move(w)};
  }

  DistanceOracle d(g, std::max(n, 4096));
  int words = (n + 63) / 64;
  std::vector<uint64_t> iv(static_cast<size_t>(n) * n * words, 0);
  auto bits = [&](int u, int v) {
    return iv.data() + (static_cast<size_t>(u) * n + v) * words;
  };
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v) {
      uint64_t* b = bits(u, v);
      int duv = d.dist_ix(u, v);
      for (int x = 0; x < n; ++x)
        if (d.dist_ix(u, x) + d.dist_ix(x, v) == duv) b[x >> 6] |= 1ULL << (x & 63);
      if (u != v) std::copy(b, b + words, bits(v, u));
    }

  struct Bad {
    int u = -1, v = -1, w = -1, count = -1;
  };
  int t = std::min(thread_budget(), n);
  std::vector<Bad> results(t);
  auto worker = [&](int tid) {
    Bad best;
    std::vector<uint64_t> tmp(words);
    for (int u = tid; u < n; u += t) {
      for (int v = u + 1; v < n; ++v) {
        const uint64_t* buv = bits(u, v);
        for (int w = v + 1; w < n; ++w) {
          const uint64_t* bvw = bits(v, w);
          const uint64_t* buw = bits(u, w);
          int count = 0;
          for (int k = 0; k < words; ++k)
            count += __builtin_popcountll(buv[k] & bvw[k] & buw[k]);
          if (count != 1) {
            best = Bad{u, v, w, count};
            break;
          }
        }
        if (best.u >= 0) break;
      }
      if (best.u >= 0) break;
    }
    results[tid] = best;
  };
  if (t <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) pool.emplace_back(worker, i);
    for (auto& th : pool) th.join();
  }

  Bad best;
  for (const Bad& b : results) {
    if (b.u < 0) continue;
    if (best.u < 0 || std::tie(b.u, b.v, b.w) < std::tie(best.u, best.v, best.w))
      best = b;
  }
  if (best.u < 0) return MedianVerdict{true, std::nullopt};
  MedianWitness w{MedianFailTag::BadTriple,
                  {g.labels[best.u], g.labels[best.v], g.labels[best.w]},
                  best.count,
                  best.count == 0 ? "triple has no median" : "triple has several medians"};
  return MedianVerdict{false, std::move(w)};
}

namespace {

std::vector<int> canonical_cycle(const std::vector<int>& walk) {
  size_t L = walk.size();
  std::vector<int> best;
  for (int refl = 0; refl < 2; ++refl) {
    std::vector<int> w = walk;
    if (refl) std::reverse(w.begin(), w.end());
    for (size_t r = 0; r < L; ++r) {
      std::vector<int> cand(L);
      for (size_t i = 0; i < L; ++i) cand[i] = w[(r + i) % L];
      if (best.empty() || cand < best) best = cand;
    }
  }
  return best;
}

bool verify_isometric(const DistanceOracle& d, const std::vector<int>& cyc) {
  int L = static_cast<int>(cyc.size());
  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j) {
      int cd = std::min(j - i, L - (j - i));
      if (d.dist_ix(cyc[i], cyc[j]) != cd) return false;
    }
  return true;
}

// Grows the two arcs of a candidate 2k-cycle from seed edge (u,v) toward the
// opposite vertex w, pruning by exact distance requirements; emit() gets each
// verified cycle and may stop the search by returning false.
struct CycleSearch {
  const Graph& g;
  const DistanceOracle& d;
  int k;
  int u, v, w;
  std::vector<int> left, right;  // interior vertices
  std::vector<int8_t> used;
  std::function<bool(const std::vector<int>&)> emit;
  bool stopped = false;

  CycleSearch(const Graph& g_, const DistanceOracle& d_)
      : g(g_), d(d_), used(g_.order(), 0) {}

  bool deliver() {
    // cycle order: u, v, right..., w, left-reversed...
    std::vector<int> cyc;
    cyc.push_back(u);
    cyc.push_back(v);
    for (int x : right) cyc.push_back(x);
    cyc.push_back(w);
    for (auto it = left.rbegin(); it != left.rend(); ++it) cyc.push_back(*it);
    if (!verify_isometric(d, cyc)) return true;
    return emit(cyc);
  }

  void grow_right(size_t i) {
    if (stopped) return;
    if (i == static_cast<size_t>(k - 2)) {
      int tail = right.empty() ? v : right.back();
      if (g.has_edge_ix(tail, w))
        if (!deliver()) stopped = true;
      return;
    }
    int tail = right.empty() ? v : right.back();
    for (int x : g.adj[tail]) {
      if (used[x]) continue;
      int li = static_cast<int>(i) + 1;
      if (d.dist_ix(x, v) != li || d.dist_ix(x, u) != li + 1 ||
          d.dist_ix(x, w) != k - 1 - li)
        continue;
      used[x] = 1;
      right.push_back(x);
      grow_right(i + 1);
      right.pop_back();
      used[x] = 0;
      if (stopped) return;
    }
  }

  void grow_left(size_t i) {
    if (stopped) return;
    if (i == static_cast<size_t>(k - 1)) {
      int tail = left.empty() ? u : left.back();
      if (g.has_edge_ix(tail, w)) grow_right(0);
      return;
    }
    int tail = left.empty() ? u : left.back();
    for (int x : g.adj[tail]) {
      if (used[x]) continue;
      int li = static_cast<int>(i) + 1;
      if (d.dist_ix(x, u) != li || d.dist_ix(x, v) != li + 1 ||
          d.dist_ix(x, w) != k - li)
        continue;
      used[x] = 1;
      left.push_back(x);
      grow_left(i + 1);
      left.pop_back();
      used[x] = 0;
      if (stopped) return;
    }
  }

  // all cycles through directed edge (u,v) with opposite vertex w
  void run(int u_, int v_, int w_, int k_) {
    u = u_;
    v = v_;
    w = w_;
    k = k_;
    used[u] = used[v] = used[w] = 1;
    left.clear();
    right.clear();
    grow_left(0);
    used[u] = used[v] = used[w] = 0;
  }
};

void for_each_isometric_cycle(const Graph& g, const DistanceOracle& d, int min_len,
                              int max_len,
                              const std::function<bool(const std::vector<int>&)>& emit) {
  int n = g.order();
  if (n < 4) return;
  int kmax = max_len > 0 ? max_len / 2 : n / 2;
  int kmin = std::max(2, min_len / 2);
  if (kmax < kmin) return;
  CycleSearch cs(g, d);
  cs.emit = emit;
  for (int u = 0; u < n && !cs.stopped; ++u) {
    std::vector<int> du = d.row_ix(u);
    for (int v : g.adj[u]) {
      if (cs.stopped) break;
      std::vector<int> dv = d.row_ix(v);
      for (int w = 0; w < n && !cs.stopped; ++w) {
        int k = du[w];
        if (k < kmin || k > kmax) continue;
        if (dv[w] != k - 1) continue;
        cs.run(u, v, w, k);
      }
    }
  }
}

}  // namespace

std::vector<IsoCycle> isometric_cycles(const Graph& g, const DistanceOracle& d,
                                       int max_len) {
  std::set<std::vector<int>> seen;
  for_each_isometric_cycle(g, d, 4, max_len, [&](const std::vector<int>& cyc) {
    seen.insert(canonical_cycle(cyc));
    return true;
  });
  std::vector<IsoCycle> out;
  out.reserve(seen.size());
  for (const auto& c : seen) {
    IsoCycle ic;
    ic.walk.reserve(c.size());
    for (int ix : c) ic.walk.push_back(g.labels[ix]);
    out.push_back(std::move(ic));
  }
  std::sort(out.begin(), out.end(), [](const IsoCycle& a, const IsoCycle& b) {
    if (a.walk.size() != b.walk.size()) return a.walk.size() < b.walk.size();
    return a.walk < b.walk;
  });
  return out;
}

std::optional<IsoCycle> find_long_isometric_cycle(const Graph& g,
                                                  const DistanceOracle& d,
                                                  int min_len) {
  std::optional<IsoCycle> found;
  for_each_isometric_cycle(g, d, min_len, 0, [&](const std::vector<int>& cyc) {
    IsoCycle ic;
    for (int ix : cyc) ic.walk.push_back(g.labels[ix]);
    found = std::move(ic);
    return false;
  });
  return found;
}

InferringCheck is_c6_q3_inferring(const Graph& g, const DistanceOracle& d) {
  std::vector<IsoCycle> sixes;
  for (const IsoCycle& c : isometric_cycles(g, d, 6))
    if (c.length() == 6) sixes.push_back(c);
  for (const IsoCycle& c : sixes) {
    std::array<int, 6> ix;
    for (int i = 0; i < 6; ++i) ix[i] = g.index_of(c.walk[i]);
    auto on_cycle = [&](int x) {
      return std::find(ix.begin(), ix.end(), x) != ix.end();
    };
    // A completing cube has one apex over each color class of the hexagon;
    // the two apexes sit at distance three from each other, so no edge
    // between them is required (or generally present).
    bool completed = false;
    for (int a : g.adj[ix[0]]) {
      if (on_cycle(a) || !g.has_edge_ix(a, ix[2]) || !g.has_edge_ix(a, ix[4]))
        continue;
      for (int b : g.adj[ix[1]]) {
        if (b == a || on_cycle(b)) continue;
        if (g.has_edge_ix(b, ix[3]) && g.has_edge_ix(b, ix[5])) {
          completed = true;
          break;
        }
      }
      if (completed) break;
    }
    if (!completed) return InferringCheck{false, c.walk};
  }
  return InferringCheck{};
}

InferringCheck is_q3minus_q3_inferring(const Graph& g) {
  int n = g.order();
  // Q3 minus a vertex: corner a with neighbors x,y,z and far corners
  // p ~ x,y; q ~ y,z; r ~ z,x. The completion vertex must close p,q,r.
  for (int a = 0; a < n; ++a) {
    const auto& na = g.adj[a];
    int da = static_cast<int>(na.size());
    if (da < 3) continue;
    for (int xi = 0; xi < da; ++xi)
      for (int yi = xi + 1; yi < da; ++yi)
        for (int zi = yi + 1; zi < da; ++zi) {
          int x = na[xi], y = na[yi], z = na[zi];
          for (int p : g.adj[x]) {
            if (p == a || p == y || p == z || !g.has_edge_ix(p, y)) continue;
            for (int q : g.adj[y]) {
              if (q == a || q == x || q == z || q == p || !g.has_edge_ix(q, z))
                continue;
              for (int r : g.adj[z]) {
                if (r == a || r == x || r == y || r == p || r == q ||
                    !g.has_edge_ix(r, x))
                  continue;
                bool completed = false;
                for (int t : g.adj[p]) {
                  if (t == a || t == x || t == y || t == z || t == q || t == r)
                    continue;
                  if (g.has_edge_ix(t, q) && g.has_edge_ix(t, r)) {
                    completed = true;
                    break;
                  }
                }
                if (!completed) {
                  std::vector<int> wit = {g.labels[a], g.labels[x], g.labels[y],
                                          g.labels[z], g.labels[p], g.labels[q],
                                          g.labels[r]};
                  return InferringCheck{false, std::move(wit)};
                }
              }
            }
          }
        }
  }
  return InferringCheck{};
}

std::optional<std::array<int, 5>> contains_k23(const Graph& g) {
  return scan_squares(g, true).k23;
}

namespace {

// Any closed odd walk contains a simple odd cycle; peel repeats.
std::vector<int> simple_odd_cycle_from_walk(std::vector<int> walk) {
  for (;;) {
    bool spliced = false;
    std::vector<int> at;
    at.assign(1 + *std::max_element(walk.begin(), walk.end()), -1);
    for (size_t i = 0; i < walk.size(); ++i) {
      int v = walk[i];
      if (at[v] >= 0) {
        size_t a = static_cast<size_t>(at[v]);
        std::vector<int> loop(walk.begin() + a, walk.begin() + i);
        std::vector<int> rest(walk.begin(), walk.begin() + a);
        rest.insert(rest.end(), walk.begin() + i, walk.end());
        walk = (loop.size() % 2 == 1) ? loop : rest;
        spliced = true;
        break;
      }
      at[v] = static_cast<int>(i);
    }
    if (!spliced) return walk;
  }
}

std::vector<int> bfs_path(const Graph& g, int a, int b) {
  std::vector<int> par(g.order(), -2);
  std::deque<int> q{a};
  par[a] = -1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    if (u == b) break;
    for (int v : g.adj[u])
      if (par[v] == -2) {
        par[v] = u;
        q.push_back(v);
      }
  }
  std::vector<int> path;
  for (int x = b; x != -1; x = par[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

// Shrinks a simple odd cycle to an isometric one by splicing shortest paths
// across any violating pair. The odd piece is kept each round.
std::vector<int> shrink_to_isometric_odd(const Graph& g, const DistanceOracle& d,
                                         std::vector<int> cyc) {
  for (;;) {
    int L = static_cast<int>(cyc.size());
    int bi = -1, bj = -1;
    for (int i = 0; i < L && bi < 0; ++i)
      for (int j = i + 1; j < L; ++j) {
        int cd = std::min(j - i, L - (j - i));
        if (d.dist_ix(cyc[i], cyc[j]) < cd) {
          bi = i;
          bj = j;
          break;
        }
      }
    if (bi < 0) return cyc;
    std::vector<int> path = bfs_path(g, cyc[bi], cyc[bj]);
    // arc bi..bj plus reversed path, and arc bj..bi plus path
    std::vector<int> w1(cyc.begin() + bi, cyc.begin() + bj);
    for (int t = static_cast<int>(path.size()) - 1; t >= 1; --t) w1.push_back(path[t]);
    std::vector<int> w2(cyc.begin() + bj, cyc.end());
    w2.insert(w2.end(), cyc.begin(), cyc.begin() + bi);
    for (size_t t = 0; t + 1 < path.size(); ++t) w2.push_back(path[t]);
    std::vector<int> pick = (w1.size() % 2 == 1) ? w1 : w2;
    cyc = simple_odd_cycle_from_walk(std::move(pick));
  }
}

MedianWitness odd_cycle_witness(const Graph& g, const std::vector<int>& odd_ix) {
  DistanceOracle d(g);
  std::vector<int> iso = shrink_to_isometric_odd(g, d, odd_ix);
  MedianWitness w{MedianFailTag::BadIsometricCycle, g.to_labels(iso), -1,
                  "odd isometric cycle (graph is not bipartite)"};
  return w;
}

}  // namespace

MedianVerdict is_median_planar(const Graph& g) {
  PlanarCheck pc = planar_embed(g);
  if (!pc.planar()) throw not_planar_error(pc.kuratowski);
  if (g.order() == 0) return MedianVerdict{true, std::nullopt};

  if (!is_connected(g)) {
    auto comps = connected_components(g);
    auto smallest = std::min_element(
        comps.begin(), comps.end(),
        [](const auto& a, const auto& b) { return a.size() < b.size(); });
    MedianWitness w{MedianFailTag::Disconnected, g.to_labels(*smallest), -1,
                    "graph has " + std::to_string(comps.size()) + " components"};
    return MedianVerdict{false, std::move(w)};
  }

  if (auto k23 = contains_k23(g)) {
    MedianWitness w{MedianFailTag::HasK23,
                    std::vector<int>(k23->begin(), k23->end()), -1,
                    "first two vertices are the degree-3 side"};
    return MedianVerdict{false, std::move(w)};
  }

  BipartiteCheck bc = check_bipartite(g);
  if (!bc.coloring) return MedianVerdict{false, odd_cycle_witness(g, bc.odd_cycle)};

  DistanceOracle d(g, std::max(g.order(), 4096));
  if (auto longc = find_long_isometric_cycle(g, d, 8)) {
    MedianWitness w{MedianFailTag::BadIsometricCycle, longc->walk, -1,
                    "isometric cycle of length " + std::to_string(longc->length())};
    return MedianVerdict{false, std::move(w)};
  }

  InferringCheck inf = is_c6_q3_inferring(g, d);
  if (!inf.ok) {
    MedianWitness w{MedianFailTag::NotC6Q3Inferring, inf.counterexample, -1,
                    "isometric 6-cycle with no cube completion"};
    return MedianVerdict{false, std::move(w)};
  }
  return MedianVerdict{true, std::nullopt};
}

bool is_cube_free_median_planar(const Graph& g) {
  PlanarCheck pc = planar_embed(g);
  if (!pc.planar()) throw not_planar_error(pc.kuratowski);
  if (g.order() == 0) return true;
  if (!is_connected(g)) return false;
  if (contains_k23(g)) return false;
  if (!is_bipartite(g)) return false;
  DistanceOracle d(g, std::max(g.order(), 4096));
  return !find_long_isometric_cycle(g, d, 6).has_value();
}

Graph convex_hull(const Graph& g, const DistanceOracle& d,
                  const std::vector<int>& seed_labels) {
  if (seed_labels.empty()) return g.induced({});
  std::vector<int> set_ix;
  for (int lab : seed_labels) {
    int ix = g.index_of(lab);
    if (ix < 0) throw error("convex_hull: no vertex labeled " + std::to_string(lab));
    set_ix.push_back(ix);
  }
  std::sort(set_ix.begin(), set_ix.end());
  set_ix.erase(std::unique(set_ix.begin(), set_ix.end()), set_ix.end());
  for (size_t i = 1; i < set_ix.size(); ++i)
    if (d.dist_ix(set_ix[0], set_ix[i]) < 0)
      throw error("convex_hull: seed spans multiple components");

  std::vector<int8_t> in(g.order(), 0);
  for (int ix : set_ix) in[ix] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> rows(set_ix.size());
    for (size_t i = 0; i < set_ix.size(); ++i) rows[i] = d.row_ix(set_ix[i]);
    for (size_t i = 0; i < set_ix.size(); ++i)
      for (size_t j = i + 1; j < set_ix.size(); ++j) {
        int duv = rows[i][set_ix[j]];
        for (int x = 0; x < g.order(); ++x)
          if (!in[x] && rows[i][x] + rows[j][x] == duv) {
            in[x] = 1;
            grew = true;
          }
      }
    if (grew) {
      set_ix.clear();
      for (int x = 0; x < g.order(); ++x)
        if (in[x]) set_ix.push_back(x);
    }
  }
  return g.induced(g.to_labels(set_ix));
}

bool is_convex(const Graph& g, const DistanceOracle& d,
               const std::vector<int>& subgraph_labels) {
  std::vector<int> ixs;
  for (int lab : subgraph_labels) {
    int ix = g.index_of(lab);
    if (ix < 0) throw error("is_convex: no vertex labeled " + std::to_string(lab));
    ixs.push_back(ix);
  }
  std::sort(ixs.begin(), ixs.end());
  ixs.erase(std::unique(ixs.begin(), ixs.end()), ixs.end());
  std::vector<int8_t> in(g.order(), 0);
  for (int ix : ixs) in[ix] = 1;
  for (size_t i = 0; i < ixs.size(); ++i) {
    std::vector<int> du = d.row_ix(ixs[i]);
    for (size_t j = i + 1; j < ixs.size(); ++j) {
      int duv = du[ixs[j]];
      if (duv < 0) return false;
      std::vector<int> dv = d.row_ix(ixs[j]);
      for (int x = 0; x < g.order(); ++x)
        if (!in[x] && du[x] >= 0 && du[x] + dv[x] == duv) return false;
    }
  }
  return true;
}

std::string witness_json(const MedianWitness& w) {
  nlohmann::ordered_json j;
  const char* kind = "unknown";
  switch (w.tag) {
    case MedianFailTag::Disconnected: kind = "disconnected"; break;
    case MedianFailTag::HasK23: kind = "k23"; break;
    case MedianFailTag::BadIsometricCycle: kind = "iso_cycle"; break;
    case MedianFailTag::NotC6Q3Inferring: kind = "c6_no_cube"; break;
    case MedianFailTag::BadTriple: kind = "triple"; break;
  }
  j["kind"] = kind;
  j["vertices"] = w.vertices;
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  if (w.tag == MedianFailTag::HasK23 && w.vertices.size() == 5) {
    for (int hub = 0; hub < 2; ++hub)
      for (int leg = 2; leg < 5; ++leg)
        edges.push_back({w.vertices[hub], w.vertices[leg]});
  } else if (w.tag == MedianFailTag::BadIsometricCycle ||
             w.tag == MedianFailTag::NotC6Q3Inferring) {
    for (size_t i = 0; i < w.vertices.size(); ++i)
      edges.push_back({w.vertices[i], w.vertices[(i + 1) % w.vertices.size()]});
  }
  j["edges"] = std::move(edges);
  if (w.median_count >= 0) j["median_count"] = w.median_count;
  if (!w.note.empty()) j["note"] = w.note;
  return j.dump(2) + "\n";
}

}  // namespace pmk
