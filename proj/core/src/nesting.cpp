#include "pmk/nesting.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include <json.hpp>

namespace pmk {

namespace {

void check_same_graph(const Graph& g, const Embedding& e) {
  if (g.labels != e.g.labels || g.adj != e.g.adj)
    throw error("embedding does not belong to this graph");
}

std::array<int, 4> square_ix(const Graph& g, const Square& s) {
  std::array<int, 4> ix{};
  for (int k = 0; k < 4; ++k) ix[k] = g.index_of(s.v[k]);
  return ix;
}

// One square's side classification: the face set of whichever side of the
// 4-edge dual cut exhausted first, plus which side is the inside.
struct SideScan {
  std::vector<int> small;  // faces of the first-exhausted side, sorted
  bool small_is_inside = false;
  int inside_size = 0;
  int seed_in = -1;  // an inside face touching the square
};

const char* kStraddleMsg =
    "nesting: straddling squares (host must be triangle- and K2,3-free)";

}  // namespace

SquareOrder square_order(const Graph& g, const Embedding& e) {
  check_same_graph(g, e);
  SquareOrder o;
  o.squares = enumerate_squares(g);
  int S = static_cast<int>(o.squares.size());
  std::vector<std::vector<int8_t>> side(S);
  for (int i = 0; i < S; ++i)
    side[i] = side_map(e, square_ix(e.g, o.squares[i])).vertex_side;
  for (int i = 0; i < S; ++i)
    for (int j = 0; j < S; ++j) {
      bool in = true;
      for (int lab : o.squares[j].v)
        if (side[i][e.g.index_of(lab)] == 2) {
          in = false;
          break;
        }
      if (in) o.contains.emplace_back(i, j);
    }
  std::set<std::pair<int, int>> rel(o.contains.begin(), o.contains.end());
  for (auto [i, j] : o.contains)
    if (i != j && rel.count({j, i}))
      throw error("square order is not antisymmetric (corrupt embedding)");
  return o;
}

NestingForest nesting_forest(const Graph& g, const Embedding& e) {
  check_same_graph(g, e);
  int n = g.order();
  if (n > 0 && !is_connected(g))
    throw error("nesting forest needs a connected host");

  std::vector<Square> squares = enumerate_squares(g);
  int S = static_cast<int>(squares.size());
  int F = e.n_faces();

  std::vector<int8_t> on_square(n, 0);
  for (const Square& s : squares)
    for (int lab : s.v) on_square[g.index_of(lab)] = 1;

  int D = static_cast<int>(e.twin.size());
  std::vector<std::vector<int>> face_dirs(F);
  for (int d = 0; d < D; ++d) face_dirs[e.face_of_dir[d]].push_back(d);

  // Classify each square's sides by flooding both banks of its dual cut in
  // lockstep and keeping the bank that exhausts first. The work per square is
  // proportional to the smaller side, which keeps shallowly nested hosts
  // near-linear overall.
  std::vector<SideScan> scans(S);
  std::vector<int> stamp(F, -1);
  std::vector<int8_t> stamp_side(F, 0);
  for (int si = 0; si < S; ++si) {
    std::array<int, 4> ix = square_ix(g, squares[si]);
    std::array<int, 8> cut{};
    for (int k = 0; k < 4; ++k) {
      int d = e.dir_id(ix[k], ix[(k + 1) % 4]);
      cut[2 * k] = d;
      cut[2 * k + 1] = e.twin[d];
    }
    std::sort(cut.begin(), cut.end());
    auto blocked = [&](int d) {
      return std::binary_search(cut.begin(), cut.end(), d);
    };

    int d01 = e.dir_id(ix[0], ix[1]);
    std::array<int, 2> seed = {e.face_of_dir[d01], e.face_of_dir[e.twin[d01]]};
    if (seed[0] == seed[1])
      throw error("nesting: square fails to separate its faces (corrupt embedding)");

    std::array<std::queue<int>, 2> q;
    std::array<std::vector<int>, 2> seen;
    auto visit = [&](int side, int fc) {
      if (stamp[fc] == si) {
        if (stamp_side[fc] != side)
          throw error("nesting: square fails to separate its faces (corrupt embedding)");
        return;
      }
      stamp[fc] = si;
      stamp_side[fc] = static_cast<int8_t>(side);
      q[side].push(fc);
      seen[side].push_back(fc);
    };
    visit(0, seed[0]);
    visit(1, seed[1]);
    int done = -1;
    while (done < 0)
      for (int side = 0; side < 2; ++side) {
        if (q[side].empty()) {
          done = side;
          break;
        }
        int fc = q[side].front();
        q[side].pop();
        for (int d : face_dirs[fc]) {
          if (blocked(d)) continue;
          visit(side, e.face_of_dir[e.twin[d]]);
        }
      }

    SideScan& sc = scans[si];
    sc.small = std::move(seen[done]);
    std::sort(sc.small.begin(), sc.small.end());
    bool outer_in_small = stamp[e.outer] == si && stamp_side[e.outer] == done;
    sc.small_is_inside = !outer_in_small;
    sc.inside_size = sc.small_is_inside ? static_cast<int>(sc.small.size())
                                        : F - static_cast<int>(sc.small.size());
    sc.seed_in = sc.small_is_inside == (done == 0) ? seed[0] : seed[1];
  }

  // Small squares carry their inside face set explicitly; the rest ("big",
  // their inside holds the outer face's complement side) form one nested
  // chain, since any two of them enclose more than half the faces each.
  std::vector<int> small_order, big_order;
  for (int si = 0; si < S; ++si)
    (scans[si].small_is_inside ? small_order : big_order).push_back(si);
  std::sort(small_order.begin(), small_order.end(), [&](int a, int b) {
    return scans[a].inside_size < scans[b].inside_size;
  });
  std::sort(big_order.begin(), big_order.end(), [&](int a, int b) {
    return scans[a].inside_size > scans[b].inside_size;
  });

  auto outside_big = [&](int bi, int fc) {  // face on the outside of big square bi
    return std::binary_search(scans[bi].small.begin(), scans[bi].small.end(), fc);
  };
  for (size_t k = 1; k < big_order.size(); ++k) {
    if (scans[big_order[k - 1]].inside_size == scans[big_order[k]].inside_size)
      throw error(kStraddleMsg);
    if (outside_big(big_order[k - 1], scans[big_order[k]].seed_in))
      throw error(kStraddleMsg);
  }

  std::vector<std::vector<int>> facelist(F);  // small squares per face, size-ascending
  for (int si : small_order)
    for (int fc : scans[si].small) facelist[fc].push_back(si);
  for (int fc = 0; fc < F; ++fc)
    for (size_t k = 1; k < facelist[fc].size(); ++k)
      if (scans[facelist[fc][k - 1]].inside_size == scans[facelist[fc][k]].inside_size)
        throw error(kStraddleMsg);

  // Successor of square si in the (strictly size-sorted) chain of squares
  // containing face fc: the innermost proper container seen from that face.
  auto successor_at = [&](int fc, int si) {
    const auto& lst = facelist[fc];
    auto it = std::upper_bound(lst.begin(), lst.end(), si, [&](int a, int b) {
      return scans[a].inside_size < scans[b].inside_size;
    });
    return it == lst.end() ? -1 : *it;
  };
  auto innermost_big_containing = [&](int fc) {
    for (int k = static_cast<int>(big_order.size()) - 1; k >= 0; --k)
      if (!outside_big(big_order[k], fc)) return big_order[k];
    return -1;
  };

  std::vector<int> parent_sq(S, -1);
  for (int si : small_order) {
    int succ = successor_at(scans[si].seed_in, si);
    for (int fc : scans[si].small)
      if (successor_at(fc, si) != succ) throw error(kStraddleMsg);
    parent_sq[si] = succ >= 0 ? succ : innermost_big_containing(scans[si].seed_in);
  }
  for (size_t k = 1; k < big_order.size(); ++k)
    parent_sq[big_order[k]] = big_order[k - 1];

  // W vertices: any incident face identifies the innermost enclosing square.
  std::vector<std::pair<int, int>> wverts;  // (label, square parent or -1)
  for (int v = 0; v < n; ++v) {
    if (on_square[v]) continue;
    int p = -1;
    if (!e.rot[v].empty()) {
      int fv = e.face_of_dir[e.offset[v]];
      p = facelist[fv].empty() ? innermost_big_containing(fv) : facelist[fv][0];
    }
    wverts.emplace_back(g.labels[v], p);
  }
  std::sort(wverts.begin(), wverts.end());

  NestingForest f;
  f.nodes.resize(S + wverts.size());
  for (int si = 0; si < S; ++si) {
    ForestNode& nd = f.nodes[si];
    nd.kind = ForestNode::Kind::Square;
    nd.square = squares[si];
    nd.parent = parent_sq[si];
  }
  for (size_t k = 0; k < wverts.size(); ++k) {
    ForestNode& nd = f.nodes[S + k];
    nd.kind = ForestNode::Kind::Vertex;
    nd.vertex = wverts[k].first;
    nd.parent = wverts[k].second;
  }
  for (int id = 0; id < static_cast<int>(f.nodes.size()); ++id) {
    int p = f.nodes[id].parent;
    if (p < 0)
      f.roots.push_back(id);
    else
      f.nodes[p].children.push_back(id);
  }

  std::queue<int> bfs;
  std::vector<int8_t> leveled(f.nodes.size(), 0);
  for (int r : f.roots) {
    f.nodes[r].level = 0;
    leveled[r] = 1;
    bfs.push(r);
  }
  while (!bfs.empty()) {
    int id = bfs.front();
    bfs.pop();
    f.max_level = std::max(f.max_level, f.nodes[id].level);
    for (int c : f.nodes[id].children) {
      f.nodes[c].level = f.nodes[id].level + 1;
      leveled[c] = 1;
      bfs.push(c);
    }
  }
  if (std::find(leveled.begin(), leveled.end(), 0) != leveled.end())
    throw error("nesting: containment relation has a cycle (corrupt embedding)");
  return f;
}

int NestingForest::square_node(const Square& s) const {
  auto split = std::partition_point(nodes.begin(), nodes.end(), [](const ForestNode& n) {
    return n.kind == ForestNode::Kind::Square;
  });
  auto it = std::lower_bound(nodes.begin(), split, s,
                             [](const ForestNode& n, const Square& q) {
                               return n.square < q;
                             });
  if (it == split || !(it->square == s)) return -1;
  return static_cast<int>(it - nodes.begin());
}

int NestingForest::vertex_node(int label) const {
  auto split = std::partition_point(nodes.begin(), nodes.end(), [](const ForestNode& n) {
    return n.kind == ForestNode::Kind::Square;
  });
  auto it = std::lower_bound(split, nodes.end(), label,
                             [](const ForestNode& n, int lab) { return n.vertex < lab; });
  if (it == nodes.end() || it->vertex != label) return -1;
  return static_cast<int>(it - nodes.begin());
}

std::map<int, std::vector<int>> level_slices(const NestingForest& f) {
  std::map<int, std::vector<int>> out;
  for (int id = 0; id < static_cast<int>(f.nodes.size()); ++id)
    out[f.nodes[id].level].push_back(id);
  return out;
}

std::string forest_json(const NestingForest& f) {
  nlohmann::ordered_json j;
  j["nodes"] = nlohmann::ordered_json::array();
  for (int id = 0; id < static_cast<int>(f.nodes.size()); ++id) {
    const ForestNode& n = f.nodes[id];
    nlohmann::ordered_json jn;
    jn["id"] = id;
    if (n.kind == ForestNode::Kind::Square) {
      jn["kind"] = "square";
      jn["square"] = n.square.v;
    } else {
      jn["kind"] = "vertex";
      jn["vertex"] = n.vertex;
    }
    jn["level"] = n.level;
    if (n.parent < 0)
      jn["parent"] = nullptr;
    else
      jn["parent"] = n.parent;
    j["nodes"].push_back(std::move(jn));
  }
  j["roots"] = f.roots;
  j["max_level"] = f.max_level;
  return j.dump(2);
}

std::string forest_dot(const NestingForest& f) {
  std::string out = "digraph nesting {\n";
  for (int id = 0; id < static_cast<int>(f.nodes.size()); ++id) {
    const ForestNode& n = f.nodes[id];
    out += "  n" + std::to_string(id) + " [label=\"";
    if (n.kind == ForestNode::Kind::Square) {
      const auto& v = n.square.v;
      out += "(" + std::to_string(v[0]) + " " + std::to_string(v[1]) + " " +
             std::to_string(v[2]) + " " + std::to_string(v[3]) + ")";
    } else {
      out += "v" + std::to_string(n.vertex);
      out += "\", shape=circle";
      out += "];\n";
      continue;
    }
    out += "\", shape=box];\n";
  }
  for (int id = 0; id < static_cast<int>(f.nodes.size()); ++id)
    if (f.nodes[id].parent >= 0)
      out += "  n" + std::to_string(f.nodes[id].parent) + " -> n" +
             std::to_string(id) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace pmk
