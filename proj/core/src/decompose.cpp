#include "pmk/decompose.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace pmk {

namespace {

// position on the target cycle that source position i lands on
std::array<int, 4> corr_positions(int c) {
  std::array<int, 4> out;
  for (int i = 0; i < 4; ++i)
    out[i] = (c & 4) ? ((c - i) & 3) : ((c + i) & 3);
  return out;
}

void check_square_of(const Graph& g, const Square& s, const char* which) {
  for (int k = 0; k < 4; ++k) {
    if (!g.has_vertex(s.v[k]))
      throw error(std::string(which) + " square vertex " +
                  std::to_string(s.v[k]) + " is not in the graph");
    if (!g.has_edge(s.v[k], s.v[(k + 1) % 4]))
      throw error(std::string(which) + " square is not a 4-cycle of its graph");
  }
}

std::vector<std::pair<int, int>> square_edges(const Square& s) {
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k < 4; ++k) {
    int a = s.v[k], b = s.v[(k + 1) % 4];
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::ordered_json graph_block(const Graph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = g.labels;
  auto edges = nlohmann::ordered_json::array();
  for (auto [u, v] : g.edge_list()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  return j;
}

bool same_graph(const Graph& a, const Graph& b) {
  return a.labels == b.labels && a.edge_list() == b.edge_list();
}

// The slice of the host embedding a factor inherits is itself a witness:
// re-rooted at its longest face, every other face a 4-cycle and every vertex
// off that rim of degree >= 4 is exactly the flat shape, so the factor is
// classified in time linear in its size. Only when the inherited slice argues
// otherwise does the full recognizer get the last word.
Factor make_factor(Graph fg, const Embedding& host, std::optional<Square> glue_sq) {
  if (is_cube(fg))
    return Factor{std::move(fg), FactorKind::Cube, std::move(glue_sq)};

  bool flat = is_connected(fg) && fg.size() >= fg.order();
  if (flat) {
    Embedding r = restrict_embedding(host, fg);
    int outer = default_outer_face(r);
    std::vector<char> rim(fg.order(), 0);
    for (int v : r.face_walk[outer]) rim[v] = 1;
    for (int f = 0; flat && f < r.n_faces(); ++f) {
      if (f == outer) continue;
      const auto& w = r.face_walk[f];
      if (w.size() != 4 || w[0] == w[2] || w[1] == w[3]) flat = false;
    }
    for (int v = 0; flat && v < fg.order(); ++v)
      if (!rim[v] && fg.degree_ix(v) < 4) flat = false;
  }
  if (flat) return Factor{std::move(fg), FactorKind::SquareGraph, std::move(glue_sq)};

  BasicKind k = is_basic_qs(fg);
  if (k == BasicKind::No)
    throw error("decomposition produced a factor that is neither a cube nor a "
                "cyclic square-graph");
  FactorKind fk =
      k == BasicKind::Cube ? FactorKind::Cube : FactorKind::SquareGraph;
  return Factor{std::move(fg), fk, std::move(glue_sq)};
}

void add_node_vertices(const ForestNode& nd, std::set<int>& acc) {
  if (nd.kind == ForestNode::Kind::Square)
    acc.insert(nd.square.v.begin(), nd.square.v.end());
  else
    acc.insert(nd.vertex);
}

}  // namespace

Glued glue(const Graph& base, const Graph& piece, const GlueMap& m) {
  if (m.correspondence < 0 || m.correspondence >= 8)
    throw error("correspondence must be one of the 8 square isomorphisms");
  check_square_of(base, m.target, "target");
  check_square_of(piece, m.source, "source");

  auto pos = corr_positions(m.correspondence);
  std::map<int, int> mp;
  for (int i = 0; i < 4; ++i) mp[m.source.v[i]] = m.target.v[pos[i]];
  int next = base.labels.empty() ? 0 : base.labels.back() + 1;
  for (int lbl : piece.labels)
    if (!mp.count(lbl)) mp[lbl] = next++;

  std::vector<std::pair<int, int>> edges = base.edge_list();
  for (auto [u, v] : piece.edge_list()) edges.emplace_back(mp[u], mp[v]);
  std::vector<int> verts = base.labels;
  for (auto [from, to] : mp) verts.push_back(to);

  Glued out;
  out.graph = graph_from_edges(edges, verts);
  out.relabel.assign(mp.begin(), mp.end());
  if (out.graph.order() != base.order() + piece.order() - 4 ||
      out.graph.size() != base.size() + piece.size() - 4)
    throw error("gluing collapsed vertices or edges beyond the shared square");
  return out;
}

DecomposeResult decompose(const Graph& g) {
  PlanarCheck pc = planar_embed(g);
  if (!pc.planar()) {
    Rejection r;
    r.planar = false;
    r.kuratowski = pc.kuratowski;
    return r;
  }

  // Cheap screens first. Each failure re-runs the recognizer, which hits the
  // same screen immediately and hands back its canonical witness without ever
  // reaching the cycle sweep.
  if (!is_connected(g) || contains_k23(g) || !check_bipartite(g).coloring) {
    Rejection r;
    r.witness = is_median_planar(g).witness;
    return r;
  }

  Factorization out;
  out.host = g;
  if (g.size() == g.order() - 1) {  // connected, so a tree
    out.degenerate = true;
    out.factors.push_back(Factor{g, FactorKind::Tree, std::nullopt});
    return out;
  }
  if (g.order() == 4 && g.size() == 4) {  // connected and bipartite: a 4-cycle
    out.degenerate = true;
    out.factors.push_back(Factor{g, FactorKind::Square, std::nullopt});
    return out;
  }

  // Build the factors straight from the forest. When every one comes out a
  // cube or a flat piece, the composition glued back along boundary squares
  // is itself a certificate that g is median, so no global distance check is
  // needed on the accepting path.
  const Embedding& e = *pc.embedding;
  std::string trouble;
  try {
    NestingForest f = nesting_forest(g, e);
    auto slices = level_slices(f);

    // several roots: the whole level-0 shell is the opening factor
    if (f.roots.size() > 1) {
      std::set<int> shell;
      for (int id : slices.at(0)) add_node_vertices(f.nodes[id], shell);
      out.factors.push_back(make_factor(
          g.induced(std::vector<int>(shell.begin(), shell.end())), e,
          std::nullopt));
    }

    // then every forest square together with its children, outer levels
    // first; slice ids are ascending, so parents of one level come in
    // canonical order
    for (const auto& [lvl, ids] : slices) {
      for (int id : ids) {
        const ForestNode& nd = f.nodes[id];
        if (nd.kind != ForestNode::Kind::Square || nd.children.empty())
          continue;
        std::set<int> verts(nd.square.v.begin(), nd.square.v.end());
        for (int c : nd.children) add_node_vertices(f.nodes[c], verts);
        std::optional<Square> glue_sq;
        if (!out.factors.empty()) glue_sq = nd.square;
        out.factors.push_back(make_factor(
            g.induced(std::vector<int>(verts.begin(), verts.end())), e,
            std::move(glue_sq)));
      }
    }

    if (out.factors.empty())
      throw error("expected at least one factor after the degenerate screens");
    return out;
  } catch (const error& ex) {
    trouble = ex.what();
  }

  // The construction broke down, which on a median graph it never should;
  // run the full recognizer for the witness that explains why.
  MedianVerdict mv = is_median_planar(g);
  if (!mv.median) {
    Rejection r;
    r.witness = std::move(mv.witness);
    return r;
  }
  throw error("decomposition failed on a median graph: " + trouble);
}

Graph recompose(const Factorization& f) {
  std::set<int> verts;
  std::set<std::pair<int, int>> eset;
  for (size_t j = 0; j < f.factors.size(); ++j) {
    const Factor& fa = f.factors[j];
    if (j > 0) {
      if (!fa.glue)
        throw error("factor " + std::to_string(j) + " carries no glue square");
      for (int lbl : fa.glue->v)
        if (!verts.count(lbl))
          throw error("glue square is not in the union of earlier factors");
      for (auto pr : square_edges(*fa.glue))
        if (!eset.count(pr))
          throw error("glue square edge is not in the union of earlier factors");
    }
    verts.insert(fa.g.labels.begin(), fa.g.labels.end());
    for (auto pr : fa.g.edge_list()) eset.insert(pr);
  }
  return graph_from_edges({eset.begin(), eset.end()},
                          {verts.begin(), verts.end()});
}

std::string factorization_issue(const Factorization& f) {
  if (f.factors.empty()) return "no factors";

  if (f.degenerate) {
    if (f.factors.size() != 1) return "degenerate result with several factors";
    const Factor& fa = f.factors[0];
    if (fa.glue) return "degenerate factor carries a glue square";
    if (!same_graph(fa.g, f.host)) return "degenerate factor is not the host";
    bool tree = is_connected(f.host) && f.host.size() == f.host.order() - 1;
    bool square = f.host.order() == 4 && f.host.size() == 4;
    if (fa.kind == FactorKind::Tree && !tree) return "host is not a tree";
    if (fa.kind == FactorKind::Square && !square) return "host is not a square";
    if (fa.kind != FactorKind::Tree && fa.kind != FactorKind::Square)
      return "degenerate factor with a basic kind";
    return "";
  }

  Graph r;
  try {
    r = recompose(f);
  } catch (const error& ex) {
    return ex.what();
  }
  if (!same_graph(r, f.host)) return "recomposition does not reproduce the host";
  if (f.factors[0].glue) return "first factor carries a glue square";

  bool host_is_square = f.host.order() == 4 && f.host.size() == 4;
  std::set<int> pv;
  std::set<std::pair<int, int>> pe;
  for (size_t j = 0; j < f.factors.size(); ++j) {
    const Factor& fa = f.factors[j];
    if (j > 0) {
      if (!fa.glue) return "later factor without a glue square";
      std::vector<int> want(fa.glue->v.begin(), fa.glue->v.end());
      std::sort(want.begin(), want.end());
      std::vector<int> got;
      for (int lbl : fa.g.labels)
        if (pv.count(lbl)) got.push_back(lbl);
      if (got != want) return "factor meets the prefix in more than its glue square";
      std::vector<std::pair<int, int>> goe;
      for (auto pr : fa.g.edge_list())
        if (pe.count(pr)) goe.push_back(pr);
      if (goe != square_edges(*fa.glue))
        return "factor shares edges with the prefix beyond its glue square";
    }
    BasicKind k = is_basic_qs(fa.g);
    if (k == BasicKind::No) return "factor is not a basic piece";
    FactorKind want_kind =
        k == BasicKind::Cube ? FactorKind::Cube : FactorKind::SquareGraph;
    if (fa.kind != want_kind) return "recorded factor kind disagrees";
    if (fa.g.order() == 4 && fa.g.size() == 4 && !host_is_square)
      return "unit square factor";
    pv.insert(fa.g.labels.begin(), fa.g.labels.end());
    for (auto pr : fa.g.edge_list()) pe.insert(pr);
  }
  return "";
}

Factorization merge_factorizations(const Graph& g, const Embedding& e,
                                   const Square& c, const Factorization& f_in,
                                   const Factorization& f_out) {
  check_square_of(g, c, "glue");
  SquareSplit sp = split_at_square(e, c.v);
  if (!same_graph(f_in.host, sp.inside))
    throw error("inner factorization does not cover the inner half");
  if (!same_graph(f_out.host, sp.outside))
    throw error("outer factorization does not cover the outer half");

  auto is_unit = [](const Factorization& fz) {
    return fz.host.order() == 4 && fz.host.size() == 4;
  };

  Factorization out;
  out.host = g;
  if (is_unit(f_in)) {
    out.factors = f_out.factors;
    out.degenerate = f_out.degenerate;
  } else if (is_unit(f_out)) {
    out.factors = f_in.factors;
    out.degenerate = f_in.degenerate;
  } else {
    out.factors = f_out.factors;
    Factor lead = f_in.factors.at(0);
    for (int lbl : c.v)
      if (!lead.g.has_vertex(lbl))
        throw error("inner factors do not lead with the glue square");
    lead.glue = c;
    out.factors.push_back(std::move(lead));
    out.factors.insert(out.factors.end(), f_in.factors.begin() + 1,
                       f_in.factors.end());
  }

  std::string issue = factorization_issue(out);
  if (!issue.empty()) throw error("merged factorization is invalid: " + issue);
  return out;
}

std::string factor_kind_name(FactorKind k) {
  switch (k) {
    case FactorKind::Cube: return "cube";
    case FactorKind::SquareGraph: return "square_graph";
    case FactorKind::Tree: return "tree";
    case FactorKind::Square: return "square";
  }
  return "?";
}

std::string factorization_json(const Factorization& f) {
  nlohmann::ordered_json j;
  j["host"] = graph_block(f.host);
  j["degenerate"] = f.degenerate;
  auto arr = nlohmann::ordered_json::array();
  for (const Factor& fa : f.factors) {
    nlohmann::ordered_json fj = graph_block(fa.g);
    fj["kind"] = factor_kind_name(fa.kind);
    if (fa.glue)
      fj["glue_square"] = fa.glue->v;
    else
      fj["glue_square"] = nullptr;
    arr.push_back(std::move(fj));
  }
  j["factors"] = std::move(arr);
  return j.dump(2);
}

std::string rejection_json(const Rejection& r) {
  nlohmann::ordered_json j;
  j["accepted"] = false;
  j["planar"] = r.planar;
  if (!r.planar) {
    auto arr = nlohmann::ordered_json::array();
    for (auto [u, v] : r.kuratowski) arr.push_back({u, v});
    j["kuratowski"] = std::move(arr);
  }
  if (r.witness) j["witness"] = nlohmann::json::parse(witness_json(*r.witness));
  return j.dump(2);
}

}  // namespace pmk
