#include "pmk/generate.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace pmk {

namespace {

// uniform over 0..n-1 straight from the engine, so the draw sequence does not
// depend on the standard library's distribution implementation
int pick(std::mt19937_64& rng, int n) {
  uint64_t lim = ~uint64_t{0} - ~uint64_t{0} % static_cast<uint64_t>(n);
  uint64_t x;
  do {
    x = rng();
  } while (x >= lim);
  return static_cast<int>(x % static_cast<uint64_t>(n));
}

bool chance(std::mt19937_64& rng, int percent) {
  return pick(rng, 100) < percent;
}

struct Block {
  int nverts = 0;
  std::vector<std::pair<int, int>> edges;  // local ids 0..nverts-1
  std::vector<std::vector<int>> rot;       // ccw neighbor order
  std::vector<std::array<int, 4>> faces;   // square faces, face-walk order
  bool cube = false;
};

// traces the block's own embedding, validating the hand-built rotation and
// collecting every square face in walk order
void fill_faces(Block& b) {
  std::vector<int> verts(b.nverts);
  std::iota(verts.begin(), verts.end(), 0);
  Graph g = graph_from_edges(b.edges, verts);  // labels == indices
  Embedding e = embedding_from_rotation(g, b.rot);
  for (int f = 0; f < e.n_faces(); ++f) {
    const auto& w = e.face_walk[f];
    if (w.size() == 4) b.faces.push_back({w[0], w[1], w[2], w[3]});
  }
}

Block make_cube() {
  Block b;
  b.cube = true;
  b.nverts = 8;
  for (int u = 0; u < 8; ++u)
    for (int bit = 0; bit < 3; ++bit)
      if (int v = u ^ (1 << bit); u < v) b.edges.emplace_back(u, v);
  // square 0-1-3-2 drawn around square 4-5-7-6
  b.rot = {{1, 4, 2}, {3, 5, 0}, {3, 0, 6}, {2, 7, 1},
           {5, 6, 0}, {7, 4, 1}, {7, 2, 4}, {3, 6, 5}};
  fill_faces(b);
  return b;
}

// grid directions in ccw order; quadrant i spans the wedge from dir i to i+1
constexpr int DX[4] = {1, 0, -1, 0};
constexpr int DY[4] = {0, 1, 0, -1};
constexpr int QX[4] = {0, -1, -1, 0};
constexpr int QY[4] = {0, 0, -1, -1};

using Cell = std::pair<int, int>;

// Random hole-free polyomino with optional pendant trees on the rim. A lone
// bare cell is the unit square; it is produced only when allow_unit is set,
// and with need_face the block is guaranteed to bring at least one fresh
// square face (two or more cells).
Block make_poly(std::mt19937_64& rng, const GenParams& p, bool need_face,
                bool allow_unit) {
  int span = p.max_cells - p.min_cells + 1;
  int want = p.min_cells + (span > 1 ? pick(rng, span) : 0);
  if (need_face && want < 2) want = 2;

  std::set<Cell> cells = {{0, 0}};
  std::vector<Cell> cellv = {{0, 0}};
  std::set<Cell> corners;
  std::set<std::pair<Cell, Cell>> gedges;
  auto cell_corner = [](Cell c, int k) {
    static constexpr int ox[4] = {0, 1, 1, 0}, oy[4] = {0, 0, 1, 1};
    return Cell{c.first + ox[k], c.second + oy[k]};
  };
  auto cell_edge = [&](Cell c, int k) {
    Cell a = cell_corner(c, k), b = cell_corner(c, (k + 1) % 4);
    return std::make_pair(std::min(a, b), std::max(a, b));
  };
  auto absorb = [&](Cell c) {
    for (int k = 0; k < 4; ++k) {
      corners.insert(cell_corner(c, k));
      gedges.insert(cell_edge(c, k));
    }
  };
  absorb({0, 0});

  for (int tries = 0; static_cast<int>(cells.size()) < want && tries < 200;
       ++tries) {
    Cell at = cellv[pick(rng, static_cast<int>(cellv.size()))];
    int d = pick(rng, 4);
    Cell nc{at.first + DX[d], at.second + DY[d]};
    if (cells.count(nc)) continue;
    int add_v = 0, add_e = 0;
    for (int k = 0; k < 4; ++k) {
      add_v += !corners.count(cell_corner(nc, k));
      add_e += !gedges.count(cell_edge(nc, k));
    }
    // keep the cell complex simply connected (disk or wedge of disks)
    long long V = static_cast<long long>(corners.size()) + add_v;
    long long E = static_cast<long long>(gedges.size()) + add_e;
    long long C = static_cast<long long>(cells.size()) + 1;
    if (V - E + C != 1) continue;
    cells.insert(nc);
    cellv.push_back(nc);
    absorb(nc);
  }

  Block b;
  std::map<Cell, int> cid;
  for (const Cell& c : corners) cid.emplace(c, b.nverts++);

  auto quadrant = [&](Cell c, int i) {
    return cells.count({c.first + QX[i], c.second + QY[i]}) > 0;
  };
  auto edge_to = [&](Cell c, int d) {  // grid edge leaving c in dir d
    return quadrant(c, (d + 3) % 4) || quadrant(c, d);
  };

  b.rot.resize(b.nverts);
  for (const auto& [c, v] : cid)
    for (int d = 0; d < 4; ++d) {
      if (!edge_to(c, d)) continue;
      int w = cid.at({c.first + DX[d], c.second + DY[d]});
      b.rot[v].push_back(w);
      if (d < 2) b.edges.emplace_back(v, w);  // E and N cover each edge once
    }

  int np = 0;
  if (chance(rng, p.pendant_percent)) np = 1 + pick(rng, p.max_pendants);
  if (np == 0 && cells.size() == 1 && !allow_unit) np = 1;
  if (np > 0) {
    // rim corners, each with the rotation gap that faces the outer region:
    // the wedge past dir d is outside whenever its quadrant holds no cell
    std::vector<std::pair<int, int>> gaps;  // (corner id, neighbor id after which to insert)
    for (const auto& [c, v] : cid)
      for (int d = 0; d < 4; ++d)
        if (edge_to(c, d) && !quadrant(c, d))
          gaps.emplace_back(v, cid.at({c.first + DX[d], c.second + DY[d]}));
    std::vector<int> grown;
    for (int t = 0; t < np; ++t) {
      int nv = b.nverts++;
      b.rot.emplace_back();
      int choice = pick(rng, static_cast<int>(gaps.size() + grown.size()));
      if (choice < static_cast<int>(gaps.size())) {
        auto [v, after] = gaps[choice];
        auto it = std::find(b.rot[v].begin(), b.rot[v].end(), after);
        b.rot[v].insert(it + 1, nv);
        b.rot[nv].push_back(v);
        b.edges.emplace_back(v, nv);
      } else {
        int v = grown[choice - gaps.size()];
        b.rot[v].push_back(nv);
        b.rot[nv].push_back(v);
        b.edges.emplace_back(v, nv);
      }
      grown.push_back(nv);
    }
  }

  fill_faces(b);
  return b;
}

struct HostState {
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> rot;     // by label; labels stay dense
  std::vector<std::array<int, 4>> faces;
  int nlabels = 0;
  std::vector<Factor> factors;
};

void place_base(HostState& h, const Block& b) {
  h.edges = b.edges;
  h.rot = b.rot;
  h.faces = b.faces;
  h.nlabels = b.nverts;
  std::vector<int> verts(b.nverts);
  std::iota(verts.begin(), verts.end(), 0);
  h.factors.push_back(Factor{graph_from_edges(b.edges, verts),
                             b.cube ? FactorKind::Cube : FactorKind::SquareGraph,
                             std::nullopt});
}

void glue_block(HostState& h, std::mt19937_64& rng, Block b) {
  if (h.faces.empty()) throw error("ran out of square faces to glue onto");

  // half the time mirror the block; with the host-walk rotation below this
  // reaches all 8 ways of matching the two squares
  if (chance(rng, 50)) {
    for (auto& r : b.rot) std::reverse(r.begin(), r.end());
    for (auto& f : b.faces) std::reverse(f.begin(), f.end());
  }

  int fi = pick(rng, static_cast<int>(h.faces.size()));
  std::array<int, 4> fw = h.faces[fi];
  h.faces[fi] = h.faces.back();
  h.faces.pop_back();
  int t = pick(rng, 4);
  std::array<int, 4> FW;
  for (int i = 0; i < 4; ++i) FW[i] = fw[(t + i) % 4];

  int bf = pick(rng, static_cast<int>(b.faces.size()));
  const std::array<int, 4> bw = b.faces[bf];

  // the host face keeps its interior on the right of its walk, the block
  // face likewise, so gluing the interiors together identifies the walks in
  // opposite directions
  std::vector<int> lab(b.nverts, -1);
  for (int i = 0; i < 4; ++i) lab[bw[(4 - i) % 4]] = FW[i];
  for (int v = 0; v < b.nverts; ++v)
    if (lab[v] < 0) lab[v] = h.nlabels++;

  h.rot.resize(h.nlabels);
  for (int v = 0; v < b.nverts; ++v) {
    if (v == bw[0] || v == bw[1] || v == bw[2] || v == bw[3]) continue;
    auto& rv = h.rot[lab[v]];
    rv.reserve(b.rot[v].size());
    for (int w : b.rot[v]) rv.push_back(lab[w]);
  }

  // at each shared corner the block's fan of extra edges fills the wedge the
  // host face used to occupy: insert it right after the walk predecessor
  for (int i = 0; i < 4; ++i) {
    int j = (4 - i) % 4;
    int p = bw[j];
    const auto& br = b.rot[p];
    int start = static_cast<int>(
        std::find(br.begin(), br.end(), bw[(j + 1) % 4]) - br.begin());
    int pprev = bw[(j + 3) % 4];
    std::vector<int> fan;
    for (size_t s = 1; s < br.size(); ++s) {
      int w = br[(start + s) % br.size()];
      if (w == pprev) break;
      fan.push_back(lab[w]);
    }
    if (fan.empty()) continue;
    auto& hr = h.rot[FW[i]];
    auto it = std::find(hr.begin(), hr.end(), FW[(i + 3) % 4]);
    hr.insert(it + 1, fan.begin(), fan.end());
  }

  std::vector<std::pair<int, int>> fe;
  fe.reserve(b.edges.size());
  for (auto [u, v] : b.edges) {
    fe.emplace_back(lab[u], lab[v]);
    h.edges.emplace_back(lab[u], lab[v]);  // the four shared ones dedup later
  }
  for (int fx = 0; fx < static_cast<int>(b.faces.size()); ++fx) {
    if (fx == bf) continue;
    const auto& w = b.faces[fx];
    h.faces.push_back({lab[w[0]], lab[w[1]], lab[w[2]], lab[w[3]]});
  }

  h.factors.push_back(Factor{
      graph_from_edges(fe),
      b.cube ? FactorKind::Cube : FactorKind::SquareGraph,
      make_square(FW[0], FW[1], FW[2], FW[3])});
}

}  // namespace

Generated generate_qs(uint64_t seed, int k, const GenParams& params) {
  if (k < 1) throw error("need at least one block");
  GenParams p = params;
  p.min_cells = std::max(1, p.min_cells);
  p.max_cells = std::max(p.min_cells, p.max_cells);
  p.cube_percent = std::clamp(p.cube_percent, 0, 100);
  p.pendant_percent = std::clamp(p.pendant_percent, 0, 100);
  p.max_pendants = std::max(1, p.max_pendants);

  std::mt19937_64 rng(seed);
  HostState h;
  for (int step = 0; step < k; ++step) {
    bool more_after = step + 1 < k;
    bool need_face = step > 0 && more_after && h.faces.size() == 1;
    Block b = chance(rng, p.cube_percent)
                  ? make_cube()
                  : make_poly(rng, p, need_face, /*allow_unit=*/k == 1);
    if (step == 0)
      place_base(h, b);
    else
      glue_block(h, rng, std::move(b));
  }

  std::vector<int> verts(h.nlabels);
  std::iota(verts.begin(), verts.end(), 0);
  Graph g = graph_from_edges(h.edges, verts);
  Embedding e = embedding_from_rotation(g, h.rot);  // validates the stitching

  Generated out;
  out.factorization.host = g;
  out.factorization.factors = std::move(h.factors);
  if (k == 1 && g.order() == 4 && g.size() == 4) {
    out.factorization.degenerate = true;
    out.factorization.factors[0].kind = FactorKind::Square;
  }
  out.graph = std::move(g);
  out.embedding = std::move(e);
  return out;
}

}  // namespace pmk
