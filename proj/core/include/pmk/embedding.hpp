#pragma once

#include <array>

#include "pmk/graph.hpp"

namespace pmk {

// Combinatorial embedding: a cyclic neighbor order per vertex plus the faces
// it induces. Faces are traced with the rule: after arriving at v from u,
// leave along the neighbor that follows u in rot[v]. Directed edge (v, i)
// means v -> rot[v][i]; ids are offset[v] + i.
struct Embedding {
  Graph g;
  std::vector<std::vector<int>> rot;  // rot[v] = neighbor indices, cyclic
  std::vector<int> offset;            // directed-edge id base per vertex
  std::vector<int> twin;              // id of the reversed directed edge
  std::vector<int> face_of_dir;       // face id per directed edge
  std::vector<std::vector<int>> face_walk;  // closed vertex walks, indices
  int outer = -1;

  int n_faces() const { return static_cast<int>(face_walk.size()); }
  int dir_id(int u, int v) const;       // indices; linear in deg(u)
  int face_of(int u, int v) const { return face_of_dir[dir_id(u, v)]; }
  std::vector<int> walk_labels(int f) const;
};

struct PlanarCheck {
  std::optional<Embedding> embedding;
  std::vector<std::pair<int, int>> kuratowski;  // label edges of a K5/K33 subdivision
  bool planar() const { return embedding.has_value(); }
};

// Boyer–Myrvold test; on success the embedding has faces traced and the
// default outer face marked.
PlanarCheck planar_embed(const Graph& g);

// Faces for a caller-supplied rotation system. Checks the rotation is a
// permutation of each adjacency list and that every component satisfies
// Euler's formula (catches rotation systems of nonplanar or mis-spliced
// embeddings).
Embedding embedding_from_rotation(Graph g, std::vector<std::vector<int>> rot);

// Lexicographically least label walk among the longest faces.
int default_outer_face(const Embedding& e);
Embedding reroot_outer(Embedding e, int face);

// Inside/outside split along an embedded 4-cycle: cut the four dual edges of
// the square and see which faces stay connected to the outer face.
// Sides: 0 = on the square, 1 = inside, 2 = outside.
struct SideMap {
  std::vector<int8_t> vertex_side;
  std::vector<int8_t> face_side;
};
SideMap side_map(const Embedding& e, const std::array<int, 4>& square_ix);

// Both halves at a square, each keeping the square itself.
struct SquareSplit {
  Graph inside, outside;
};
SquareSplit split_at_square(const Embedding& e, const std::array<int, 4>& square_labels);

// Embedding of an induced subgraph, keeping the host's cyclic orders.
Embedding restrict_embedding(const Embedding& e, const Graph& sub);

std::string embedding_json(const Embedding& e);

}  // namespace pmk
