#pragma once

#include <array>

#include "pmk/graph.hpp"

namespace pmk {

struct not_planar_error : error {
  std::vector<std::pair<int, int>> kuratowski;
  explicit not_planar_error(std::vector<std::pair<int, int>> cert)
      : error("graph is not planar"), kuratowski(std::move(cert)) {}
};

enum class MedianFailTag {
  Disconnected,
  HasK23,
  BadIsometricCycle,
  NotC6Q3Inferring,
  BadTriple,
};

struct MedianWitness {
  MedianFailTag tag;
  std::vector<int> vertices;  // labels: hubs-then-legs, cycle walk, or triple
  int median_count = -1;      // for BadTriple
  std::string note;
};

struct MedianVerdict {
  bool median = false;
  std::optional<MedianWitness> witness;
};

// interval(u,v) ∩ interval(v,w) ∩ interval(u,w), sorted labels.
std::vector<int> median_of_triple(const Graph& g, const DistanceOracle& d, int u,
                                  int v, int w);

// Brute-force definition check over all triples. Intended for n up to a few
// hundred; parallelized over PMK_THREADS with a deterministic (smallest)
// failing triple.
MedianVerdict is_median_oracle(const Graph& g);

struct IsoCycle {
  std::vector<int> walk;  // labels, closed implicitly, canonical rotation
  int length() const { return static_cast<int>(walk.size()); }
};

// All isometric cycles, each once up to rotation/reflection. Candidates are
// seeded by (directed edge, opposite vertex) pairs and grown as two pruned
// paths; every reported cycle is re-verified against the definition.
// max_len = 0 means unbounded.
std::vector<IsoCycle> isometric_cycles(const Graph& g, const DistanceOracle& d,
                                       int max_len = 0);

// First isometric cycle of length >= min_len, if any.
std::optional<IsoCycle> find_long_isometric_cycle(const Graph& g,
                                                  const DistanceOracle& d,
                                                  int min_len);

struct InferringCheck {
  bool ok = true;
  std::vector<int> counterexample;  // the 6-cycle / the seven Q3-minus vertices
};

// Every isometric 6-cycle must extend to a cube by two extra adjacent
// vertices covering the odd and even cycle positions.
InferringCheck is_c6_q3_inferring(const Graph& g, const DistanceOracle& d);

// Every Q3-minus-a-vertex subgraph must extend by an eighth vertex completing
// the cube.
InferringCheck is_q3minus_q3_inferring(const Graph& g);

// Two vertices with >= 3 common neighbors; returns {hub, hub, leg, leg, leg}.
std::optional<std::array<int, 5>> contains_k23(const Graph& g);

// Characterization route: connected, K2,3-free, all isometric cycles of
// length 4 or 6, and every isometric 6-cycle completing to a cube. Throws
// not_planar_error on non-planar input.
MedianVerdict is_median_planar(const Graph& g);

// Connected, K2,3-free, bipartite, and no isometric cycle longer than 4.
bool is_cube_free_median_planar(const Graph& g);

// Least convex supergraph of the seed vertices, as an induced subgraph.
// Computed as the fixed point of interval closure.
Graph convex_hull(const Graph& g, const DistanceOracle& d,
                  const std::vector<int>& seed_labels);
bool is_convex(const Graph& g, const DistanceOracle& d,
               const std::vector<int>& subgraph_labels);

std::string witness_json(const MedianWitness& w);

// Environment cap for internal parallelism (PMK_THREADS), at least 1.
int thread_budget();

}  // namespace pmk
