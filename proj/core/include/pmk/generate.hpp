#pragma once

#include <cstdint>

#include "pmk/decompose.hpp"
#include "pmk/embedding.hpp"
#include "pmk/graph.hpp"

namespace pmk {

// Block mix for the random composer. Integer percentages keep the stream of
// random draws identical across platforms.
struct GenParams {
  int min_cells = 1;       // polyomino cells per block
  int max_cells = 6;
  int cube_percent = 25;   // chance a block is a cube instead of a polyomino
  int pendant_percent = 40;  // chance a polyomino block grows pendant trees
  int max_pendants = 4;    // tree vertices per block
};

struct Generated {
  Graph graph;                  // labels 0..n-1
  Factorization factorization;  // construction record, one factor per block
  Embedding embedding;          // the drawing the blocks were stitched into
};

// Composes k basic blocks (cubes and hole-free polyominoes with optional
// pendant trees), each glued onto a square face of the drawing built so far.
// Deterministic in (seed, k, params). The factorization lists blocks in
// construction order, so every prefix is itself a composition.
Generated generate_qs(uint64_t seed, int k, const GenParams& params = {});

}  // namespace pmk
