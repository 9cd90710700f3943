#pragma once

#include <optional>
#include <string>
#include <variant>

#include "pmk/embedding.hpp"
#include "pmk/median.hpp"
#include "pmk/nesting.hpp"
#include "pmk/squares.hpp"

namespace pmk {

// One of the eight ways to identify two 4-cycles: the low two bits rotate,
// bit 2 flips the traversal direction. source names the square in the piece
// being attached, target the square it lands on.
struct GlueMap {
  Square source;
  Square target;
  int correspondence = 0;  // 0..7
};

struct Glued {
  Graph graph;
  // label in the attached piece -> label in the result (identity on the base
  // graph's side; the four source-square vertices map onto target vertices)
  std::vector<std::pair<int, int>> relabel;
};

// Base graph keeps its labels; the piece is relabeled above the base's range
// except for the glued square. Validates both squares, the correspondence
// index, and the vertex/edge count identities of the amalgam.
Glued glue(const Graph& base, const Graph& piece, const GlueMap& m);

enum class FactorKind { Cube, SquareGraph, Tree, Square };

struct Factor {
  Graph g;                    // induced subgraph in host labels
  FactorKind kind;
  std::optional<Square> glue; // shared with the union of earlier factors
};

// Ordered so that each factor meets the union of its predecessors in exactly
// its glue square. degenerate marks the whole-graph tree / lone-square
// returns, whose single factor is not a cube or cyclic square-graph.
struct Factorization {
  Graph host;
  bool degenerate = false;
  std::vector<Factor> factors;
};

struct Rejection {
  bool planar = true;
  std::vector<std::pair<int, int>> kuratowski;  // when !planar
  std::optional<MedianWitness> witness;         // when planar but not median
};

using DecomposeResult = std::variant<Factorization, Rejection>;

// Splits a planar median graph into basic pieces along the nesting forest of
// its default embedding: the level-0 shell first when the forest has several
// roots, then one factor per forest square together with its children, outer
// levels before inner ones. Throws only on internal contract violations; bad
// inputs come back as Rejection.
DecomposeResult decompose(const Graph& g);

// Left-to-right union in host labels. Throws when a later factor's glue
// square is not fully contained in the union of the factors before it.
Graph recompose(const Factorization& f);

// Empty string when every Factorization invariant holds against the host:
// exact recomposition, the glue-square prefix law edge for edge, basic (or
// correctly degenerate) factors, and no unit-square factor.
std::string factorization_issue(const Factorization& f);

// Joins factorizations of the two sides of split_at_square(e, c) into one of
// g. The outside factors come first, then the inside ones with c recorded as
// the glue of the first; a lone-square side disappears entirely.
Factorization merge_factorizations(const Graph& g, const Embedding& e,
                                   const Square& c, const Factorization& f_in,
                                   const Factorization& f_out);

std::string factor_kind_name(FactorKind k);
std::string factorization_json(const Factorization& f);
std::string rejection_json(const Rejection& r);

}  // namespace pmk
