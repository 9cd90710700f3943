#pragma once

#include <map>

#include "pmk/embedding.hpp"
#include "pmk/squares.hpp"

namespace pmk {

// Containment order of the squares of an embedded graph. contains holds the
// full relation as index pairs into squares: (i, j) means every vertex of
// squares[j] lies on or inside squares[i]. Reflexive and transitive by
// construction; antisymmetry is validated. Quadratic in the number of
// squares -- meant for inspection and cross-checking, the forest below does
// not build it.
struct SquareOrder {
  std::vector<Square> squares;
  std::vector<std::pair<int, int>> contains;
};

// Requires a triangle- and K2,3-free planar host so squares are chordless
// and sides are well defined. Throws on an antisymmetry violation.
SquareOrder square_order(const Graph& g, const Embedding& e);

// Rooted nesting forest: square nodes joined by immediate-containment edges,
// plus one node per vertex lying in no square (W nodes, always leaves or
// isolated). Roots are squares contained in no other square and W vertices
// outside every square; levels count down from the roots.
struct ForestNode {
  enum class Kind { Square, Vertex };
  Kind kind;
  Square square{};   // when kind == Square
  int vertex = -1;   // label, when kind == Vertex
  int parent = -1;   // node id, -1 at roots
  int level = 0;
  std::vector<int> children;
};

struct NestingForest {
  std::vector<ForestNode> nodes;  // squares first (canonical order), then W by label
  std::vector<int> roots;
  int max_level = 0;

  int square_node(const Square& s) const;  // -1 when absent
  int vertex_node(int label) const;
};

// Builds the forest by classifying faces against each square's 4-edge dual
// cut, walking the smaller side first. Near-linear on shallowly nested
// inputs; a chain of n nested squares degrades to quadratic. Throws when a
// square fails to split the faces, when two squares overlap without nesting
// (straddling -- the host was not triangle-/K2,3-free), or when containment
// is cyclic.
NestingForest nesting_forest(const Graph& g, const Embedding& e);

// Nodes grouped by level; every level from 0 to max_level appears.
std::map<int, std::vector<int>> level_slices(const NestingForest& f);

std::string forest_json(const NestingForest& f);
std::string forest_dot(const NestingForest& f);

}  // namespace pmk
