#pragma once

#include <array>

#include "pmk/graph.hpp"
#include "pmk/median.hpp"

namespace pmk {

// A 4-cycle a-b-c-d with edges ab, bc, cd, da, stored in canonical form:
// the lexicographically least of the 8 rotations/reflections.
struct Square {
  std::array<int, 4> v;

  bool operator==(const Square&) const = default;
  bool operator<(const Square& o) const { return v < o.v; }
};

Square make_square(int a, int b, int c, int d);  // canonicalizes; validates distinctness

struct SquareScan {
  std::vector<Square> squares;               // complete iff !k23
  std::optional<std::array<int, 5>> k23;     // hubs then legs, when found
};

// Degree-ordered common-neighbor scan with vertex deletion. Enumerates every
// square exactly once; when stop_on_k23 is set, aborts as soon as some vertex
// pair shows >= 3 common neighbors (counted per diagonal across the scan).
SquareScan scan_squares(const Graph& g, bool stop_on_k23);

std::vector<Square> enumerate_squares(const Graph& g);

bool is_cube(const Graph& g);

struct ForbiddenWitness {
  enum class Kind { Cube, Book, SuspendedCogwheel };
  Kind kind;
  std::vector<int> vertices;                // all labels involved
  std::pair<int, int> spine{-1, -1};        // book
  std::vector<std::array<int, 4>> pages;    // book squares
  int hub = -1, pendant = -1;               // cogwheel
  std::vector<int> rim;                     // cogwheel rim, cyclic
};

// An edge lying in >= 3 squares spans a book (spine edge + three corner
// pairs, which are disjoint in triangle- and K2,3-free hosts).
std::optional<ForbiddenWitness> find_book(const Graph& g);

// Backtracking subgraph search for the cube.
std::optional<ForbiddenWitness> find_cube_subgraph(const Graph& g);

// Hub c of degree >= 5 with a pendant x and an alternating rim
// v1 u1 v2 u2 ... vk uk (k >= 4), spokes v_i in N(c), connectors u_i outside
// N(c) ∪ {c,x}, all distinct.
std::optional<ForbiddenWitness> find_suspended_cogwheel(const Graph& g);

struct SquareGraphCheck {
  bool ok = false;
  std::optional<MedianWitness> median_witness;
  std::optional<ForbiddenWitness> forbidden;
  std::string note;
};

// Median (oracle up to 300 vertices, characterization route beyond) and free
// of cube, book, and suspended cogwheel.
SquareGraphCheck is_square_graph(const Graph& g);

enum class BasicKind { Cube, CyclicSquareGraph, No };
BasicKind is_basic_qs(const Graph& g);

std::string forbidden_json(const ForbiddenWitness& w);

}  // namespace pmk
