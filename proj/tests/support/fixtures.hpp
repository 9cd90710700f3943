#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pmk/graph.hpp"

// Small named graphs used across the test suite. Labels are chosen so tests
// can assert on them directly.
namespace fx {

pmk::Graph path_graph(int n);
pmk::Graph cycle_graph(int n);
// vertex (r, c) has label r * cols + c
pmk::Graph grid_graph(int rows, int cols);
// labels 0..7, edges between labels differing in one bit
pmk::Graph cube_graph();
pmk::Graph cube_minus_vertex();  // Q3 minus vertex 7
pmk::Graph hypercube(int dim);
pmk::Graph complete_graph(int n);
// left part 0..a-1, right part a..a+b-1
pmk::Graph complete_bipartite(int a, int b);
pmk::Graph star_graph(int leaves);  // center 0
// spine 0-1; page i adds corners 2+2i (adj 0) and 3+2i (adj 1)
pmk::Graph book_graph(int pages);
// hub 0; rim cycle 1..2k with spokes at odd labels
pmk::Graph cogwheel(int k);
pmk::Graph suspended_cogwheel(int k);  // cogwheel plus pendant 2k+1 on the hub
pmk::Graph k23();                      // hubs 0,1; legs 2,3,4
// polyomino: lattice corners of the given unit cells, label = y * 1000 + x
pmk::Graph cells_graph(const std::vector<std::pair<int, int>>& cells);
pmk::Graph domino();     // cells (0,0),(1,0)
pmk::Graph l_tromino();  // cells (0,0),(1,0),(0,1)
// isomorphic copy with labels permuted deterministically by seed
pmk::Graph shuffled_copy(const pmk::Graph& g, uint64_t seed);

}  // namespace fx
