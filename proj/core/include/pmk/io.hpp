#pragma once

#include <iosfwd>

#include "pmk/graph.hpp"

namespace pmk {

struct parse_error : error {
  using error::error;
};

// Edge-list text: one `u v` per line, `vertex u` for isolated vertices,
// `#` starts a comment. Integer tokens become labels directly; if any
// non-integer token appears the whole file switches to named mode and
// vertices get dense labels 0..n-1 in order of first appearance, with the
// original strings kept in `names`.
struct ParsedGraph {
  Graph g;
  bool named = false;
  std::vector<std::string> names;  // indexed by label in named mode
};

ParsedGraph read_edge_list(std::istream& in);
ParsedGraph read_edge_list_file(const std::string& path);

// Writes `vertex` lines for isolated vertices first, then edges, both sorted.
void write_edge_list(std::ostream& out, const Graph& g,
                     const std::vector<std::string>* names = nullptr);

std::string slurp_file(const std::string& path);
std::string fnv1a_hex(const std::string& bytes);

}  // namespace pmk
