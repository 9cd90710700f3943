#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pmk {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Simple undirected graph. Vertices carry external integer labels; internally
// they are dense indices 0..n-1 in ascending label order. Induced subgraphs
// keep the original labels, so results computed on a subgraph can be reported
// in terms of the host graph.
struct Graph {
  std::vector<int> labels;            // sorted ascending, unique
  std::vector<std::vector<int>> adj;  // by index, each list sorted
  long long m = 0;

  int order() const { return static_cast<int>(labels.size()); }
  long long size() const { return m; }

  int index_of(int label) const;  // -1 if absent
  int label_of(int ix) const { return labels[ix]; }
  bool has_vertex(int label) const { return index_of(label) >= 0; }
  bool has_edge_ix(int u, int v) const;
  bool has_edge(int ulabel, int vlabel) const;
  int degree_ix(int ix) const { return static_cast<int>(adj[ix].size()); }

  std::vector<std::pair<int, int>> edge_list() const;  // label pairs u<v, sorted
  std::vector<int> neighbors(int label) const;         // labels

  Graph induced(const std::vector<int>& keep_labels) const;
  std::vector<int> to_labels(const std::vector<int>& ixs) const;
};

// Builds a graph from label pairs. Self-loops are an error; duplicate edges
// collapse. `isolated` adds vertices that may not appear in any edge.
Graph graph_from_edges(const std::vector<std::pair<int, int>>& edges,
                       const std::vector<int>& isolated = {});

bool is_connected(const Graph& g);
bool is_bipartite(const Graph& g);
bool is_tree(const Graph& g);
std::vector<std::vector<int>> connected_components(const Graph& g);  // index lists

// Two-coloring by index, or an odd cycle (as an index walk, closed implicitly)
// when none exists.
struct BipartiteCheck {
  std::optional<std::vector<int8_t>> coloring;
  std::vector<int> odd_cycle;
};
BipartiteCheck check_bipartite(const Graph& g);

// Distance queries. For n <= table_limit an all-pairs table is built once
// (BFS per vertex); above that each query BFSes from the source, with the
// last row cached. The untabled mode is not safe for concurrent use.
class DistanceOracle {
 public:
  explicit DistanceOracle(const Graph& g, int table_limit = 4096);

  int dist_ix(int u, int v) const;  // -1 if unreachable
  int dist(int ulabel, int vlabel) const;
  std::vector<int> row_ix(int src) const;
  bool tabled() const { return tabled_; }

 private:
  const Graph* g_;
  int n_;
  bool tabled_;
  std::vector<int16_t> tab_;
  mutable std::vector<int> row_;
  mutable int row_src_ = -1;
  void fill_row(int src, std::vector<int>& out) const;
};

// Vertices on some shortest u-v path, as sorted indices.
std::vector<int> interval_ix(const Graph& g, const DistanceOracle& d, int u, int v);

// Label bijection a -> b if the graphs are isomorphic. Intended for small
// graphs (factors, fixtures); uses color refinement plus backtracking.
std::optional<std::vector<std::pair<int, int>>> are_isomorphic(const Graph& a,
                                                               const Graph& b);

}  // namespace pmk
