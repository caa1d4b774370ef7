#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gamelab {

// Simple undirected graph on vertices 0..n-1 (no loops, no parallel edges).
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n, std::vector<std::pair<int, int>> edges = {});

  int size() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool adjacent(int u, int v) const { return adj_[u][v]; }
  const std::vector<int>& neighbors(int v) const { return nbrs_[v]; }

  bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;  // u < v, sorted
  std::vector<std::vector<bool>> adj_;
  std::vector<std::vector<int>> nbrs_;
};

// DIMACS edge format: "c" comments, "p edge N M", "e U V" with 1-based vertices.
Graph parse_dimacs(const std::string& text);
std::string write_dimacs(const Graph& g);

// Every graph on exactly n vertices up to isomorphism, in a fixed order.
std::vector<Graph> graphs_up_to_iso(int n);

}  // namespace gamelab
