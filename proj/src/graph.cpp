#include "gamelab/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "gamelab/errors.hpp"

namespace gamelab {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), adj_(n, std::vector<bool>(n, false)), nbrs_(n) {
  if (n < 0) throw StructuralError("negative vertex count");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw StructuralError("edge endpoint out of range");
    if (u == v) throw StructuralError("self-loop in graph");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  for (auto [u, v] : edges_) {
    adj_[u][v] = adj_[v][u] = true;
    nbrs_[u].push_back(v);
    nbrs_[v].push_back(u);
  }
  for (auto& nb : nbrs_) std::sort(nb.begin(), nb.end());
}

Graph parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1, line_no = 0;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string fmt;
      long m;
      if (!(ls >> fmt >> n >> m) || (fmt != "edge" && fmt != "col") || n < 0)
        throw ParseError("bad problem line", line_no);
    } else if (tag == "e") {
      int u, v;
      if (n < 0) throw ParseError("edge before problem line", line_no);
      if (!(ls >> u >> v) || u < 1 || v < 1 || u > n || v > n)
        throw ParseError("bad edge line", line_no);
      if (u == v) throw ParseError("self-loop", line_no);
      edges.emplace_back(u - 1, v - 1);
    } else {
      throw ParseError("unknown line tag '" + tag + "'", line_no);
    }
  }
  if (n < 0) throw ParseError("missing problem line");
  return Graph(n, std::move(edges));
}

std::string write_dimacs(const Graph& g) {
  std::ostringstream out;
  out << "p edge " << g.size() << " " << g.edges().size() << "\n";
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << " " << v + 1 << "\n";
  return out.str();
}

std::vector<Graph> graphs_up_to_iso(int n) {
  if (n < 0 || n > 6) throw DomainError("graphs_up_to_iso supports n <= 6");
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  std::vector<int> perm(n);
  std::set<unsigned> seen;
  std::vector<Graph> out;
  for (unsigned mask = 0; mask < (1u << slots.size()); ++mask) {
    std::iota(perm.begin(), perm.end(), 0);
    unsigned best = mask;
    do {
      unsigned img = 0;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!(mask >> i & 1)) continue;
        int a = perm[slots[i].first], b = perm[slots[i].second];
        if (a > b) std::swap(a, b);
        auto it = std::find(slots.begin(), slots.end(), std::make_pair(a, b));
        img |= 1u << (it - slots.begin());
      }
      best = std::min(best, img);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!seen.insert(best).second) continue;
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (best >> i & 1) edges.push_back(slots[i]);
    out.emplace_back(n, std::move(edges));
  }
  return out;
}

}  // namespace gamelab
