#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gamelab/graph.hpp"
#include "gamelab/qbf.hpp"
#include "gamelab/symmetry.hpp"

namespace gamelab {

struct GadgetOutput {
  StructurePtr structure;
  std::map<std::string, Element> designated;
  std::map<Element, std::string> informal_labels;
  std::vector<Permutation> automorphism_generators;
  // Free-form audit table, e.g. which upper middle vertex carries J or J'.
  std::map<std::string, std::string> notes;

  Element at(const std::string& name) const;
};

// Mutable labeled digraph with color tags ("R", "G", "B" or empty), used to assemble gadgets.
class LabeledDigraph {
 public:
  int add(const std::string& label, const std::string& color = "");
  int id(const std::string& label) const;
  bool has(const std::string& label) const { return index_.count(label) > 0; }
  void edge(const std::string& from, const std::string& to) { edge(id(from), id(to)); }
  void edge(int from, int to);
  void remove_edge(int from, int to);
  const std::string& color(int v) const { return color_[v]; }
  const std::string& label(int v) const { return label_[v]; }
  const std::set<int>& out(int v) const { return out_[v]; }
  const std::set<int>& in(int v) const { return in_[v]; }
  // Replaces v by fresh vertices with the given labels and v's color: every edge into v
  // now enters each of them, every edge out of v now leaves each of them; no edges among them.
  std::vector<int> replace(int v, const std::vector<std::string>& labels);
  // Removes v after joining each of its in-neighbors to each of its out-neighbors.
  void elide(int v);
  void remove(int v);
  std::size_t vertex_count() const { return index_.size(); }
  std::size_t edge_count() const;

  // Live vertices in creation order. Colored: unary R/G/B from the color tags. Plain:
  // colors dropped and a self-loop added on each green vertex.
  Structure to_structure(bool colored) const;

 private:
  std::vector<std::string> label_;
  std::vector<std::string> color_;
  std::vector<bool> alive_;
  std::map<std::string, int> index_;
  std::vector<std::set<int>> out_, in_;
};

GadgetOutput build_I_np(int j, bool colored = true);
GadgetOutput build_J(int j);
GadgetOutput build_J_prime(int j);
GadgetOutput build_I_pspace(int j);
GadgetOutput build_domset_structure(const Graph& g, int k, bool colored = true);
// phi is padded to an alternating prefix first when needed.
GadgetOutput build_skyscraper(const QbfInstance& phi, int t);

std::string save_gadget(const GadgetOutput& g);
GadgetOutput load_gadget(const std::string& text);

// All automorphisms of a small graph (brute force, n <= 8).
std::vector<std::vector<int>> graph_automorphisms(const Graph& g);

}  // namespace gamelab
