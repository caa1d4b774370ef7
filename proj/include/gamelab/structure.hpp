#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gamelab/schema.hpp"

namespace gamelab {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

// A set of tuples of fixed arity over 0..n-1. Tuples are kept sorted and unique.
// Unary and binary relations additionally get a bit table for O(1) membership.
class Relation {
 public:
  Relation(int arity, std::size_t universe, std::vector<Tuple> tuples);

  int arity() const { return arity_; }
  const std::vector<Tuple>& tuples() const { return tuples_; }
  bool contains(std::span<const Element> t) const;
  bool contains(Element a) const { return bits_[a >> 6] >> (a & 63) & 1; }
  bool contains(Element a, Element b) const {
    std::size_t i = static_cast<std::size_t>(a) * n_ + b;
    return bits_[i >> 6] >> (i & 63) & 1;
  }
  // Adjacency lists, binary relations only.
  const std::vector<Element>& out(Element a) const { return out_[a]; }
  const std::vector<Element>& in(Element a) const { return in_[a]; }

  bool operator==(const Relation& o) const { return arity_ == o.arity_ && tuples_ == o.tuples_; }

 private:
  int arity_;
  std::size_t n_;
  std::vector<Tuple> tuples_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::vector<Element>> out_, in_;
};

class Structure {
 public:
  Structure(Schema schema, std::size_t universe_size, std::vector<std::vector<Tuple>> relation_data,
            std::vector<Element> constant_data = {}, std::map<Element, std::string> labels = {});

  const Schema& schema() const { return schema_; }
  std::size_t size() const { return n_; }
  const Relation& relation(std::size_t i) const { return relations_[i]; }
  const Relation& relation(std::string_view name) const;
  std::size_t relation_count() const { return relations_.size(); }
  const std::vector<Element>& constants() const { return constants_; }
  const std::map<Element, std::string>& labels() const { return labels_; }

  std::optional<Element> find_label(std::string_view label) const;
  // Element by label; throws StructuralError if absent.
  Element at(std::string_view label) const;
  std::string name_of(Element e) const;
  bool binary_only() const { return binary_only_; }

  bool operator==(const Structure& o) const;

 private:
  Schema schema_;
  std::size_t n_;
  std::vector<Relation> relations_;
  std::vector<Element> constants_;
  std::map<Element, std::string> labels_;
  std::unordered_map<std::string, Element> by_label_;
  bool binary_only_ = true;
};

using StructurePtr = std::shared_ptr<const Structure>;

// Incremental construction with named vertices; used by the gadget builders.
class StructureBuilder {
 public:
  explicit StructureBuilder(Schema schema);
  Element add(const std::string& label = "");
  Element add_or_get(const std::string& label);
  Element at(const std::string& label) const;
  void add_tuple(std::string_view relation, Tuple t);
  void add_edge(Element a, Element b) { add_tuple("E", {a, b}); }
  void remove_tuple(std::string_view relation, const Tuple& t);
  void set_constant(std::string_view name, Element e);
  std::size_t size() const { return labels_.size(); }
  const std::string& label(Element e) const { return labels_[e]; }
  std::vector<Tuple>& tuples(std::string_view relation);
  Structure build() const;

 private:
  Schema schema_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Element> by_label_;
  std::vector<std::vector<Tuple>> data_;
  std::vector<Element> constants_;
};

}  // namespace gamelab
