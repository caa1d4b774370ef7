#include "gamelab/structure.hpp"

#include <algorithm>

#include "gamelab/errors.hpp"

namespace gamelab {

namespace {
constexpr std::size_t kMaxDenseBinary = 8192;
}

Relation::Relation(int arity, std::size_t universe, std::vector<Tuple> tuples)
    : arity_(arity), n_(universe), tuples_(std::move(tuples)) {
  for (const auto& t : tuples_) {
    if (static_cast<int>(t.size()) != arity_) throw StructuralError("tuple of wrong arity");
    for (Element e : t)
      if (e >= n_) throw StructuralError("tuple component out of range");
  }
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
  if (arity_ == 1) {
    bits_.assign(n_ / 64 + 1, 0);
    for (const auto& t : tuples_) bits_[t[0] >> 6] |= std::uint64_t{1} << (t[0] & 63);
  } else if (arity_ == 2) {
    if (n_ <= kMaxDenseBinary) {
      bits_.assign(n_ * n_ / 64 + 1, 0);
      for (const auto& t : tuples_) {
        std::size_t i = static_cast<std::size_t>(t[0]) * n_ + t[1];
        bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
      }
    }
    out_.resize(n_);
    in_.resize(n_);
    for (const auto& t : tuples_) {
      out_[t[0]].push_back(t[1]);
      in_[t[1]].push_back(t[0]);
    }
  }
}

bool Relation::contains(std::span<const Element> t) const {
  if (arity_ == 1) return contains(t[0]);
  if (arity_ == 2 && !bits_.empty()) return contains(t[0], t[1]);
  return std::binary_search(tuples_.begin(), tuples_.end(), t,
                            [](const auto& x, const auto& y) {
                              return std::lexicographical_compare(x.begin(), x.end(), y.begin(),
                                                                  y.end());
                            });
}

Structure::Structure(Schema schema, std::size_t universe_size,
                     std::vector<std::vector<Tuple>> relation_data,
                     std::vector<Element> constant_data, std::map<Element, std::string> labels)
    : schema_(std::move(schema)),
      n_(universe_size),
      constants_(std::move(constant_data)),
      labels_(std::move(labels)) {
  if (relation_data.size() != schema_.relations().size())
    throw StructuralError("relation data does not match schema");
  if (constants_.size() != schema_.constants().size())
    throw StructuralError("constant data does not match schema");
  for (std::size_t i = 0; i < relation_data.size(); ++i) {
    relations_.emplace_back(schema_.relations()[i].arity, n_, std::move(relation_data[i]));
    if (schema_.relations()[i].arity > 2) binary_only_ = false;
  }
  for (Element c : constants_)
    if (c >= n_) throw StructuralError("constant out of range");
  for (const auto& [e, name] : labels_) {
    if (e >= n_) throw StructuralError("label on element out of range");
    by_label_.emplace(name, e);
  }
}

const Relation& Structure::relation(std::string_view name) const {
  auto i = schema_.relation_index(name);
  if (!i) throw StructuralError("unknown relation " + std::string(name));
  return relations_[*i];
}

std::optional<Element> Structure::find_label(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

Element Structure::at(std::string_view label) const {
  auto e = find_label(label);
  if (!e) throw StructuralError("no element labeled " + std::string(label));
  return *e;
}

std::string Structure::name_of(Element e) const {
  auto it = labels_.find(e);
  return it == labels_.end() ? std::to_string(e) : it->second;
}

bool Structure::operator==(const Structure& o) const {
  return schema_ == o.schema_ && n_ == o.n_ && relations_ == o.relations_ &&
         constants_ == o.constants_ && labels_ == o.labels_;
}

StructureBuilder::StructureBuilder(Schema schema)
    : schema_(std::move(schema)),
      data_(schema_.relations().size()),
      constants_(schema_.constants().size(), 0) {}

Element StructureBuilder::add(const std::string& label) {
  Element e = static_cast<Element>(labels_.size());
  if (!label.empty() && !by_label_.emplace(label, e).second)
    throw StructuralError("duplicate label " + label);
  labels_.push_back(label);
  return e;
}

Element StructureBuilder::add_or_get(const std::string& label) {
  auto it = by_label_.find(label);
  return it != by_label_.end() ? it->second : add(label);
}

Element StructureBuilder::at(const std::string& label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) throw StructuralError("no vertex labeled " + label);
  return it->second;
}

std::vector<Tuple>& StructureBuilder::tuples(std::string_view relation) {
  auto i = schema_.relation_index(relation);
  if (!i) throw StructuralError("unknown relation " + std::string(relation));
  return data_[*i];
}

void StructureBuilder::add_tuple(std::string_view relation, Tuple t) {
  tuples(relation).push_back(std::move(t));
}

void StructureBuilder::remove_tuple(std::string_view relation, const Tuple& t) {
  auto& v = tuples(relation);
  v.erase(std::remove(v.begin(), v.end(), t), v.end());
}

void StructureBuilder::set_constant(std::string_view name, Element e) {
  auto i = schema_.constant_index(name);
  if (!i) throw StructuralError("unknown constant " + std::string(name));
  constants_[*i] = e;
}

Structure StructureBuilder::build() const {
  std::map<Element, std::string> labels;
  for (Element e = 0; e < labels_.size(); ++e)
    if (!labels_[e].empty()) labels.emplace(e, labels_[e]);
  return Structure(schema_, labels_.size(), data_, constants_, std::move(labels));
}

}  // namespace gamelab
