#include "gamelab/schema.hpp"

#include <algorithm>
#include <set>

#include "gamelab/errors.hpp"

namespace gamelab {

Schema::Schema(std::vector<RelationSymbol> relations, std::vector<std::string> constants)
    : relations_(std::move(relations)), constants_(std::move(constants)) {
  std::set<std::string> names;
  for (const auto& r : relations_) {
    if (r.arity < 1) throw StructuralError("relation " + r.name + " has arity < 1");
    if (r.name.empty() || !names.insert(r.name).second)
      throw StructuralError("duplicate or empty symbol name: " + r.name);
  }
  for (const auto& c : constants_)
    if (c.empty() || !names.insert(c).second)
      throw StructuralError("duplicate or empty symbol name: " + c);
}

Schema Schema::digraph() { return Schema({{"E", 2}}); }

Schema Schema::colored_digraph() { return Schema({{"E", 2}, {"R", 1}, {"G", 1}, {"B", 1}}); }

std::optional<std::size_t> Schema::relation_index(std::string_view name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i)
    if (relations_[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Schema::constant_index(std::string_view name) const {
  for (std::size_t i = 0; i < constants_.size(); ++i)
    if (constants_[i] == name) return i;
  return std::nullopt;
}

int Schema::max_arity() const {
  int r = 0;
  for (const auto& s : relations_) r = std::max(r, s.arity);
  return r;
}

}  // namespace gamelab
