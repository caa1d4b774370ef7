#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gamelab {

struct RelationSymbol {
  std::string name;
  int arity = 0;
  bool operator==(const RelationSymbol&) const = default;
};

class Schema {
 public:
  Schema() = default;
  Schema(std::vector<RelationSymbol> relations, std::vector<std::string> constants = {});

  // Single binary relation E.
  static Schema digraph();
  // E plus unary R, G, B for the red/green/blue vertex colors.
  static Schema colored_digraph();

  const std::vector<RelationSymbol>& relations() const { return relations_; }
  const std::vector<std::string>& constants() const { return constants_; }
  std::optional<std::size_t> relation_index(std::string_view name) const;
  std::optional<std::size_t> constant_index(std::string_view name) const;
  int max_arity() const;

  bool operator==(const Schema&) const = default;

 private:
  std::vector<RelationSymbol> relations_;
  std::vector<std::string> constants_;
};

}  // namespace gamelab
