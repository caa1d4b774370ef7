#pragma once

#include <string>
#include <vector>

#include "gamelab/structure.hpp"

namespace gamelab {

struct Pebble {
  std::string color;
  Element element;
  bool operator==(const Pebble&) const = default;
};

// Orders "x2" before "x10"; other names compare lexicographically.
bool color_less(const std::string& a, const std::string& b);
// Next unused palette color "x<i>" after every x-color in `used`.
std::string fresh_color(const std::vector<std::string>& used);

class PebbledStructure {
 public:
  PebbledStructure() = default;
  explicit PebbledStructure(StructurePtr s, std::vector<Pebble> pebbles = {});

  const Structure& structure() const { return *structure_; }
  const StructurePtr& structure_ptr() const { return structure_; }
  const std::vector<Pebble>& pebbles() const { return pebbles_; }

  PebbledStructure with(const std::string& color, Element e) const;
  // Pebble colors in normalized (color_less) order.
  std::vector<std::string> sorted_colors() const;
  // Constants in schema order followed by pebbled elements in normalized color order.
  std::vector<Element> points() const;
  std::optional<Element> element_of(const std::string& color) const;

  // Same structure object (or equal structure) and same normalized pebble vector.
  bool operator==(const PebbledStructure& o) const;

 private:
  StructurePtr structure_;
  std::vector<Pebble> pebbles_;
};

bool matching_pair(const PebbledStructure& p, const PebbledStructure& q);

// Canonical byte string for the atomic type of the pebbled elements and constants.
std::string atomic_type_key(const PebbledStructure& p);

// Atomic facts that involve `e` together with `points` (and `e` itself), packed in a
// fixed order. Two point lists whose prefixes match extend to a matching pair exactly
// when these signatures agree.
std::string extension_signature(const Structure& s, const std::vector<Element>& points, Element e);
void extension_signature(const Structure& s, const std::vector<Element>& points, Element e,
                         std::string& out);

// Whether the two point lists induce isomorphic substructures under the positional map.
bool same_atomic_type(const Structure& a, const std::vector<Element>& pa, const Structure& b,
                      const std::vector<Element>& pb);

}  // namespace gamelab
