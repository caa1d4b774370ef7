#pragma once

#include <vector>

#include "gamelab/structure.hpp"

namespace gamelab {

using Permutation = std::vector<Element>;

// Whether `perm` is a bijection of the universe that maps every relation onto itself and
// fixes every constant.
bool is_automorphism(const Structure& s, const Permutation& perm);

// Symmetry data for one structure: classes of interchangeable elements ("twins": equal
// relations to everything else and no edge between them, so any transposition of two of
// them is an automorphism), plus known automorphism generators.
class Symmetry {
 public:
  Symmetry() = default;
  Symmetry(const Structure& s, std::vector<Permutation> generators = {}, bool twins = true);

  // One representative per orbit of the group generated by the twin transpositions and the
  // generators that fix every element of `fixed`. Sorted ascending.
  std::vector<Element> representatives(const std::vector<Element>& fixed) const;
  bool empty() const { return generators_.empty() && twin_members_.empty(); }
  const std::vector<Permutation>& generators() const { return generators_; }
  int twin_class(Element e) const { return twin_class_.empty() ? -1 : twin_class_[e]; }

 private:
  std::size_t n_ = 0;
  std::vector<Permutation> generators_;
  std::vector<int> twin_class_;
  std::vector<std::vector<Element>> twin_members_;
};

}  // namespace gamelab
