#pragma once

#include <memory>
#include <vector>

#include "gamelab/corpus.hpp"
#include "gamelab/pebbled.hpp"

namespace gamelab::testing {

inline StructurePtr digraph(std::size_t n, std::vector<Tuple> edges) {
  return std::make_shared<const Structure>(Schema::digraph(), n, std::vector<std::vector<Tuple>>{std::move(edges)});
}

inline StructurePtr single_edge() { return digraph(2, {{0, 1}}); }
inline StructurePtr edgeless(std::size_t n) { return digraph(n, {}); }

inline PebbledStructure bare(StructurePtr s) { return PebbledStructure(std::move(s)); }

using gamelab::random_digraph;
using gamelab::random_pebbled;

}  // namespace gamelab::testing
