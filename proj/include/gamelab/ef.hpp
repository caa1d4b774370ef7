#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gamelab/pebbled.hpp"
#include "gamelab/search.hpp"
#include "gamelab/symmetry.hpp"

namespace gamelab {

struct EfPosition {
  PebbledStructure left;
  PebbledStructure right;
  int rounds = 0;
};

struct EfOptions {
  // Automorphism generators of each side's structure (validated by the caller or builder).
  std::vector<Permutation> left_generators;
  std::vector<Permutation> right_generators;
  bool twin_reduction = true;
};

struct EfResult {
  Winner winner = Winner::Unknown;
  SearchStats stats;
};

EfResult ef_winner(const EfPosition& pos, const SearchLimits& limits = SearchLimits::from_env(),
                   const EfOptions& options = {});

// Spoiler playing u on the left (resp. v on the right) beats every answer other than v
// (resp. u) within m_prime further rounds. nullopt when the budget runs out.
std::optional<bool> ef_forced(const EfPosition& pos, Element u, Element v, int m_prime,
                              const SearchLimits& limits = SearchLimits::from_env(),
                              const EfOptions& options = {});

// In the pos.rounds-round game, Spoiler can play so that after at most `depth` moves every
// line of play has either been won by him or reached a position where one of `pairs` is
// forced within all remaining rounds but one. nullopt when the budget runs out.
std::optional<bool> ef_wins_or_forces(const EfPosition& pos,
                                      const std::vector<std::pair<Element, Element>>& pairs,
                                      int depth,
                                      const SearchLimits& limits = SearchLimits::from_env(),
                                      const EfOptions& options = {});

}  // namespace gamelab
