#pragma once

#include <vector>

#include "gamelab/graph.hpp"
#include "gamelab/pebbled.hpp"
#include "gamelab/qbf.hpp"
#include "gamelab/search.hpp"

// Brute-force references. Nothing here depends on the solver modules; the matching test
// below is a separate, direct implementation of the definition.
namespace gamelab::oracle {

int min_domset_bruteforce(const Graph& g, int cap = 16);
// A minimum dominating set, vertices ascending (first in mask order).
std::vector<int> min_domset_witness(const Graph& g, int cap = 16);
bool has_domset(const Graph& g, int k, int cap = 16);

int maxqsat_value(const QbfInstance& q, int cap = 16);
bool qbf_true(const QbfInstance& q, int cap = 16);
// Optimal first move of the outer existential player for the clause-count objective
// (given the assignment so far); ties go to false.
bool best_existential_move(const QbfInstance& q, const std::vector<int>& assignment);

// Pebbled elements and constants of both sides induce the same atoms under the
// positional map. Checks every tuple of every relation directly.
bool naive_matching(const PebbledStructure& a, const PebbledStructure& b);

Winner naive_ef(const PebbledStructure& left, const PebbledStructure& right, int rounds,
                const SearchLimits& limits = SearchLimits::unlimited());

// MS game in which Duplicator answers each structure with any nonempty set of copies.
Winner naive_ms_subset(const std::vector<PebbledStructure>& left,
                       const std::vector<PebbledStructure>& right, int rounds,
                       const SearchLimits& limits = SearchLimits::unlimited());

}  // namespace gamelab::oracle
