#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gamelab/ms.hpp"
#include "gamelab/qbf.hpp"

namespace gamelab {

StructurePtr random_digraph(std::mt19937& rng, std::size_t n, double p);
// Pebbles x1..x<count> on uniformly chosen elements.
PebbledStructure random_pebbled(std::mt19937& rng, StructurePtr s, int count);

struct CorpusShape {
  int max_universe = 5;
  int max_boards = 2;  // per side
  int max_rounds = 3;
  int max_pebbles = 1;
};

// 1..max_boards boards per side over random digraphs, sharing 0..max_pebbles pebbles,
// with a uniformly chosen round count in 0..max_rounds. Deduplicated.
MsPosition random_ms_position(std::mt19937& rng, const CorpusShape& shape);

// Every digraph (loops allowed) on exactly n elements up to isomorphism, n <= 3.
std::vector<StructurePtr> digraphs_up_to_iso(int n);

// All positions {A} vs {B} and {A1, A2} vs {B} with A, B ranging over the digraphs on
// 1..max_universe elements up to isomorphism (two-board sides use 1..2 elements), for
// every round count 0..max_rounds.
std::vector<MsPosition> exhaustive_ms_corpus(int max_universe = 3, int max_rounds = 2);

// Every exists x1 forall x2 formula with 1..max_clauses clauses, each clause a set of one to
// three of the literals x1, -x1, x2, -x2 (repeated clauses allowed), in a fixed order.
std::vector<QbfInstance> two_variable_qbfs(int max_clauses = 2);

struct CorpusReport {
  int instances = 0;
  int spoiler = 0;
  int duplicator = 0;
  int unknown = 0;
  int disagreements = 0;
  int certificates = 0;  // Spoiler wins whose certificate was converted and checked
  int bad_certificates = 0;
  std::vector<std::string> failures;  // one line per disagreement or bad certificate
  bool clean() const { return disagreements == 0 && bad_certificates == 0 && unknown == 0; }
};

// ms_winner against full-enumeration synth_separating at the same round count.
CorpusReport cross_check_synth(const std::vector<MsPosition>& corpus, const SearchLimits& limits);
// ms_winner against oracle::naive_ms_subset and against ms_winner after discard.
CorpusReport cross_check_subset(const std::vector<MsPosition>& corpus, const SearchLimits& limits);

// Converts a won trace and checks quantifier count and separation; empty string when sound.
std::string certificate_problem(const MsPosition& pos, const MsTrace& trace);

std::string describe(const MsPosition& pos);

}  // namespace gamelab
