#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gamelab/formula.hpp"
#include "gamelab/pebbled.hpp"
#include "gamelab/search.hpp"
#include "gamelab/symmetry.hpp"

namespace gamelab {

enum class Side { Left, Right };
std::string to_string(Side s);

struct MsPosition {
  std::vector<PebbledStructure> left;
  std::vector<PebbledStructure> right;
  int rounds = 0;

  // Pebble colors shared by every board (normalized order); empty when both sides are empty.
  std::vector<std::string> colors() const;
  // Throws StructuralError unless all boards share the schema and the color set.
  void validate() const;
  // Removes repeated boards on each side, keeping first occurrences.
  void deduplicate();
};

struct SpoilerMove {
  Side side = Side::Left;
  std::string color;
  // placement[i] is played on the i-th board of the chosen side.
  std::vector<Element> placement;
};

// Applies the move, gives every board on the other side all one-pebble extensions with
// the same color, decrements the round count and deduplicates.
MsPosition oblivious_response(const MsPosition& pos, const SpoilerMove& move);
// Drops every board that forms a matching pair with no board on the other side.
MsPosition discard(const MsPosition& pos);
bool has_matching_pair(const MsPosition& pos);

struct TraceStep {
  SpoilerMove move;
  MsPosition before;  // after the previous discard
  MsPosition after;   // after the response and discard
  std::vector<PebbledStructure> left_discarded;
};

struct MsTrace {
  MsPosition start;                               // as given
  std::vector<PebbledStructure> left_discarded;   // dropped by the initial discard
  std::vector<TraceStep> steps;
  bool won() const;
};

struct MsOptions {
  // Automorphism generators per structure object, used for orbit reduction of placements.
  std::vector<std::pair<StructurePtr, std::vector<Permutation>>> generators;
  bool twin_reduction = true;
  bool certificate = false;
  // Positions with at most this many rounds left first look for a matching pair on which
  // Duplicator wins the EF game; such a pair decides the position for her.
  int ef_pruning_rounds = 2;
};

struct MsResult {
  Winner winner = Winner::Unknown;
  SearchStats stats;
  std::optional<MsTrace> certificate;  // Spoiler wins with certificate mode on
};

MsResult ms_winner(const MsPosition& pos, const SearchLimits& limits = SearchLimits::from_env(),
                   const MsOptions& options = {});

// Scripts -------------------------------------------------------------------------------

struct SpoilerScript {
  std::string name;
  std::vector<Side> sides;
  // Called with the current (discarded) position and the 0-based round index.
  std::function<SpoilerMove(const MsPosition&, int)> step;
};

struct ScriptResult {
  bool win = false;
  MsTrace trace;
  std::string message;  // why it failed, if it did
};

// Runs the script against the oblivious Duplicator with discard after every round.
ScriptResult run_spoiler_script(const SpoilerScript& script, const MsPosition& pos);

struct DuplicatorScript {
  std::string name;
  // Given the position before the move and Spoiler's move, a nonempty list of answers for
  // each board on the other side.
  std::function<std::vector<std::vector<Element>>(const MsPosition&, const SpoilerMove&)> respond;
};

// Every Spoiler move sequence against the script's answers leaves a matching pair after the
// last round. nullopt when the budget runs out.
std::optional<bool> check_duplicator_strategy(const DuplicatorScript& strategy, const MsPosition& pos,
                                              const SearchLimits& limits = SearchLimits::from_env());

struct SubGame {
  std::vector<PebbledStructure> left;
  std::vector<PebbledStructure> right;
  SpoilerScript script;
};

// One script that plays each sub-script on its own boards. Throws StructuralError when the
// side sequences differ. Boards of the composed position that belong to no sub-game are
// played on the first element.
SpoilerScript parallel_compose(const std::vector<SubGame>& subgames);

// Pairs each board with the first matching board on the moving side and answers with the
// same element when the two boards are equal, otherwise with an element that keeps an
// EF-Duplicator-winning pair for the remaining rounds (a matching element as a fallback).
DuplicatorScript mirror_duplicator();

// Certificates ----------------------------------------------------------------------------

// Left rounds become EXISTS, right rounds FORALL; the matrix is the disjunction of the
// final left types together with the partial types of left boards discarded on the way.
Formula ms_strategy_to_formula(const MsTrace& trace);

// Model checking specialized to disjunctive matrices (prefix types prune the search).
bool dnf_separates(const Formula& f, const std::vector<PebbledStructure>& left,
                   const std::vector<PebbledStructure>& right,
                   const SearchLimits& limits = SearchLimits::unlimited());

// Complete atomic type of `elements` (named by `terms`) as a conjunction of literals.
Matrix type_conjunction(const Structure& s, const std::vector<std::string>& terms,
                        const std::vector<Element>& elements);

}  // namespace gamelab
