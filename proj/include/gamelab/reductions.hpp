#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "gamelab/ef.hpp"
#include "gamelab/gadgets.hpp"
#include "gamelab/graph.hpp"
#include "gamelab/ms.hpp"
#include "gamelab/qbf.hpp"

namespace gamelab {

struct RoundBudget {
  int spoiler = 0;     // Spoiler is claimed to win with this many rounds or more
  int duplicator = 0;  // Duplicator is claimed to win with this many rounds or fewer
  bool operator==(const RoundBudget&) const = default;
};

RoundBudget domset_ef_rounds(int k);  // (k+1, k): the EF contract is an equivalence at k+1
RoundBudget domset_ms_rounds(int k);  // (2k+1, k+1)
RoundBudget qsat_ms_rounds(int k, int m, int t);  // (2k+m-t+2, 2k+m-t+1)

struct ReductionOutput {
  std::variant<MsPosition, EfPosition> instance;  // played at budget.spoiler rounds
  RoundBudget budget;
  int parameter = 0;  // k for DOMSET, t for QSAT
  std::string provenance;
  GadgetOutput gadget;

  const MsPosition& ms() const { return std::get<MsPosition>(instance); }
  const EfPosition& ef() const { return std::get<EfPosition>(instance); }
  bool is_ms() const { return std::holds_alternative<MsPosition>(instance); }
  // The same boards with a different round count.
  ReductionOutput with_rounds(int rounds) const;
  // Solver options carrying the gadget's automorphism generators.
  MsOptions ms_options() const;
  EfOptions ef_options() const;
};

ReductionOutput reduce_domset_to_ef(const Graph& g, int k);
ReductionOutput reduce_domset_to_ms(const Graph& g, int k);
ReductionOutput reduce_qsat_to_ms(const QbfInstance& phi, int t);

// Decides an MS reduction instance at its current round count.
using MsDecider = std::function<Winner(const ReductionOutput&)>;
MsDecider exact_ms_decider(const SearchLimits& limits = SearchLimits::from_env());

enum class DomsetSemantics {
  Listing,  // k rounds on A(G,k), output k-1
  Text,     // k+1 rounds on A(G,k), output k
};

struct ApproxQuery {
  int parameter = 0;  // k or t
  int rounds = 0;
  Winner verdict = Winner::Unknown;
};

struct ApproxResult {
  enum class Status { Output, NoOutput, Unknown } status = Status::NoOutput;
  int value = 0;
  std::vector<ApproxQuery> queries;
};

ApproxResult approx_domset(const Graph& g, const MsDecider& solver, DomsetSemantics semantics = DomsetSemantics::Listing);
// A loop that ends without a YES outputs 0.
ApproxResult approx_maxqsat(const QbfInstance& phi, const MsDecider& solver);

std::string to_string(ApproxResult::Status s);

}  // namespace gamelab
