#include "gamelab/reductions.hpp"

#include "gamelab/errors.hpp"

namespace gamelab {

RoundBudget domset_ef_rounds(int k) { return {k + 1, k}; }
RoundBudget domset_ms_rounds(int k) { return {2 * k + 1, k + 1}; }
RoundBudget qsat_ms_rounds(int k, int m, int t) { return {2 * k + m - t + 2, 2 * k + m - t + 1}; }

ReductionOutput ReductionOutput::with_rounds(int rounds) const {
  ReductionOutput out = *this;
  std::visit([rounds](auto& pos) { pos.rounds = rounds; }, out.instance);
  return out;
}

MsOptions ReductionOutput::ms_options() const {
  MsOptions o;
  o.generators = {{gadget.structure, gadget.automorphism_generators}};
  return o;
}

EfOptions ReductionOutput::ef_options() const {
  EfOptions o;
  o.left_generators = gadget.automorphism_generators;
  o.right_generators = gadget.automorphism_generators;
  return o;
}

namespace {

PebbledStructure designated(const GadgetOutput& g, const std::string& name) {
  return PebbledStructure(g.structure, {{"x1", g.at(name)}});
}

std::string graph_summary(const Graph& g, int k) {
  return "domset n=" + std::to_string(g.size()) + " edges=" + std::to_string(g.edges().size()) +
         " k=" + std::to_string(k);
}

}  // namespace

ReductionOutput reduce_domset_to_ef(const Graph& g, int k) {
  ReductionOutput out;
  out.gadget = build_domset_structure(g, k);
  out.budget = domset_ef_rounds(k);
  out.parameter = k;
  out.instance = EfPosition{designated(out.gadget, "a"), designated(out.gadget, "a'"), out.budget.spoiler};
  out.provenance = graph_summary(g, k) + " -> ef";
  return out;
}

ReductionOutput reduce_domset_to_ms(const Graph& g, int k) {
  ReductionOutput out;
  out.gadget = build_domset_structure(g, k);
  out.budget = domset_ms_rounds(k);
  out.parameter = k;
  out.instance = MsPosition{{designated(out.gadget, "a")}, {designated(out.gadget, "a'")}, out.budget.spoiler};
  out.provenance = graph_summary(g, k) + " -> ms";
  return out;
}

ReductionOutput reduce_qsat_to_ms(const QbfInstance& phi, int t) {
  phi.validate();
  QbfInstance padded = phi.alternating() ? phi : make_alternating(phi);
  int m = static_cast<int>(padded.clauses.size());
  if (t < 1 || t > m) throw DomainError("qsat reduction needs 1 <= t <= number of clauses");
  ReductionOutput out;
  out.gadget = build_skyscraper(padded, t);
  out.budget = qsat_ms_rounds(padded.num_vars / 2, m, t);
  out.parameter = t;
  out.instance = MsPosition{{designated(out.gadget, "a")}, {designated(out.gadget, "a'")}, out.budget.spoiler};
  out.provenance = "qsat vars=" + std::to_string(padded.num_vars) + " m=" + std::to_string(m) +
                   " t=" + std::to_string(t) + " -> ms";
  return out;
}

MsDecider exact_ms_decider(const SearchLimits& limits) {
  return [limits](const ReductionOutput& r) { return ms_winner(r.ms(), limits, r.ms_options()).winner; };
}

ApproxResult approx_domset(const Graph& g, const MsDecider& solver, DomsetSemantics semantics) {
  ApproxResult res;
  for (int k = 1; k <= g.size(); ++k) {
    int rounds = semantics == DomsetSemantics::Listing ? k : k + 1;
    auto inst = reduce_domset_to_ms(g, k).with_rounds(rounds);
    Winner w = solver(inst);
    res.queries.push_back({k, rounds, w});
    if (w == Winner::Unknown) {
      res.status = ApproxResult::Status::Unknown;
      return res;
    }
    if (w == Winner::Spoiler) {
      res.status = ApproxResult::Status::Output;
      res.value = semantics == DomsetSemantics::Listing ? k - 1 : k;
      return res;
    }
  }
  return res;
}

ApproxResult approx_maxqsat(const QbfInstance& phi, const MsDecider& solver) {
  QbfInstance padded = phi.alternating() ? phi : make_alternating(phi);
  int m = static_cast<int>(padded.clauses.size());
  ApproxResult res;
  for (int t = m; t >= 1; --t) {
    auto red = reduce_qsat_to_ms(padded, t);
    auto inst = red.with_rounds(red.budget.duplicator);
    Winner w = solver(inst);
    res.queries.push_back({t, inst.ms().rounds, w});
    if (w == Winner::Unknown) {
      res.status = ApproxResult::Status::Unknown;
      return res;
    }
    if (w == Winner::Spoiler) {
      res.status = ApproxResult::Status::Output;
      res.value = t;
      return res;
    }
  }
  res.status = ApproxResult::Status::NoOutput;
  res.value = 0;
  return res;
}

std::string to_string(ApproxResult::Status s) {
  switch (s) {
    case ApproxResult::Status::Output: return "output";
    case ApproxResult::Status::NoOutput: return "no-output";
    case ApproxResult::Status::Unknown: return "unknown";
  }
  return "?";
}

}  // namespace gamelab
