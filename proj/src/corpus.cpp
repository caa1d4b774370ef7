#include "gamelab/corpus.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>

#include "gamelab/errors.hpp"
#include "gamelab/formula.hpp"
#include "gamelab/oracles.hpp"

namespace gamelab {

namespace {

StructurePtr make_digraph(std::size_t n, std::vector<Tuple> edges) {
  return std::make_shared<const Structure>(Schema::digraph(), n, std::vector<std::vector<Tuple>>{std::move(edges)});
}

// Adjacency bitmask of n*n bits under a vertex permutation.
unsigned permuted_mask(unsigned mask, int n, const std::vector<int>& perm) {
  unsigned out = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mask >> (a * n + b) & 1) out |= 1u << (perm[a] * n + perm[b]);
  return out;
}

std::string verdict(Winner w) { return to_string(w); }

void tally(CorpusReport& r, Winner w) {
  ++r.instances;
  if (w == Winner::Spoiler) ++r.spoiler;
  else if (w == Winner::Duplicator) ++r.duplicator;
  else ++r.unknown;
}

MsResult solve_with_certificate(const MsPosition& pos, const SearchLimits& limits) {
  MsOptions opt;
  opt.certificate = true;
  return ms_winner(pos, limits, opt);
}

void check_certificate(CorpusReport& r, const MsPosition& pos, const MsResult& res, int index) {
  if (res.winner != Winner::Spoiler) return;
  ++r.certificates;
  std::string problem = res.certificate ? certificate_problem(pos, *res.certificate) : "missing certificate";
  if (!problem.empty()) {
    ++r.bad_certificates;
    r.failures.push_back("#" + std::to_string(index) + " certificate: " + problem + " on " + describe(pos));
  }
}

}  // namespace

StructurePtr random_digraph(std::mt19937& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Tuple> edges;
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (coin(rng)) edges.push_back({a, b});
  return make_digraph(n, std::move(edges));
}

PebbledStructure random_pebbled(std::mt19937& rng, StructurePtr s, int count) {
  std::vector<Pebble> p;
  if (s->size() > 0) {
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(s->size() - 1));
    for (int i = 1; i <= count; ++i) p.push_back({"x" + std::to_string(i), pick(rng)});
  }
  return PebbledStructure(std::move(s), std::move(p));
}

MsPosition random_ms_position(std::mt19937& rng, const CorpusShape& shape) {
  std::uniform_int_distribution<int> size(1, shape.max_universe), boards(1, shape.max_boards),
      pebbles(0, shape.max_pebbles), rounds(0, shape.max_rounds);
  std::uniform_real_distribution<double> density(0.2, 0.6);
  MsPosition pos;
  pos.rounds = rounds(rng);
  int p = pebbles(rng);
  for (auto* side : {&pos.left, &pos.right}) {
    int c = boards(rng);
    for (int i = 0; i < c; ++i) side->push_back(random_pebbled(rng, random_digraph(rng, size(rng), density(rng)), p));
  }
  pos.deduplicate();
  return pos;
}

std::vector<StructurePtr> digraphs_up_to_iso(int n) {
  if (n < 0 || n > 3) throw DomainError("digraphs_up_to_iso: n must be in 0..3");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  std::set<unsigned> seen;
  std::vector<StructurePtr> out;
  for (unsigned mask = 0; mask < (1u << (n * n)); ++mask) {
    unsigned canon = mask;
    for (const auto& p : perms) canon = std::min(canon, permuted_mask(mask, n, p));
    if (!seen.insert(canon).second) continue;
    std::vector<Tuple> edges;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (canon >> (a * n + b) & 1) edges.push_back({Element(a), Element(b)});
    out.push_back(make_digraph(n, std::move(edges)));
  }
  return out;
}

std::vector<MsPosition> exhaustive_ms_corpus(int max_universe, int max_rounds) {
  std::vector<PebbledStructure> all, small;
  for (int n = 1; n <= max_universe; ++n)
    for (auto& s : digraphs_up_to_iso(n)) {
      all.emplace_back(s);
      if (n <= 2) small.emplace_back(s);
    }
  std::vector<MsPosition> out;
  for (int m = 0; m <= max_rounds; ++m) {
    for (const auto& a : all)
      for (const auto& b : all) out.push_back({{a}, {b}, m});
    for (std::size_t i = 0; i < small.size(); ++i)
      for (std::size_t j = i + 1; j < small.size(); ++j)
        for (const auto& b : small) out.push_back({{small[i], small[j]}, {b}, m});
  }
  return out;
}

std::vector<QbfInstance> two_variable_qbfs(int max_clauses) {
  const int lits[] = {1, -1, 2, -2};
  std::vector<std::vector<int>> clauses;
  for (int mask = 1; mask < 16; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) > 3) continue;
    std::vector<int> c;
    for (int i = 0; i < 4; ++i)
      if (mask >> i & 1) c.push_back(lits[i]);
    clauses.push_back(std::move(c));
  }
  std::vector<QbfInstance> out;
  std::vector<std::size_t> pick;
  // Nondecreasing index sequences of length 1..max_clauses.
  auto extend = [&](auto&& self, std::size_t from) -> void {
    if (!pick.empty()) {
      QbfInstance q{2, {Quantifier::Exists, Quantifier::Forall}, {}};
      for (auto i : pick) q.clauses.push_back(clauses[i]);
      out.push_back(std::move(q));
    }
    if (static_cast<int>(pick.size()) == max_clauses) return;
    for (std::size_t i = from; i < clauses.size(); ++i) {
      pick.push_back(i);
      self(self, i);
      pick.pop_back();
    }
  };
  extend(extend, 0);
  return out;
}

std::string certificate_problem(const MsPosition& pos, const MsTrace& trace) {
  if (!trace.won()) return "trace does not end in a win";
  Formula f = ms_strategy_to_formula(trace);
  if (f.quantifier_count() != static_cast<int>(trace.steps.size()))
    return "quantifier count " + std::to_string(f.quantifier_count()) + " != rounds used " +
           std::to_string(trace.steps.size());
  bool small = true;
  for (const auto* side : {&pos.left, &pos.right})
    for (const auto& b : *side) small = small && b.structure().size() <= 6;
  bool ok = small ? separates(f, pos.left, pos.right) : dnf_separates(f, pos.left, pos.right);
  return ok ? "" : "formula does not separate: " + print_formula(f);
}

std::string describe(const MsPosition& pos) {
  std::ostringstream os;
  auto side = [&](const std::vector<PebbledStructure>& boards) {
    os << "[";
    for (std::size_t i = 0; i < boards.size(); ++i) {
      const auto& s = boards[i].structure();
      os << (i ? " " : "") << "n" << s.size() << "{";
      bool first = true;
      for (std::size_t r = 0; r < s.relation_count(); ++r)
        for (const auto& t : s.relation(r).tuples()) {
          os << (first ? "" : ",");
          first = false;
          for (auto e : t) os << e;
        }
      os << "}";
      for (const auto& p : boards[i].pebbles()) os << p.color << "=" << p.element;
    }
    os << "]";
  };
  side(pos.left);
  os << " vs ";
  side(pos.right);
  os << " m=" << pos.rounds;
  return os.str();
}

CorpusReport cross_check_synth(const std::vector<MsPosition>& corpus, const SearchLimits& limits) {
  CorpusReport r;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& pos = corpus[i];
    auto res = solve_with_certificate(pos, limits);
    auto synth = synth_separating(pos.left, pos.right, pos.rounds, limits);
    Winner w = res.winner;
    if (synth.status == SynthResult::Status::Unknown) w = Winner::Unknown;
    tally(r, w);
    check_certificate(r, pos, res, static_cast<int>(i));
    if (w == Winner::Unknown) continue;
    bool found = synth.status == SynthResult::Status::Found;
    if ((w == Winner::Spoiler) != found) {
      ++r.disagreements;
      r.failures.push_back("#" + std::to_string(i) + " ms=" + verdict(w) + " synth=" + (found ? "found" : "none") +
                           " on " + describe(pos));
    } else if (found && !separates(synth.formula, pos.left, pos.right)) {
      ++r.disagreements;
      r.failures.push_back("#" + std::to_string(i) + " synthesized formula does not separate");
    }
  }
  return r;
}

CorpusReport cross_check_subset(const std::vector<MsPosition>& corpus, const SearchLimits& limits) {
  CorpusReport r;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& pos = corpus[i];
    auto res = solve_with_certificate(pos, limits);
    Winner ref = oracle::naive_ms_subset(pos.left, pos.right, pos.rounds, limits);
    Winner after = ms_winner(discard(pos), limits).winner;
    Winner w = res.winner;
    if (ref == Winner::Unknown || after == Winner::Unknown) w = Winner::Unknown;
    tally(r, w);
    check_certificate(r, pos, res, static_cast<int>(i));
    if (w == Winner::Unknown) continue;
    if (w != ref || w != after) {
      ++r.disagreements;
      r.failures.push_back("#" + std::to_string(i) + " ms=" + verdict(w) + " subset=" + verdict(ref) +
                           " discarded=" + verdict(after) + " on " + describe(pos));
    }
  }
  return r;
}

}  // namespace gamelab
