#include "gamelab/oracles.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "gamelab/errors.hpp"

namespace gamelab::oracle {

namespace {

bool dominates(const Graph& g, unsigned mask) {
  for (int v = 0; v < g.size(); ++v) {
    if (mask >> v & 1) continue;
    bool ok = false;
    for (int u : g.neighbors(v)) ok = ok || (mask >> u & 1);
    if (!ok) return false;
  }
  return true;
}

int popcount(unsigned x) { return __builtin_popcount(x); }

int clause_count(const QbfInstance& q, const std::vector<int>& val) {
  int sat = 0;
  for (const auto& c : q.clauses) {
    bool s = false;
    for (int l : c) s = s || (l > 0 ? val[l - 1] == 1 : val[-l - 1] == 0);
    sat += s;
  }
  return sat;
}

int qbf_value(const QbfInstance& q, std::vector<int>& val, int var) {
  if (var == q.num_vars) return clause_count(q, val);
  bool ex = q.prefix[var] == Quantifier::Exists;
  int best = ex ? -1 : std::numeric_limits<int>::max();
  for (int b = 0; b < 2; ++b) {
    val[var] = b;
    int v = qbf_value(q, val, var + 1);
    best = ex ? std::max(best, v) : std::min(best, v);
  }
  val[var] = -1;
  return best;
}

std::vector<Element> pebble_points(const PebbledStructure& p) { return p.points(); }

std::vector<std::string> colors(const PebbledStructure& p) { return p.sorted_colors(); }

}  // namespace

std::vector<int> min_domset_witness(const Graph& g, int cap) {
  if (g.size() > cap) throw DomainError("graph exceeds oracle cap");
  for (int k = 0; k <= g.size(); ++k)
    for (unsigned mask = 0; mask < (1u << g.size()); ++mask)
      if (popcount(mask) == k && dominates(g, mask)) {
        std::vector<int> out;
        for (int v = 0; v < g.size(); ++v)
          if (mask >> v & 1u) out.push_back(v);
        return out;
      }
  return {};
}

int min_domset_bruteforce(const Graph& g, int cap) { return static_cast<int>(min_domset_witness(g, cap).size()); }

bool has_domset(const Graph& g, int k, int cap) { return min_domset_bruteforce(g, cap) <= k; }

int maxqsat_value(const QbfInstance& q, int cap) {
  if (q.num_vars > cap) throw DomainError("QBF exceeds oracle cap");
  std::vector<int> val(q.num_vars, -1);
  return qbf_value(q, val, 0);
}

bool qbf_true(const QbfInstance& q, int cap) {
  return maxqsat_value(q, cap) == static_cast<int>(q.clauses.size());
}

bool best_existential_move(const QbfInstance& q, const std::vector<int>& assignment) {
  std::vector<int> val(q.num_vars, -1);
  std::size_t var = assignment.size();
  for (std::size_t i = 0; i < var; ++i) val[i] = assignment[i];
  int best = -1;
  bool move = false;
  for (int b = 0; b < 2; ++b) {
    val[var] = b;
    int v = qbf_value(q, val, static_cast<int>(var) + 1);
    if (v > best) {
      best = v;
      move = b == 1;
    }
  }
  return move;
}

bool naive_matching(const PebbledStructure& a, const PebbledStructure& b) {
  if (colors(a) != colors(b)) return false;
  auto pa = pebble_points(a), pb = pebble_points(b);
  const std::size_t k = pa.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if ((pa[i] == pa[j]) != (pb[i] == pb[j])) return false;
  const Structure& sa = a.structure();
  const Structure& sb = b.structure();
  for (std::size_t r = 0; r < sa.relation_count(); ++r) {
    const int ar = sa.schema().relations()[r].arity;
    // Every index tuple over the point list; compare membership on both sides.
    std::vector<std::size_t> idx(ar, 0);
    if (k == 0) continue;
    while (true) {
      Tuple ta(ar), tb(ar);
      for (int i = 0; i < ar; ++i) {
        ta[i] = pa[idx[i]];
        tb[i] = pb[idx[i]];
      }
      const auto& A = sa.relation(r).tuples();
      const auto& B = sb.relation(r).tuples();
      bool ina = std::find(A.begin(), A.end(), ta) != A.end();
      bool inb = std::find(B.begin(), B.end(), tb) != B.end();
      if (ina != inb) return false;
      int pos = ar - 1;
      while (pos >= 0 && ++idx[pos] == k) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return true;
}

namespace {

std::string next_color(const PebbledStructure& p) {
  auto used = p.sorted_colors();
  return fresh_color(used);
}

bool ef_spoiler_wins(const PebbledStructure& l, const PebbledStructure& r, int rounds, Budget& b) {
  b.tick();
  if (!naive_matching(l, r)) return true;
  if (rounds == 0) return false;
  const std::string c = next_color(l);
  for (int side = 0; side < 2; ++side) {
    const PebbledStructure& s = side == 0 ? l : r;
    const PebbledStructure& o = side == 0 ? r : l;
    for (Element e = 0; e < s.structure().size(); ++e) {
      bool all_lose = true;
      for (Element w = 0; w < o.structure().size() && all_lose; ++w) {
        auto s2 = s.with(c, e), o2 = o.with(c, w);
        bool sw = side == 0 ? ef_spoiler_wins(s2, o2, rounds - 1, b)
                            : ef_spoiler_wins(o2, s2, rounds - 1, b);
        all_lose = sw;
      }
      if (all_lose) return true;
    }
  }
  return false;
}

using Side = std::vector<PebbledStructure>;

bool any_match(const Side& l, const Side& r) {
  for (const auto& a : l)
    for (const auto& b : r)
      if (naive_matching(a, b)) return true;
  return false;
}

bool ms_spoiler_wins(const Side& l, const Side& r, int rounds, Budget& b);

// Duplicator answers every structure of `other` with a nonempty subset of copies; Spoiler
// has already produced `moved`. Returns true if every choice of subsets loses for her.
bool all_subset_answers_lose(const Side& moved, const Side& other, bool moved_is_left,
                             const std::string& color, int rounds, Budget& b) {
  if (rounds == 0) {
    // With no rounds left, more copies can only add matching pairs: answer with all.
    Side full;
    for (const auto& p : other)
      for (Element w = 0; w < p.structure().size(); ++w) full.push_back(p.with(color, w));
    return moved_is_left ? !any_match(moved, full) : !any_match(full, moved);
  }
  Side chosen;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == other.size()) {
      bool sw = moved_is_left ? ms_spoiler_wins(moved, chosen, rounds, b)
                              : ms_spoiler_wins(chosen, moved, rounds, b);
      return sw;
    }
    const auto& p = other[i];
    const unsigned n = static_cast<unsigned>(p.structure().size());
    if (n == 0) return rec(i + 1);
    if (n >= 16) throw DomainError("naive_ms_subset: universe too large");
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::size_t before = chosen.size();
      for (Element w = 0; w < n; ++w)
        if (mask >> w & 1) chosen.push_back(p.with(color, w));
      bool lose = rec(i + 1);
      chosen.resize(before);
      if (!lose) return false;
    }
    return true;
  };
  return rec(0);
}

bool ms_spoiler_wins(const Side& l, const Side& r, int rounds, Budget& b) {
  b.tick();
  if (!any_match(l, r)) return true;
  if (rounds == 0) return false;
  std::vector<std::string> used;
  if (!l.empty()) used = l.front().sorted_colors();
  else if (!r.empty()) used = r.front().sorted_colors();
  const std::string c = fresh_color(used);
  for (int side = 0; side < 2; ++side) {
    const Side& s = side == 0 ? l : r;
    const Side& o = side == 0 ? r : l;
    bool empty_universe = false;
    for (const auto& p : s) empty_universe = empty_universe || p.structure().size() == 0;
    if (empty_universe) continue;
    std::vector<Element> f(s.size(), 0);
    while (true) {
      Side moved;
      for (std::size_t i = 0; i < s.size(); ++i) moved.push_back(s[i].with(c, f[i]));
      if (all_subset_answers_lose(moved, o, side == 0, c, rounds - 1, b)) return true;
      std::size_t pos = 0;
      while (pos < s.size() && ++f[pos] == s[pos].structure().size()) f[pos++] = 0;
      if (pos == s.size()) break;
    }
  }
  return false;
}

}  // namespace

Winner naive_ef(const PebbledStructure& left, const PebbledStructure& right, int rounds,
                const SearchLimits& limits) {
  Budget b(limits);
  try {
    return ef_spoiler_wins(left, right, rounds, b) ? Winner::Spoiler : Winner::Duplicator;
  } catch (const BudgetExhausted&) {
    return Winner::Unknown;
  }
}

Winner naive_ms_subset(const std::vector<PebbledStructure>& left,
                       const std::vector<PebbledStructure>& right, int rounds,
                       const SearchLimits& limits) {
  Budget b(limits);
  try {
    return ms_spoiler_wins(left, right, rounds, b) ? Winner::Spoiler : Winner::Duplicator;
  } catch (const BudgetExhausted&) {
    return Winner::Unknown;
  }
}

}  // namespace gamelab::oracle
