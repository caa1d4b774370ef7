#include "gamelab/ef.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "gamelab/errors.hpp"

namespace gamelab {

namespace {

using Points = std::vector<Element>;

class EfSolver {
 public:
  EfSolver(const Structure& a, const Structure& b, const EfOptions& opt, const SearchLimits& limits)
      : a_(a),
        b_(b),
        same_(&a == &b),
        sym_a_(a, opt.left_generators, opt.twin_reduction),
        sym_b_(&a == &b ? sym_a_ : Symmetry(b, opt.right_generators, opt.twin_reduction)),
        budget_(limits) {}

  Budget& budget() { return budget_; }
  // Elements that symmetry reduction must keep fixed (named pairs in forcing queries).
  void pin(Points a, Points b) {
    pin_a_ = std::move(a);
    pin_b_ = std::move(b);
  }

  bool matching(const Points& l, const Points& r) const { return same_atomic_type(a_, l, b_, r); }

  struct Move {
    int side;
    Element e;
    std::vector<Element> answers;
  };
  struct Expansion {
    bool immediate_win = false;
    std::vector<Move> moves;
  };

  // One-point extensions of both sides. If some extension type occurs on one side only,
  // Spoiler wins at once; otherwise lists Spoiler's moves (one per symmetry orbit) with the
  // answers that keep a matching pair (again one per orbit).
  Expansion expand(const Points& l, const Points& r, bool want_moves) {
    Expansion x;
    std::vector<std::string> sig_a(a_.size()), sig_b(b_.size());
    for (Element e = 0; e < a_.size(); ++e) extension_signature(a_, l, e, sig_a[e]);
    for (Element e = 0; e < b_.size(); ++e) extension_signature(b_, r, e, sig_b[e]);
    std::map<std::string, std::vector<Element>> group_a, group_b;
    for (Element e = 0; e < a_.size(); ++e) group_a[sig_a[e]].push_back(e);
    for (Element e = 0; e < b_.size(); ++e) group_b[sig_b[e]].push_back(e);
    if (group_a.size() != group_b.size()) {
      x.immediate_win = true;
      return x;
    }
    for (auto ia = group_a.begin(), ib = group_b.begin(); ia != group_a.end(); ++ia, ++ib)
      if (ia->first != ib->first) {
        x.immediate_win = true;
        return x;
      }
    if (!want_moves) return x;
    std::vector<bool> rep_a(a_.size(), false), rep_b(b_.size(), false);
    Points fixed_a = l, fixed_b = r;
    fixed_a.insert(fixed_a.end(), pin_a_.begin(), pin_a_.end());
    fixed_b.insert(fixed_b.end(), pin_b_.begin(), pin_b_.end());
    for (Element e : sym_a_.representatives(fixed_a)) rep_a[e] = true;
    for (Element e : sym_b_.representatives(fixed_b)) rep_b[e] = true;
    for (int side = 0; side < 2; ++side) {
      const auto& own_groups = side == 0 ? group_a : group_b;
      const auto& other_groups = side == 0 ? group_b : group_a;
      const auto& own_rep = side == 0 ? rep_a : rep_b;
      const auto& other_rep = side == 0 ? rep_b : rep_a;
      for (const auto& [sig, members] : own_groups) {
        std::vector<Element> answers;
        for (Element w : other_groups.at(sig))
          if (other_rep[w]) answers.push_back(w);
        for (Element e : members) {
          if (!own_rep[e]) continue;
          Move m{side, e, answers};
          // Mirror answer first when both sides are the same structure.
          if (same_) {
            auto it = std::find(m.answers.begin(), m.answers.end(), e);
            if (it != m.answers.end()) std::rotate(m.answers.begin(), it, it + 1);
          }
          x.moves.push_back(std::move(m));
        }
      }
    }
    return x;
  }

  static void extend(const Points& l, const Points& r, const Move& m, Element w, Points& l2, Points& r2) {
    l2 = l;
    r2 = r;
    (m.side == 0 ? l2 : r2).push_back(m.e);
    (m.side == 0 ? r2 : l2).push_back(w);
  }

  // Spoiler wins from a matching position with `rounds` rounds left.
  bool spoiler_wins(const Points& l, const Points& r, int rounds) {
    if (rounds == 0) return false;
    budget_.tick();
    if (same_ && l == r) return false;
    if (rounds == 1) return expand(l, r, false).immediate_win;
    std::string key = memo_key(l, r, rounds);
    if (auto it = memo_.find(key); it != memo_.end()) {
      ++budget_.stats().memo_hits;
      return it->second;
    }
    Expansion x = expand(l, r, true);
    bool result = x.immediate_win;
    Points l2, r2;
    for (const auto& m : x.moves) {
      if (result) break;
      bool duplicator_survives = false;
      for (Element w : m.answers) {
        extend(l, r, m, w, l2, r2);
        if (!spoiler_wins(l2, r2, rounds - 1)) {
          duplicator_survives = true;
          break;
        }
      }
      result = !duplicator_survives;
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  const Structure& a_;
  const Structure& b_;
  bool same_;
  Symmetry sym_a_;
  Symmetry sym_b_;
  Budget budget_;
  Points pin_a_, pin_b_;
  std::unordered_map<std::string, bool> memo_;

  static std::string memo_key(const Points& l, const Points& r, int rounds) {
    std::string k(reinterpret_cast<const char*>(l.data()), l.size() * sizeof(Element));
    k.push_back('|');
    k.append(reinterpret_cast<const char*>(r.data()), r.size() * sizeof(Element));
    k.push_back(static_cast<char>(rounds));
    return k;
  }
};

void check_position(const EfPosition& pos) {
  if (!(pos.left.structure().schema() == pos.right.structure().schema()))
    throw StructuralError("EF position: schemas differ");
  if (pos.left.sorted_colors() != pos.right.sorted_colors())
    throw StructuralError("EF position: color sets differ");
  if (pos.rounds < 0) throw StructuralError("negative round count");
}

}  // namespace

EfResult ef_winner(const EfPosition& pos, const SearchLimits& limits, const EfOptions& options) {
  check_position(pos);
  EfSolver solver(pos.left.structure(), pos.right.structure(), options, limits);
  EfResult res;
  try {
    auto l = pos.left.points(), r = pos.right.points();
    bool sw = !solver.matching(l, r) || solver.spoiler_wins(l, r, pos.rounds);
    res.winner = sw ? Winner::Spoiler : Winner::Duplicator;
  } catch (const BudgetExhausted&) {
    res.winner = Winner::Unknown;
  }
  res.stats = solver.budget().finish();
  return res;
}

namespace {

bool forced_with(EfSolver& solver, const Structure& a, const Structure& b, const Points& l,
                 const Points& r, Element u, Element v, int m_prime) {
  for (int side = 0; side < 2; ++side) {
    const Structure& other = side == 0 ? b : a;
    for (Element w = 0; w < other.size(); ++w) {
      if (w == (side == 0 ? v : u)) continue;
      Points l2 = l, r2 = r;
      l2.push_back(side == 0 ? u : w);
      r2.push_back(side == 0 ? w : v);
      if (solver.matching(l2, r2) && !solver.spoiler_wins(l2, r2, m_prime)) return false;
    }
  }
  return true;
}

bool wins_or_forces(EfSolver& solver, const Structure& a, const Structure& b, const Points& l,
                    const Points& r, int remaining, int depth,
                    const std::vector<std::pair<Element, Element>>& pairs) {
  solver.budget().tick();
  if (!solver.matching(l, r)) return true;
  if (remaining >= 1)
    for (auto [u, v] : pairs)
      if (forced_with(solver, a, b, l, r, u, v, remaining - 1)) return true;
  if (depth > 0 && remaining > 0) {
    auto x = solver.expand(l, r, true);
    if (x.immediate_win) return true;
    Points l2, r2;
    for (const auto& m : x.moves) {
      bool all = true;
      for (Element w : m.answers) {
        EfSolver::extend(l, r, m, w, l2, r2);
        if (!wins_or_forces(solver, a, b, l2, r2, remaining - 1, depth - 1, pairs)) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
  }
  return solver.spoiler_wins(l, r, remaining);
}

}  // namespace

std::optional<bool> ef_forced(const EfPosition& pos, Element u, Element v, int m_prime,
                              const SearchLimits& limits, const EfOptions& options) {
  check_position(pos);
  if (u >= pos.left.structure().size() || v >= pos.right.structure().size())
    throw StructuralError("forced pair outside the universes");
  EfSolver solver(pos.left.structure(), pos.right.structure(), options, limits);
  try {
    return forced_with(solver, pos.left.structure(), pos.right.structure(), pos.left.points(),
                       pos.right.points(), u, v, m_prime);
  } catch (const BudgetExhausted&) {
    return std::nullopt;
  }
}

std::optional<bool> ef_wins_or_forces(const EfPosition& pos,
                                      const std::vector<std::pair<Element, Element>>& pairs,
                                      int depth, const SearchLimits& limits,
                                      const EfOptions& options) {
  check_position(pos);
  EfSolver solver(pos.left.structure(), pos.right.structure(), options, limits);
  Points pa, pb;
  for (auto [u, v] : pairs) {
    pa.push_back(u);
    pb.push_back(v);
  }
  solver.pin(pa, pb);
  try {
    return wins_or_forces(solver, pos.left.structure(), pos.right.structure(), pos.left.points(),
                          pos.right.points(), pos.rounds, depth, pairs);
  } catch (const BudgetExhausted&) {
    return std::nullopt;
  }
}

}  // namespace gamelab
