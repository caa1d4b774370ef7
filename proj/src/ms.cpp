#include "gamelab/ms.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "gamelab/ef.hpp"
#include "gamelab/errors.hpp"

namespace gamelab {

std::string to_string(Side s) { return s == Side::Left ? "left" : "right"; }

// ---------------------------------------------------------------- positions

namespace {

using Boards = std::vector<PebbledStructure>;

// Hash key identifying a board up to equality of structure objects (equal structures held
// by different pointers are folded together through `canon`).
class BoardKeys {
 public:
  std::string operator()(const PebbledStructure& p) {
    const Structure* s = p.structure_ptr().get();
    auto it = canon_.find(s);
    std::size_t id;
    if (it != canon_.end()) {
      id = it->second;
    } else {
      id = reps_.size();
      for (std::size_t i = 0; i < reps_.size(); ++i)
        if (*reps_[i] == *s) {
          id = i;
          break;
        }
      if (id == reps_.size()) reps_.push_back(s);
      canon_.emplace(s, id);
    }
    std::string k = std::to_string(id);
    k.push_back('|');
    for (const auto& c : p.sorted_colors()) {
      k += c;
      k.push_back(',');
    }
    auto pts = p.points();
    k.append(reinterpret_cast<const char*>(pts.data()), pts.size() * sizeof(Element));
    return k;
  }

 private:
  std::unordered_map<const Structure*, std::size_t> canon_;
  std::vector<const Structure*> reps_;
};

Boards dedup_boards(const Boards& in) {
  BoardKeys keys;
  std::unordered_set<std::string> seen;
  Boards out;
  for (const auto& b : in)
    if (seen.insert(keys(b)).second) out.push_back(b);
  return out;
}

std::unordered_set<std::string> type_keys(const Boards& side) {
  std::unordered_set<std::string> out;
  for (const auto& b : side) out.insert(atomic_type_key(b));
  return out;
}

void check_placement(const Boards& side, const SpoilerMove& move) {
  if (move.placement.size() != side.size()) throw ScriptError("placement does not cover the side");
  for (std::size_t i = 0; i < side.size(); ++i)
    if (move.placement[i] >= side[i].structure().size()) throw ScriptError("placement outside a universe");
}

}  // namespace

std::vector<std::string> MsPosition::colors() const {
  if (!left.empty()) return left.front().sorted_colors();
  if (!right.empty()) return right.front().sorted_colors();
  return {};
}

void MsPosition::validate() const {
  if (rounds < 0) throw StructuralError("negative round count");
  const PebbledStructure* first = !left.empty() ? &left.front() : !right.empty() ? &right.front() : nullptr;
  if (!first) return;
  auto colors = first->sorted_colors();
  for (const auto* side : {&left, &right})
    for (const auto& b : *side) {
      if (!(b.structure().schema() == first->structure().schema()))
        throw StructuralError("MS position: schemas differ");
      if (b.sorted_colors() != colors) throw StructuralError("MS position: color sets differ");
    }
}

void MsPosition::deduplicate() {
  left = dedup_boards(left);
  right = dedup_boards(right);
}

MsPosition oblivious_response(const MsPosition& pos, const SpoilerMove& move) {
  if (pos.rounds < 1) throw StructuralError("no rounds left");
  auto used = pos.colors();
  if (move.color.empty()) throw StructuralError("empty pebble color");
  if (std::find(used.begin(), used.end(), move.color) != used.end())
    throw StructuralError("color already in use: " + move.color);
  const bool left_moves = move.side == Side::Left;
  const Boards& moved = left_moves ? pos.left : pos.right;
  const Boards& other = left_moves ? pos.right : pos.left;
  check_placement(moved, move);
  Boards a, b;
  for (std::size_t i = 0; i < moved.size(); ++i) a.push_back(moved[i].with(move.color, move.placement[i]));
  for (const auto& p : other)
    for (Element e = 0; e < p.structure().size(); ++e) b.push_back(p.with(move.color, e));
  MsPosition next;
  next.left = left_moves ? std::move(a) : std::move(b);
  next.right = left_moves ? std::move(b) : std::move(a);
  next.rounds = pos.rounds - 1;
  next.deduplicate();
  return next;
}

MsPosition discard(const MsPosition& pos) {
  auto kl = type_keys(pos.left), kr = type_keys(pos.right);
  MsPosition out;
  out.rounds = pos.rounds;
  for (const auto& b : pos.left)
    if (kr.count(atomic_type_key(b))) out.left.push_back(b);
  for (const auto& b : pos.right)
    if (kl.count(atomic_type_key(b))) out.right.push_back(b);
  return out;
}

bool has_matching_pair(const MsPosition& pos) {
  auto kr = type_keys(pos.right);
  for (const auto& b : pos.left)
    if (kr.count(atomic_type_key(b))) return true;
  return false;
}

bool MsTrace::won() const {
  if (steps.empty()) return !has_matching_pair(start);
  return !has_matching_pair(steps.back().after);
}

// ---------------------------------------------------------------- exact solver

namespace {

struct Board {
  std::uint32_t sid = 0;
  std::uint32_t key = 0;
  std::vector<Element> pts;
  bool operator<(const Board& o) const { return sid != o.sid ? sid < o.sid : pts < o.pts; }
  bool operator==(const Board& o) const { return sid == o.sid && pts == o.pts; }
};

struct State {
  std::vector<Board> side[2];
  int rounds = 0;
};

void canonicalize(State& s) {
  for (auto& v : s.side) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
}

std::string state_key(const State& s) {
  std::string k;
  k.push_back(static_cast<char>(s.rounds));
  for (const auto& v : s.side) {
    std::uint32_t n = static_cast<std::uint32_t>(v.size());
    k.append(reinterpret_cast<const char*>(&n), sizeof n);
    for (const auto& b : v) {
      k.append(reinterpret_cast<const char*>(&b.sid), sizeof b.sid);
      k.append(reinterpret_cast<const char*>(b.pts.data()), b.pts.size() * sizeof(Element));
    }
  }
  return k;
}

struct InternalMove {
  int side = 0;
  std::vector<Element> placement;
};

class MsSolver {
 public:
  MsSolver(std::vector<StructurePtr> structs, const MsOptions& opt, const SearchLimits& limits)
      : structs_(std::move(structs)), budget_(limits), ef_rounds_(opt.ef_pruning_rounds) {
    for (const auto& s : structs_) {
      std::vector<Permutation> gens;
      for (const auto& [ptr, g] : opt.generators)
        if (ptr == s) gens.insert(gens.end(), g.begin(), g.end());
      syms_.emplace_back(*s, std::move(gens), opt.twin_reduction);
    }
  }

  Budget& budget() { return budget_; }
  const StructurePtr& structure(std::uint32_t sid) const { return structs_[sid]; }

  std::uint32_t root_key(const std::string& type) { return intern("R" + type); }

  std::uint32_t child_key(const Board& b, Element e) {
    extension_signature(*structs_[b.sid], b.pts, e, sig_);
    std::string k = "C";
    k.append(reinterpret_cast<const char*>(&b.key), sizeof b.key);
    k += sig_;
    return intern(k);
  }

  Board child(const Board& b, Element e) {
    Board c{b.sid, child_key(b, e), b.pts};
    c.pts.push_back(e);
    return c;
  }

  struct Ext {
    Element e;
    std::uint32_t key;
  };

  // One extension per symmetry orbit of the board, with its type key.
  const std::vector<Ext>& extensions(const Board& b) {
    std::string k(reinterpret_cast<const char*>(&b.sid), sizeof b.sid);
    k.append(reinterpret_cast<const char*>(b.pts.data()), b.pts.size() * sizeof(Element));
    auto it = ext_.find(k);
    if (it != ext_.end()) return it->second;
    std::vector<Ext> v;
    for (Element e : syms_[b.sid].representatives(b.pts)) v.push_back({e, child_key(b, e)});
    return ext_.emplace(std::move(k), std::move(v)).first->second;
  }

  // Spoiler wins from a discarded (mutually matching or empty) state.
  bool spoiler_wins(const State& s) {
    if (s.side[0].empty() || s.side[1].empty()) return true;
    if (s.rounds == 0) return false;
    budget_.tick();
    std::string key = state_key(s);
    if (auto it = memo_.find(key); it != memo_.end()) {
      ++budget_.stats().memo_hits;
      return it->second;
    }
    bool win = false;
    if (s.rounds <= ef_rounds_ && has_ef_duplicator_pair(s)) {
      memo_.emplace(std::move(key), false);
      return false;
    }
    int first = s.side[0].size() <= s.side[1].size() ? 0 : 1;
    for (int side : {first, 1 - first}) {
      InternalMove m;
      if (moves_win(s, side, m)) {
        win = true;
        moves_.emplace(key, std::move(m));
        break;
      }
    }
    memo_.emplace(std::move(key), win);
    return win;
  }

  const InternalMove* stored_move(const State& s) const {
    auto it = moves_.find(state_key(s));
    return it == moves_.end() ? nullptr : &it->second;
  }

  // The state after the move, the response and the discard; collects dropped left boards.
  State successor(const State& s, const InternalMove& m, std::vector<Board>* left_dropped) {
    const auto& S = s.side[m.side];
    auto kids = children(s.side[1 - m.side]);
    State next;
    next.rounds = s.rounds - 1;
    std::unordered_set<std::uint32_t> kept;
    for (std::size_t i = 0; i < S.size(); ++i) {
      Board c = child(S[i], m.placement[i]);
      if (kids.count(c.key)) {
        kept.insert(c.key);
        next.side[m.side].push_back(std::move(c));
      } else if (m.side == 0 && left_dropped) {
        left_dropped->push_back(std::move(c));
      }
    }
    for (auto& [k, v] : kids) {
      bool keep = kept.count(k) > 0;
      for (auto& c : v) {
        if (keep)
          next.side[1 - m.side].push_back(c);
        else if (m.side == 1 && left_dropped)
          left_dropped->push_back(c);
      }
    }
    canonicalize(next);
    return next;
  }

 private:
  std::vector<StructurePtr> structs_;
  std::vector<Symmetry> syms_;
  Budget budget_;
  std::unordered_map<std::string, std::uint32_t> keys_;
  std::unordered_map<std::string, std::vector<Ext>> ext_;
  std::unordered_map<std::string, bool> memo_;
  std::unordered_map<std::string, InternalMove> moves_;
  std::unordered_map<std::string, bool> ef_memo_;
  int ef_rounds_ = 0;
  std::string sig_;

  // Duplicator keeping a single pair alive wins the whole position.
  bool has_ef_duplicator_pair(const State& s) {
    for (const auto& a : s.side[0])
      for (const auto& b : s.side[1])
        if (a.key == b.key && ef_duplicator(a, b, s.rounds)) return true;
    return false;
  }

  // EF game on a matching pair; both sides only need one extension per symmetry orbit.
  bool ef_duplicator(const Board& a, const Board& b, int rounds) {
    if (rounds == 0 || a == b) return true;
    std::string k(1, static_cast<char>(rounds));
    for (const Board* x : {&a, &b}) {
      std::uint32_t n = static_cast<std::uint32_t>(x->pts.size());
      k.append(reinterpret_cast<const char*>(&x->sid), sizeof x->sid);
      k.append(reinterpret_cast<const char*>(&n), sizeof n);
      k.append(reinterpret_cast<const char*>(x->pts.data()), x->pts.size() * sizeof(Element));
    }
    if (auto it = ef_memo_.find(k); it != ef_memo_.end()) return it->second;
    budget_.tick();
    bool dup = true;
    for (int dir = 0; dir < 2 && dup; ++dir) {
      const Board& mover = dir == 0 ? a : b;
      const Board& other = dir == 0 ? b : a;
      const auto& answers = extensions(other);
      for (const auto& x : extensions(mover)) {
        bool answered = false;
        for (const auto& y : answers) {
          if (y.key != x.key) continue;
          if (rounds == 1) {
            answered = true;
            break;
          }
          Board ca{mover.sid, x.key, mover.pts}, cb{other.sid, y.key, other.pts};
          ca.pts.push_back(x.e);
          cb.pts.push_back(y.e);
          if (dir == 0 ? ef_duplicator(ca, cb, rounds - 1) : ef_duplicator(cb, ca, rounds - 1)) {
            answered = true;
            break;
          }
        }
        if (!answered) {
          dup = false;
          break;
        }
      }
    }
    ef_memo_.emplace(std::move(k), dup);
    return dup;
  }

  std::uint32_t intern(const std::string& k) {
    auto [it, fresh] = keys_.emplace(k, static_cast<std::uint32_t>(keys_.size()));
    return it->second;
  }

  // Oblivious response of a side, one copy per symmetry orbit, grouped by type key.
  std::unordered_map<std::uint32_t, std::vector<Board>> children(const std::vector<Board>& side) {
    std::unordered_map<std::uint32_t, std::vector<Board>> kids;
    for (const auto& y : side)
      for (const auto& x : extensions(y)) {
        Board c{y.sid, x.key, y.pts};
        c.pts.push_back(x.e);
        kids[x.key].push_back(std::move(c));
      }
    return kids;
  }

  bool moves_win(const State& s, int side, InternalMove& out) {
    const auto& S = s.side[side];
    for (const auto& b : S)
      if (structs_[b.sid]->size() == 0) return false;
    auto kids = children(s.side[1 - side]);
    struct Cand {
      Element e;
      std::uint32_t key;
      std::size_t weight;
    };
    std::vector<std::vector<Cand>> cands(S.size());
    out.side = side;
    out.placement.assign(S.size(), 0);
    std::vector<std::size_t> alive;
    for (std::size_t i = 0; i < S.size(); ++i) {
      bool killed = false;
      for (const auto& x : extensions(S[i])) {
        auto it = kids.find(x.key);
        if (it == kids.end()) {
          out.placement[i] = x.e;
          killed = true;
          break;
        }
        cands[i].push_back({x.e, x.key, it->second.size()});
      }
      if (killed) continue;
      std::stable_sort(cands[i].begin(), cands[i].end(),
                       [](const Cand& a, const Cand& b) { return a.weight < b.weight; });
      alive.push_back(i);
    }
    if (alive.empty()) return true;
    if (s.rounds == 1) return false;
    std::stable_sort(alive.begin(), alive.end(),
                     [&](std::size_t a, std::size_t b) { return cands[a].size() < cands[b].size(); });
    std::vector<Board> placed;
    std::function<bool(std::size_t)> rec = [&](std::size_t d) -> bool {
      if (d > 0) {
        // Adding boards to the moving side only adds matching pairs, so a Duplicator win
        // on a partial placement refutes all its completions.
        State next;
        next.rounds = s.rounds - 1;
        next.side[side] = placed;
        std::unordered_set<std::uint32_t> used;
        for (const auto& b : placed)
          if (used.insert(b.key).second) {
            const auto& v = kids.at(b.key);
            next.side[1 - side].insert(next.side[1 - side].end(), v.begin(), v.end());
          }
        canonicalize(next);
        if (!spoiler_wins(next)) return false;
        if (d == alive.size()) return true;
      }
      std::size_t i = alive[d];
      for (const auto& c : cands[i]) {
        Board b{S[i].sid, c.key, S[i].pts};
        b.pts.push_back(c.e);
        placed.push_back(std::move(b));
        out.placement[i] = c.e;
        bool ok = rec(d + 1);
        placed.pop_back();
        if (ok) return true;
      }
      return false;
    };
    return rec(0);
  }
};

struct Layout {
  std::vector<std::string> base_colors;
  std::vector<std::string> move_colors;
  std::vector<StructurePtr> structs;
  std::unordered_map<const Structure*, std::uint32_t> sid;

  PebbledStructure to_pebbled(const Board& b) const {
    const auto& s = structs[b.sid];
    std::size_t nc = s->constants().size();
    std::vector<Pebble> p;
    for (std::size_t i = 0; i < base_colors.size(); ++i) p.push_back({base_colors[i], b.pts[nc + i]});
    for (std::size_t j = 0; nc + base_colors.size() + j < b.pts.size(); ++j)
      p.push_back({move_colors[j], b.pts[nc + base_colors.size() + j]});
    return PebbledStructure(s, std::move(p));
  }
  Boards convert(const std::vector<Board>& v) const {
    Boards out;
    for (const auto& b : v) out.push_back(to_pebbled(b));
    return out;
  }
  MsPosition to_position(const State& s) const { return {convert(s.side[0]), convert(s.side[1]), s.rounds}; }
};

}  // namespace

MsResult ms_winner(const MsPosition& pos, const SearchLimits& limits, const MsOptions& options) {
  pos.validate();
  Layout layout;
  layout.base_colors = pos.colors();
  std::vector<std::string> used = layout.base_colors;
  for (int i = 0; i < pos.rounds; ++i) {
    layout.move_colors.push_back(fresh_color(used));
    used.push_back(layout.move_colors.back());
  }
  for (const auto* side : {&pos.left, &pos.right})
    for (const auto& b : *side)
      if (layout.sid.emplace(b.structure_ptr().get(), static_cast<std::uint32_t>(layout.structs.size())).second)
        layout.structs.push_back(b.structure_ptr());
  MsSolver solver(layout.structs, options, limits);
  State start;
  start.rounds = pos.rounds;
  std::unordered_set<std::uint32_t> keys[2];
  for (int side = 0; side < 2; ++side)
    for (const auto& b : side == 0 ? pos.left : pos.right) {
      Board x{layout.sid.at(b.structure_ptr().get()), solver.root_key(atomic_type_key(b)), b.points()};
      keys[side].insert(x.key);
      start.side[side].push_back(std::move(x));
    }
  canonicalize(start);
  State s0 = start;
  std::vector<Board> dropped_left;
  for (int side = 0; side < 2; ++side) {
    auto& v = s0.side[side];
    std::vector<Board> kept;
    for (auto& b : v) {
      if (keys[1 - side].count(b.key))
        kept.push_back(b);
      else if (side == 0)
        dropped_left.push_back(b);
    }
    v = std::move(kept);
  }
  MsResult res;
  try {
    bool win = solver.spoiler_wins(s0);
    res.winner = win ? Winner::Spoiler : Winner::Duplicator;
    if (win && options.certificate) {
      MsTrace t;
      t.start = pos;
      t.left_discarded = layout.convert(dropped_left);
      State cur = s0;
      while (!cur.side[0].empty() && !cur.side[1].empty()) {
        const InternalMove* m = solver.stored_move(cur);
        if (!m) throw std::logic_error("ms_winner: winning line has no stored move");
        TraceStep step;
        step.before = layout.to_position(cur);
        step.move.side = m->side == 0 ? Side::Left : Side::Right;
        step.move.color = layout.move_colors[pos.rounds - cur.rounds];
        step.move.placement = m->placement;
        std::vector<Board> dropped;
        State next = solver.successor(cur, *m, &dropped);
        step.after = layout.to_position(next);
        step.left_discarded = layout.convert(dropped);
        t.steps.push_back(std::move(step));
        cur = std::move(next);
      }
      res.certificate = std::move(t);
    }
  } catch (const BudgetExhausted&) {
    res.winner = Winner::Unknown;
  }
  res.stats = solver.budget().finish();
  return res;
}

// ---------------------------------------------------------------- scripts

ScriptResult run_spoiler_script(const SpoilerScript& script, const MsPosition& pos) {
  pos.validate();
  if (static_cast<int>(script.sides.size()) > pos.rounds)
    throw ScriptError("script " + script.name + " needs more rounds than the position has");
  ScriptResult res;
  res.trace.start = pos;
  MsPosition start = pos;
  start.deduplicate();
  MsPosition cur = discard(start);
  {
    auto kept = type_keys(cur.left);
    for (const auto& b : start.left)
      if (!kept.count(atomic_type_key(b))) res.trace.left_discarded.push_back(b);
  }
  for (std::size_t i = 0; i < script.sides.size(); ++i) {
    if (!has_matching_pair(cur)) break;
    SpoilerMove move = script.step(cur, static_cast<int>(i));
    if (move.side != script.sides[i])
      throw ScriptError("script " + script.name + " played the wrong side in round " + std::to_string(i + 1));
    if (move.color.empty()) move.color = fresh_color(cur.colors());
    check_placement(move.side == Side::Left ? cur.left : cur.right, move);
    TraceStep step;
    step.move = move;
    step.before = cur;
    MsPosition resp = oblivious_response(cur, move);
    step.after = discard(resp);
    auto kept = type_keys(step.after.left);
    for (const auto& b : resp.left)
      if (!kept.count(atomic_type_key(b))) step.left_discarded.push_back(b);
    cur = step.after;
    res.trace.steps.push_back(std::move(step));
  }
  res.win = !has_matching_pair(cur);
  if (!res.win)
    res.message = std::to_string(cur.left.size()) + " left and " + std::to_string(cur.right.size()) +
                  " right boards still match after " + std::to_string(res.trace.steps.size()) + " rounds";
  return res;
}

std::optional<bool> check_duplicator_strategy(const DuplicatorScript& strategy, const MsPosition& pos,
                                              const SearchLimits& limits) {
  pos.validate();
  Budget budget(limits);
  std::function<bool(const MsPosition&)> rec = [&](const MsPosition& cur) -> bool {
    budget.tick();
    if (!has_matching_pair(cur)) return false;
    if (cur.rounds == 0) return true;
    const std::string color = fresh_color(cur.colors());
    for (Side side : {Side::Left, Side::Right}) {
      const Boards& moved = side == Side::Left ? cur.left : cur.right;
      const Boards& other = side == Side::Left ? cur.right : cur.left;
      bool blocked = false;
      for (const auto& b : moved) blocked = blocked || b.structure().size() == 0;
      if (blocked) continue;
      SpoilerMove move{side, color, std::vector<Element>(moved.size(), 0)};
      while (true) {
        auto answers = strategy.respond(cur, move);
        if (answers.size() != other.size())
          throw ScriptError("strategy " + strategy.name + " answered the wrong number of boards");
        MsPosition next;
        next.rounds = cur.rounds - 1;
        Boards a, b;
        for (std::size_t i = 0; i < moved.size(); ++i) a.push_back(moved[i].with(color, move.placement[i]));
        for (std::size_t i = 0; i < other.size(); ++i) {
          if (answers[i].empty() && other[i].structure().size() > 0)
            throw ScriptError("strategy " + strategy.name + " gave an empty answer set");
          for (Element e : answers[i]) {
            if (e >= other[i].structure().size()) throw ScriptError("answer outside a universe");
            b.push_back(other[i].with(color, e));
          }
        }
        next.left = side == Side::Left ? std::move(a) : std::move(b);
        next.right = side == Side::Left ? std::move(b) : std::move(a);
        next.deduplicate();
        if (!rec(discard(next))) return false;
        std::size_t i = 0;
        while (i < moved.size() && ++move.placement[i] == moved[i].structure().size()) move.placement[i++] = 0;
        if (i == moved.size()) break;
      }
    }
    return true;
  };
  try {
    MsPosition start = pos;
    start.deduplicate();
    return rec(discard(start));
  } catch (const BudgetExhausted&) {
    return std::nullopt;
  }
}

SpoilerScript parallel_compose(const std::vector<SubGame>& subgames) {
  SpoilerScript out;
  out.name = "parallel";
  for (std::size_t i = 0; i < subgames.size(); ++i) {
    out.name += (i == 0 ? "(" : ",") + subgames[i].script.name;
    if (i > 0 && subgames[i].script.sides != subgames[0].script.sides)
      throw StructuralError("parallel composition needs one side sequence for all sub-games");
  }
  out.name += ")";
  if (!subgames.empty()) out.sides = subgames[0].script.sides;
  // Every current board descends from exactly one initial board; ownership is read off the
  // initial pebbles.
  std::vector<std::string> base;
  for (const auto& g : subgames) {
    if (!g.left.empty()) base = g.left.front().sorted_colors();
    else if (!g.right.empty()) base = g.right.front().sorted_colors();
  }
  auto owner = [subgames, base](const PebbledStructure& b, Side side) -> int {
    for (std::size_t g = 0; g < subgames.size(); ++g)
      for (const auto& init : side == Side::Left ? subgames[g].left : subgames[g].right) {
        if (init.structure_ptr() != b.structure_ptr() && !(init.structure() == b.structure())) continue;
        bool same = true;
        for (const auto& c : base) same = same && init.element_of(c) == b.element_of(c);
        if (same) return static_cast<int>(g);
      }
    return -1;
  };
  out.step = [subgames, owner](const MsPosition& pos, int round) {
    SpoilerMove move;
    move.color = fresh_color(pos.colors());
    std::vector<MsPosition> parts(subgames.size());
    std::vector<std::vector<std::size_t>> index(subgames.size());
    std::vector<int> left_owner, right_owner;
    for (const auto& b : pos.left) left_owner.push_back(owner(b, Side::Left));
    for (const auto& b : pos.right) right_owner.push_back(owner(b, Side::Right));
    Side side = subgames.empty() ? Side::Left : subgames[0].script.sides.at(round);
    move.side = side;
    const Boards& moved = side == Side::Left ? pos.left : pos.right;
    const auto& moved_owner = side == Side::Left ? left_owner : right_owner;
    move.placement.assign(moved.size(), 0);
    for (std::size_t i = 0; i < pos.left.size(); ++i)
      if (left_owner[i] >= 0) parts[left_owner[i]].left.push_back(pos.left[i]);
    for (std::size_t i = 0; i < pos.right.size(); ++i)
      if (right_owner[i] >= 0) parts[right_owner[i]].right.push_back(pos.right[i]);
    for (std::size_t i = 0; i < moved.size(); ++i)
      if (moved_owner[i] >= 0) index[moved_owner[i]].push_back(i);
    for (std::size_t g = 0; g < subgames.size(); ++g) {
      if (index[g].empty()) continue;
      parts[g].rounds = pos.rounds;
      SpoilerMove sub = subgames[g].script.step(parts[g], round);
      if (sub.side != side) throw ScriptError("sub-script " + subgames[g].script.name + " changed sides");
      if (sub.placement.size() != index[g].size())
        throw ScriptError("sub-script " + subgames[g].script.name + " placement has the wrong size");
      for (std::size_t j = 0; j < index[g].size(); ++j) move.placement[index[g][j]] = sub.placement[j];
    }
    return move;
  };
  return out;
}

DuplicatorScript mirror_duplicator() {
  DuplicatorScript d;
  d.name = "mirror-duplicator";
  d.respond = [](const MsPosition& pos, const SpoilerMove& move) {
    const bool left_moves = move.side == Side::Left;
    const Boards& moved = left_moves ? pos.left : pos.right;
    const Boards& other = left_moves ? pos.right : pos.left;
    const int remaining = pos.rounds - 1;
    std::vector<std::vector<Element>> answers;
    for (const auto& y : other) {
      std::size_t partner = moved.size();
      for (std::size_t i = 0; i < moved.size() && partner == moved.size(); ++i)
        if (matching_pair(moved[i], y)) partner = i;
      if (y.structure().size() == 0) {
        answers.push_back({});
        continue;
      }
      if (partner == moved.size()) {
        answers.push_back({0});
        continue;
      }
      const auto& x = moved[partner];
      const Element e = move.placement[partner];
      auto xe = x.with(move.color, e);
      if (y == x) {
        answers.push_back({e});
        continue;
      }
      std::vector<Element> order;
      if (&y.structure() == &x.structure() && e < y.structure().size()) order.push_back(e);
      for (Element f = 0; f < y.structure().size(); ++f)
        if (order.empty() || f != order.front()) order.push_back(f);
      std::optional<Element> fallback, choice;
      for (Element f : order) {
        auto yf = y.with(move.color, f);
        if (!matching_pair(xe, yf)) continue;
        if (!fallback) fallback = f;
        EfPosition ef{left_moves ? xe : yf, left_moves ? yf : xe, remaining};
        if (ef_winner(ef, SearchLimits::unlimited()).winner == Winner::Duplicator) {
          choice = f;
          break;
        }
      }
      answers.push_back({choice ? *choice : fallback ? *fallback : 0});
    }
    return answers;
  };
  return d;
}

// ---------------------------------------------------------------- certificates

Matrix type_conjunction(const Structure& s, const std::vector<std::string>& terms,
                        const std::vector<Element>& elements) {
  if (terms.size() != elements.size()) throw StructuralError("type_conjunction: terms and elements differ in length");
  std::map<std::string, Element> value;
  for (std::size_t i = 0; i < terms.size(); ++i) value[terms[i]] = elements[i];
  std::vector<Matrix> lits;
  std::vector<Element> args;
  for (const auto& a : atom_pool(s.schema(), terms)) {
    args.clear();
    for (const auto& t : a.args) args.push_back(value.at(t));
    bool holds = a.equality ? args[0] == args[1]
                            : s.relation(*s.schema().relation_index(a.relation)).contains(std::span<const Element>(args));
    lits.push_back(Matrix::literal(a, holds));
  }
  return Matrix::conj(std::move(lits));
}

Formula ms_strategy_to_formula(const MsTrace& trace) {
  trace.start.validate();
  Formula f;
  f.free_vars = trace.start.colors();
  const PebbledStructure* any = !trace.start.left.empty()    ? &trace.start.left.front()
                                : !trace.start.right.empty() ? &trace.start.right.front()
                                                             : nullptr;
  std::vector<std::string> constants;
  if (any) constants = any->structure().schema().constants();
  std::vector<std::string> vars = f.free_vars;
  std::map<std::string, Matrix> disjuncts;
  auto add = [&](const PebbledStructure& b) {
    auto colors = b.sorted_colors();
    auto sorted_vars = vars;
    std::sort(sorted_vars.begin(), sorted_vars.end(), color_less);
    if (colors != sorted_vars) throw StructuralError("trace board has unexpected pebble colors");
    std::vector<std::string> terms = vars;
    std::vector<Element> elems;
    for (const auto& v : vars) elems.push_back(*b.element_of(v));
    for (std::size_t i = 0; i < constants.size(); ++i) {
      terms.push_back(constants[i]);
      elems.push_back(b.structure().constants()[i]);
    }
    auto key = atomic_type_key(b);
    if (!disjuncts.count(key)) disjuncts.emplace(key, type_conjunction(b.structure(), terms, elems));
  };
  for (const auto& b : trace.left_discarded) add(b);
  for (const auto& step : trace.steps) {
    if (step.move.color.empty() || std::find(vars.begin(), vars.end(), step.move.color) != vars.end())
      throw StructuralError("trace reuses a pebble color");
    f.prefix.emplace_back(step.move.side == Side::Left ? Quantifier::Exists : Quantifier::Forall, step.move.color);
    vars.push_back(step.move.color);
    for (const auto& b : step.left_discarded) add(b);
  }
  const MsPosition& last = trace.steps.empty() ? trace.start : trace.steps.back().after;
  if (has_matching_pair(trace.steps.empty() ? discard(trace.start) : last))
    throw StructuralError("trace does not end in a Spoiler win");
  if (!trace.steps.empty())
    for (const auto& b : last.left) add(b);
  std::vector<Matrix> parts;
  for (auto& [k, m] : disjuncts) parts.push_back(std::move(m));
  f.matrix = Matrix::disj(std::move(parts));
  f.validate();
  return f;
}

namespace {

struct DnfLiteral {
  bool positive;
  bool equality;
  std::size_t relation;
  std::vector<int> slots;  // >= 0 variable slot, < 0 constant -1-c
};

struct Dnf {
  // literals[d][level]: literals of disjunct d whose last variable slot is `level`
  // (level 0 also holds literals over constants and free variables only).
  std::vector<std::vector<std::vector<DnfLiteral>>> literals;
  std::vector<int> last_level;  // per disjunct
};

std::optional<std::vector<Matrix>> as_disjuncts(const Matrix& m) {
  std::vector<Matrix> out;
  auto conj_ok = [](const Matrix& c) {
    if (c.kind == Matrix::Kind::Literal || c.kind == Matrix::Kind::True) return true;
    if (c.kind != Matrix::Kind::And) return false;
    for (const auto& ch : c.children)
      if (ch.kind != Matrix::Kind::Literal) return false;
    return true;
  };
  if (m.kind == Matrix::Kind::False) return out;
  if (m.kind == Matrix::Kind::Or) {
    for (const auto& c : m.children) {
      if (!conj_ok(c)) return std::nullopt;
      out.push_back(c);
    }
    return out;
  }
  if (!conj_ok(m)) return std::nullopt;
  out.push_back(m);
  return out;
}

class DnfChecker {
 public:
  DnfChecker(const Formula& f, const std::vector<Matrix>& disjuncts, const Structure& s, Budget& budget)
      : f_(f), s_(s), budget_(budget) {
    std::map<std::string, int> slot;
    for (std::size_t i = 0; i < f.free_vars.size(); ++i) slot[f.free_vars[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < f.prefix.size(); ++i)
      slot[f.prefix[i].second] = static_cast<int>(f.free_vars.size() + i);
    nfree_ = static_cast<int>(f.free_vars.size());
    const int levels = static_cast<int>(f.prefix.size()) + 1;
    for (const auto& d : disjuncts) {
      std::vector<std::vector<DnfLiteral>> by_level(levels);
      int last = 0;
      std::vector<const Matrix*> lits;
      if (d.kind == Matrix::Kind::Literal) lits.push_back(&d);
      for (const auto& c : d.children) lits.push_back(&c);
      for (const Matrix* l : lits) {
        DnfLiteral x{l->positive, l->atom.equality, 0, {}};
        if (!x.equality) {
          auto r = s.schema().relation_index(l->atom.relation);
          if (!r) throw StructuralError("unknown relation symbol " + l->atom.relation);
          x.relation = *r;
        }
        int lev = 0;
        for (const auto& a : l->atom.args) {
          auto it = slot.find(a);
          if (it != slot.end()) {
            x.slots.push_back(it->second);
            lev = std::max(lev, it->second - nfree_ + 1);
          } else if (auto k = s.schema().constant_index(a)) {
            x.slots.push_back(-1 - static_cast<int>(*k));
          } else {
            throw StructuralError("unbound variable " + a);
          }
        }
        by_level[lev].push_back(std::move(x));
        last = std::max(last, lev);
      }
      dnf_.literals.push_back(std::move(by_level));
      dnf_.last_level.push_back(last);
    }
  }

  bool holds(const PebbledStructure& p) {
    val_.assign(f_.free_vars.size() + f_.prefix.size(), 0);
    for (std::size_t i = 0; i < f_.free_vars.size(); ++i) {
      auto e = p.element_of(f_.free_vars[i]);
      if (!e) throw StructuralError("pebble colors differ from free variables");
      val_[i] = *e;
    }
    std::vector<int> alive;
    for (std::size_t d = 0; d < dnf_.literals.size(); ++d)
      if (check(d, 0)) alive.push_back(static_cast<int>(d));
    return eval(0, alive);
  }

 private:
  const Formula& f_;
  const Structure& s_;
  Budget& budget_;
  Dnf dnf_;
  int nfree_ = 0;
  std::vector<Element> val_;

  bool check(std::size_t d, int level) const {
    Element buf[8];
    for (const auto& l : dnf_.literals[d][level]) {
      std::vector<Element> big;
      Element* args = buf;
      if (l.slots.size() > 8) {
        big.resize(l.slots.size());
        args = big.data();
      }
      for (std::size_t i = 0; i < l.slots.size(); ++i)
        args[i] = l.slots[i] >= 0 ? val_[l.slots[i]] : s_.constants()[-1 - l.slots[i]];
      bool v = l.equality ? args[0] == args[1]
                          : s_.relation(l.relation).contains(std::span<const Element>(args, l.slots.size()));
      if (v != l.positive) return false;
    }
    return true;
  }

  // `alive` holds the disjuncts whose literals over the first `i` bound variables hold.
  bool eval(std::size_t i, const std::vector<int>& alive) {
    budget_.tick();
    if (alive.empty()) {
      // Only the quantifier structure can still decide on an empty universe.
      if (s_.size() > 0 || i == f_.prefix.size()) return false;
    } else {
      if (i == f_.prefix.size()) return true;
      if (s_.size() > 0)
        for (int d : alive)
          if (dnf_.last_level[d] <= static_cast<int>(i)) return true;
    }
    if (s_.size() == 0) return f_.prefix[i].first == Quantifier::Forall;
    const bool exists = f_.prefix[i].first == Quantifier::Exists;
    const int level = static_cast<int>(i) + 1;
    std::vector<int> next;
    for (Element e = 0; e < s_.size(); ++e) {
      val_[nfree_ + i] = e;
      next.clear();
      for (int d : alive)
        if (check(d, level)) next.push_back(d);
      bool r = next.empty() ? false : eval(i + 1, next);
      if (r == exists) return exists;
    }
    return !exists;
  }
};

}  // namespace

bool dnf_separates(const Formula& f, const std::vector<PebbledStructure>& left,
                   const std::vector<PebbledStructure>& right, const SearchLimits& limits) {
  f.validate();
  auto disjuncts = as_disjuncts(f.matrix);
  if (!disjuncts) return separates(f, left, right);
  std::vector<std::string> fv = f.free_vars;
  std::sort(fv.begin(), fv.end(), color_less);
  Budget budget(limits);
  auto holds = [&](const PebbledStructure& p) {
    if (p.sorted_colors() != fv) throw StructuralError("pebble colors differ from free variables");
    DnfChecker c(f, *disjuncts, p.structure(), budget);
    return c.holds(p);
  };
  for (const auto& p : left)
    if (!holds(p)) return false;
  for (const auto& p : right)
    if (holds(p)) return false;
  return true;
}

}  // namespace gamelab
