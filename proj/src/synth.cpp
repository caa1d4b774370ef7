#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "gamelab/errors.hpp"
#include "gamelab/formula.hpp"

namespace gamelab {

namespace {

// Monotone and/or circuit over "type t is in the matrix" variables. Left structures must
// satisfy the formula, right structures its negation, so right leaves are negated.
class Circuit {
 public:
  enum Kind : std::uint8_t { kPos, kNeg, kAnd, kOr };

  int leaf(int var, bool positive) { return intern(positive ? kPos : kNeg, var, {}); }
  int gate(Kind k, std::vector<int> ch) {
    std::sort(ch.begin(), ch.end());
    ch.erase(std::unique(ch.begin(), ch.end()), ch.end());
    if (ch.size() == 1) return ch[0];
    return intern(k, -1, std::move(ch));
  }
  void add_root(int id) { roots_.push_back(id); }

  // Satisfying assignment (1 = type in the matrix) or empty if none.
  std::optional<std::vector<std::int8_t>> solve(int nvars, Budget& budget) {
    std::vector<std::int8_t> assign(nvars, -1);
    if (search(assign, budget)) return assign;
    return std::nullopt;
  }

 private:
  struct Node {
    Kind kind;
    int var;
    std::vector<int> ch;
  };
  std::vector<Node> nodes_;
  std::map<std::pair<int, std::vector<int>>, int> index_;
  std::vector<int> roots_;

  int intern(Kind k, int var, std::vector<int> ch) {
    auto key = std::make_pair(k * 1'000'000 + var + 1, ch);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    nodes_.push_back({k, var, std::move(ch)});
    int id = static_cast<int>(nodes_.size()) - 1;
    index_.emplace(std::move(key), id);
    return id;
  }

  // -1 unknown, 0 false, 1 true. Children always precede parents.
  std::vector<std::int8_t> evaluate(const std::vector<std::int8_t>& a) const {
    std::vector<std::int8_t> v(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& n = nodes_[i];
      if (n.kind == kPos || n.kind == kNeg) {
        v[i] = a[n.var] < 0 ? -1 : static_cast<std::int8_t>((a[n.var] == 1) == (n.kind == kPos));
        continue;
      }
      bool is_and = n.kind == kAnd;
      std::int8_t r = is_and ? 1 : 0;
      for (int c : n.ch) {
        if (v[c] == (is_and ? 0 : 1)) {
          r = v[c];
          break;
        }
        if (v[c] < 0) r = -1;
      }
      v[i] = r;
    }
    return v;
  }

  // Unit propagation from the requirement that every root is true. False on conflict.
  bool propagate(std::vector<std::int8_t>& a, std::vector<std::int8_t>& v) const {
    while (true) {
      v = evaluate(a);
      std::vector<char> req(nodes_.size(), 0);
      for (int r : roots_) {
        if (v[r] == 0) return false;
        req[r] = 1;
      }
      bool changed = false;
      for (std::size_t i = nodes_.size(); i-- > 0;) {
        if (!req[i] || v[i] == 1) continue;
        const Node& n = nodes_[i];
        if (n.kind == kPos || n.kind == kNeg) {
          a[n.var] = n.kind == kPos ? 1 : 0;
          changed = true;
        } else if (n.kind == kAnd) {
          for (int c : n.ch) req[c] = 1;
        } else {
          int open = -1, count = 0;
          for (int c : n.ch)
            if (v[c] != 0) {
              open = c;
              ++count;
            }
          if (count == 0) return false;
          if (count == 1) req[open] = 1;
        }
      }
      if (!changed) return true;
    }
  }

  bool search(std::vector<std::int8_t>& a, Budget& budget) {
    budget.tick();
    std::vector<std::int8_t> v;
    if (!propagate(a, v)) return false;
    int pick = -1;
    for (int r : roots_)
      if (v[r] < 0) {
        pick = r;
        break;
      }
    if (pick < 0) return true;
    while (nodes_[pick].kind == kAnd || nodes_[pick].kind == kOr) {
      int next = -1;
      for (int c : nodes_[pick].ch)
        if (v[c] < 0) {
          next = c;
          break;
        }
      pick = next;
    }
    const Node& leaf = nodes_[pick];
    std::int8_t first = leaf.kind == kPos ? 1 : 0;
    for (std::int8_t val : {first, static_cast<std::int8_t>(1 - first)}) {
      auto b = a;
      b[leaf.var] = val;
      if (search(b, budget)) {
        a = std::move(b);
        return true;
      }
    }
    return false;
  }
};

struct Resolved {
  bool equality;
  std::size_t relation;
  std::vector<int> slots;  // into the valuation vector; constants are appended after variables
};

std::vector<std::vector<Quantifier>> prefixes_of_length(int q) {
  std::vector<std::vector<Quantifier>> out;
  for (unsigned mask = 0; mask < (1u << q); ++mask) {
    std::vector<Quantifier> p;
    for (int i = 0; i < q; ++i)
      p.push_back(mask >> (q - 1 - i) & 1 ? Quantifier::Forall : Quantifier::Exists);
    out.push_back(std::move(p));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    auto na = std::count(a.begin(), a.end(), Quantifier::Forall);
    auto nb = std::count(b.begin(), b.end(), Quantifier::Forall);
    return na < nb;
  });
  return out;
}

}  // namespace

SynthResult synth_separating(const std::vector<PebbledStructure>& left,
                             const std::vector<PebbledStructure>& right, int m,
                             const SearchLimits& limits) {
  if (m < 0) throw DomainError("negative quantifier budget");
  SynthResult result;
  std::vector<const PebbledStructure*> all;
  for (const auto& p : left) all.push_back(&p);
  for (const auto& p : right) all.push_back(&p);
  std::vector<std::string> free_vars;
  Schema schema = Schema::digraph();
  if (!all.empty()) {
    free_vars = all[0]->sorted_colors();
    schema = all[0]->structure().schema();
  }
  for (auto* p : all) {
    if (p->sorted_colors() != free_vars) throw StructuralError("pebble color sets differ");
    if (!(p->structure().schema() == schema)) throw StructuralError("schemas differ");
  }
  Budget budget(limits);
  try {
    for (int q = 0; q <= m; ++q) {
      std::vector<std::string> vars = free_vars, bound;
      for (int i = 0; i < q; ++i) {
        bound.push_back(fresh_color(vars));
        vars.push_back(bound.back());
      }
      std::vector<std::string> terms = vars;
      for (const auto& c : schema.constants()) terms.push_back(c);
      auto pool = atom_pool(schema, terms);
      std::vector<Resolved> resolved;
      for (const auto& a : pool) {
        Resolved r{a.equality, 0, {}};
        if (!a.equality) r.relation = *schema.relation_index(a.relation);
        for (const auto& t : a.args)
          r.slots.push_back(static_cast<int>(std::find(terms.begin(), terms.end(), t) - terms.begin()));
        resolved.push_back(std::move(r));
      }
      // Realized types, per structure per assignment of the q bound variables.
      std::map<std::vector<bool>, int> type_id;
      std::vector<std::vector<bool>> types;
      std::vector<std::vector<int>> leaf_types(all.size());
      for (std::size_t si = 0; si < all.size(); ++si) {
        const Structure& s = all[si]->structure();
        std::vector<Element> val;
        for (const auto& c : free_vars) val.push_back(*all[si]->element_of(c));
        val.resize(free_vars.size() + q);
        for (Element c : s.constants()) val.push_back(c);
        std::size_t count = 1;
        for (int i = 0; i < q; ++i) count *= s.size();
        for (std::size_t code = 0; code < count; ++code) {
          budget.tick();
          std::size_t c = code;
          for (int i = q - 1; i >= 0; --i) {
            val[free_vars.size() + i] = static_cast<Element>(c % s.size());
            c /= s.size();
          }
          std::vector<bool> bits(pool.size());
          Element args[16];
          for (std::size_t a = 0; a < pool.size(); ++a) {
            const auto& r = resolved[a];
            for (std::size_t i = 0; i < r.slots.size(); ++i) args[i] = val[r.slots[i]];
            bits[a] = r.equality ? args[0] == args[1]
                                 : s.relation(r.relation).contains(std::span<const Element>(args, r.slots.size()));
          }
          auto [it, fresh] = type_id.emplace(bits, static_cast<int>(types.size()));
          if (fresh) types.push_back(bits);
          leaf_types[si].push_back(it->second);
        }
      }
      for (const auto& prefix : prefixes_of_length(q)) {
        Circuit circuit;
        for (std::size_t si = 0; si < all.size(); ++si) {
          const bool is_left = si < left.size();
          const std::size_t n = all[si]->structure().size();
          // Build bottom-up over the assignment tree.
          std::vector<int> level;
          for (int t : leaf_types[si]) level.push_back(circuit.leaf(t, is_left));
          for (int i = q - 1; i >= 0; --i) {
            bool exists = prefix[i] == Quantifier::Exists;
            auto kind = exists == is_left ? Circuit::kOr : Circuit::kAnd;
            std::vector<int> up;
            if (n == 0) {
              up.push_back(circuit.gate(kind, {}));
            } else {
              for (std::size_t j = 0; j < level.size(); j += n)
                up.push_back(circuit.gate(kind, std::vector<int>(level.begin() + j, level.begin() + j + n)));
            }
            level = std::move(up);
          }
          circuit.add_root(level.at(0));
        }
        auto sol = circuit.solve(static_cast<int>(types.size()), budget);
        if (!sol) continue;
        Formula f;
        f.free_vars = free_vars;
        for (int i = 0; i < q; ++i) f.prefix.emplace_back(prefix[i], bound[i]);
        std::vector<Matrix> disjuncts;
        for (std::size_t t = 0; t < types.size(); ++t) {
          if ((*sol)[t] != 1) continue;
          std::vector<Matrix> lits;
          for (std::size_t a = 0; a < pool.size(); ++a) lits.push_back(Matrix::literal(pool[a], types[t][a]));
          disjuncts.push_back(Matrix::conj(std::move(lits)));
        }
        f.matrix = Matrix::disj(std::move(disjuncts));
        if (!separates(f, left, right)) throw std::logic_error("synthesized formula fails to separate");
        result.status = SynthResult::Status::Found;
        result.formula = std::move(f);
        result.stats = budget.finish();
        return result;
      }
    }
    result.status = SynthResult::Status::None;
  } catch (const BudgetExhausted&) {
    result.status = SynthResult::Status::Unknown;
  }
  result.stats = budget.finish();
  return result;
}

}  // namespace gamelab
