#include "gamelab/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "gamelab/errors.hpp"

namespace gamelab {

Matrix Matrix::literal(Atom a, bool positive) {
  Matrix m;
  m.kind = Kind::Literal;
  m.atom = std::move(a);
  m.positive = positive;
  return m;
}

Matrix Matrix::conj(std::vector<Matrix> c) {
  if (c.size() == 1) return std::move(c[0]);
  Matrix m;
  m.kind = c.empty() ? Kind::True : Kind::And;
  m.children = std::move(c);
  return m;
}

Matrix Matrix::disj(std::vector<Matrix> c) {
  if (c.size() == 1) return std::move(c[0]);
  Matrix m;
  m.kind = c.empty() ? Kind::False : Kind::Or;
  m.children = std::move(c);
  return m;
}

namespace {

void collect_names(const Matrix& m, std::vector<std::string>& out) {
  if (m.kind == Matrix::Kind::Literal) {
    for (const auto& a : m.atom.args)
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  for (const auto& c : m.children) collect_names(c, out);
}

}  // namespace

void Formula::validate() const {
  std::set<std::string> names(free_vars.begin(), free_vars.end());
  if (names.size() != free_vars.size()) throw StructuralError("duplicate free variable");
  for (const auto& [q, v] : prefix)
    if (!names.insert(v).second) throw StructuralError("variable bound twice or also free: " + v);
}

// ---------------------------------------------------------------- parsing

namespace {

struct Lexer {
  const std::string& s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool at_end() {
    skip();
    return i >= s.size();
  }
  std::string peek_name() {
    skip();
    std::size_t j = i;
    while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
      ++j;
    return s.substr(i, j - i);
  }
  std::string name() {
    std::string n = peek_name();
    if (n.empty()) fail("expected a name");
    i += n.size();
    return n;
  }
  bool accept(std::string_view tok) {
    skip();
    if (s.compare(i, tok.size(), tok) == 0) {
      i += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("formula, column " + std::to_string(i + 1) + ": " + what);
  }
};

struct Parser {
  Lexer lx;

  Matrix disjunction(bool neg) {
    std::vector<Matrix> parts{conjunction(neg)};
    while (lx.accept("|")) parts.push_back(conjunction(neg));
    return neg ? Matrix::conj(std::move(parts)) : Matrix::disj(std::move(parts));
  }
  Matrix conjunction(bool neg) {
    std::vector<Matrix> parts{unary(neg)};
    while (lx.accept("&")) parts.push_back(unary(neg));
    return neg ? Matrix::disj(std::move(parts)) : Matrix::conj(std::move(parts));
  }
  Matrix unary(bool neg) {
    lx.skip();
    if (lx.i < lx.s.size() && lx.s[lx.i] == '!' && lx.s.compare(lx.i, 2, "!=") != 0) {
      ++lx.i;
      return unary(!neg);
    }
    if (lx.accept("(")) {
      Matrix m = disjunction(neg);
      lx.expect(")");
      return m;
    }
    std::string n = lx.name();
    if (n == "TRUE" || n == "FALSE") {
      Matrix m;
      m.kind = (n == "TRUE") != neg ? Matrix::Kind::True : Matrix::Kind::False;
      return m;
    }
    Atom a;
    if (lx.accept("(")) {
      a.relation = n;
      a.args.push_back(lx.name());
      while (lx.accept(",")) a.args.push_back(lx.name());
      lx.expect(")");
      return Matrix::literal(std::move(a), !neg);
    }
    a.equality = true;
    bool positive = true;
    if (lx.accept("!=")) positive = false;
    else lx.expect("=");
    a.args = {n, lx.name()};
    return Matrix::literal(std::move(a), positive != neg);
  }
};

}  // namespace

Formula parse_formula(const std::string& text, const std::vector<std::string>& constants) {
  Parser p{Lexer{text}};
  Formula f;
  bool explicit_free = false;
  if (p.lx.peek_name() == "FREE") {
    p.lx.name();
    explicit_free = true;
    p.lx.expect("(");
    if (!p.lx.accept(")")) {
      f.free_vars.push_back(p.lx.name());
      while (p.lx.accept(",")) f.free_vars.push_back(p.lx.name());
      p.lx.expect(")");
    }
  }
  while (true) {
    std::string k = p.lx.peek_name();
    if (k != "EXISTS" && k != "FORALL") break;
    p.lx.name();
    f.prefix.emplace_back(k == "EXISTS" ? Quantifier::Exists : Quantifier::Forall, p.lx.name());
  }
  if (!f.prefix.empty()) p.lx.expect(".");
  else p.lx.accept(".");
  f.matrix = p.disjunction(false);
  if (!p.lx.at_end()) p.lx.fail("trailing input");
  std::vector<std::string> names;
  collect_names(f.matrix, names);
  std::set<std::string> bound;
  for (const auto& [q, v] : f.prefix) bound.insert(v);
  if (!explicit_free) {
    for (const auto& n : names)
      if (!bound.count(n) && std::find(constants.begin(), constants.end(), n) == constants.end())
        f.free_vars.push_back(n);
  }
  f.validate();
  return f;
}

// ---------------------------------------------------------------- printing

namespace {

std::string print_atom(const Atom& a, bool positive) {
  if (a.equality) return a.args[0] + (positive ? "=" : "!=") + a.args[1];
  std::string s = positive ? "" : "!";
  s += a.relation + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) s += (i ? "," : "") + a.args[i];
  return s + ")";
}

void print_into(const Matrix& m, std::string& out) {
  switch (m.kind) {
    case Matrix::Kind::True: out += "TRUE"; return;
    case Matrix::Kind::False: out += "FALSE"; return;
    case Matrix::Kind::Literal: out += print_atom(m.atom, m.positive); return;
    default: break;
  }
  const char* sep = m.kind == Matrix::Kind::And ? " & " : " | ";
  for (std::size_t i = 0; i < m.children.size(); ++i) {
    if (i) out += sep;
    const auto& c = m.children[i];
    bool paren = c.kind == Matrix::Kind::And || c.kind == Matrix::Kind::Or;
    if (paren) out += "(";
    print_into(c, out);
    if (paren) out += ")";
  }
}

}  // namespace

std::string print_matrix(const Matrix& m) {
  std::string s;
  print_into(m, s);
  return s;
}

std::string print_formula(const Formula& f) {
  std::string s;
  std::vector<std::string> names;
  collect_names(f.matrix, names);
  std::set<std::string> bound;
  for (const auto& [q, v] : f.prefix) bound.insert(v);
  std::vector<std::string> implicit;
  for (const auto& n : names)
    if (!bound.count(n)) implicit.push_back(n);
  // FREE is printed unless re-parsing would infer the same list.
  if (implicit != f.free_vars) {
    s += "FREE(";
    for (std::size_t i = 0; i < f.free_vars.size(); ++i) s += (i ? "," : "") + f.free_vars[i];
    s += ") ";
  }
  for (const auto& [q, v] : f.prefix) s += (q == Quantifier::Exists ? "EXISTS " : "FORALL ") + v + " ";
  if (!f.prefix.empty()) s += ". ";
  return s + print_matrix(f.matrix);
}

// ---------------------------------------------------------------- evaluation

namespace {

struct Compiled {
  Matrix::Kind kind;
  bool positive = true;
  bool equality = false;
  std::size_t relation = 0;
  std::vector<int> slots;  // >= 0: variable slot; < 0: constant index -1-c
  std::vector<Compiled> children;
};

Compiled compile(const Matrix& m, const Structure& s, const std::map<std::string, int>& slot) {
  Compiled c;
  c.kind = m.kind;
  c.positive = m.positive;
  if (m.kind == Matrix::Kind::Literal) {
    c.equality = m.atom.equality;
    if (!c.equality) {
      auto r = s.schema().relation_index(m.atom.relation);
      if (!r) throw StructuralError("unknown relation symbol " + m.atom.relation);
      if (s.schema().relations()[*r].arity != static_cast<int>(m.atom.args.size()))
        throw StructuralError("wrong arity for " + m.atom.relation);
      c.relation = *r;
    }
    for (const auto& a : m.atom.args) {
      auto it = slot.find(a);
      if (it != slot.end()) {
        c.slots.push_back(it->second);
      } else if (auto k = s.schema().constant_index(a)) {
        c.slots.push_back(-1 - static_cast<int>(*k));
      } else {
        throw StructuralError("unbound variable " + a);
      }
    }
  }
  for (const auto& ch : m.children) c.children.push_back(compile(ch, s, slot));
  return c;
}

bool eval_matrix(const Compiled& c, const Structure& s, const std::vector<Element>& val) {
  switch (c.kind) {
    case Matrix::Kind::True: return true;
    case Matrix::Kind::False: return false;
    case Matrix::Kind::And:
      for (const auto& ch : c.children)
        if (!eval_matrix(ch, s, val)) return false;
      return true;
    case Matrix::Kind::Or:
      for (const auto& ch : c.children)
        if (eval_matrix(ch, s, val)) return true;
      return false;
    case Matrix::Kind::Literal: break;
  }
  Element t[8];
  std::vector<Element> big;
  Element* args = t;
  if (c.slots.size() > 8) {
    big.resize(c.slots.size());
    args = big.data();
  }
  for (std::size_t i = 0; i < c.slots.size(); ++i)
    args[i] = c.slots[i] >= 0 ? val[c.slots[i]] : s.constants()[-1 - c.slots[i]];
  bool v = c.equality ? args[0] == args[1]
                      : s.relation(c.relation).contains(std::span<const Element>(args, c.slots.size()));
  return v == c.positive;
}

bool eval_prefix(const Formula& f, const Compiled& c, const Structure& s, std::vector<Element>& val,
                 std::size_t i, std::size_t nfree) {
  if (i == f.prefix.size()) return eval_matrix(c, s, val);
  bool exists = f.prefix[i].first == Quantifier::Exists;
  for (Element e = 0; e < s.size(); ++e) {
    val[nfree + i] = e;
    if (eval_prefix(f, c, s, val, i + 1, nfree) == exists) return exists;
  }
  return !exists;
}

}  // namespace

bool evaluate(const Structure& s, const Formula& f, const std::map<std::string, Element>& assignment) {
  f.validate();
  std::map<std::string, int> slot;
  std::vector<Element> val(f.free_vars.size() + f.prefix.size(), 0);
  if (assignment.size() != f.free_vars.size())
    throw StructuralError("assignment does not cover exactly the free variables");
  for (std::size_t i = 0; i < f.free_vars.size(); ++i) {
    auto it = assignment.find(f.free_vars[i]);
    if (it == assignment.end()) throw StructuralError("unassigned free variable " + f.free_vars[i]);
    if (it->second >= s.size()) throw StructuralError("assigned element out of range");
    slot[f.free_vars[i]] = static_cast<int>(i);
    val[i] = it->second;
  }
  for (std::size_t i = 0; i < f.prefix.size(); ++i)
    slot[f.prefix[i].second] = static_cast<int>(f.free_vars.size() + i);
  Compiled c = compile(f.matrix, s, slot);
  return eval_prefix(f, c, s, val, 0, f.free_vars.size());
}

bool evaluate(const PebbledStructure& p, const Formula& f) {
  std::map<std::string, Element> a;
  for (const auto& pb : p.pebbles()) a[pb.color] = pb.element;
  return evaluate(p.structure(), f, a);
}

bool separates(const Formula& f, const std::vector<PebbledStructure>& left,
               const std::vector<PebbledStructure>& right) {
  std::vector<std::string> fv = f.free_vars;
  std::sort(fv.begin(), fv.end(), color_less);
  auto check = [&](const PebbledStructure& p) {
    if (p.sorted_colors() != fv) throw StructuralError("pebble colors differ from free variables");
  };
  for (const auto& p : left) check(p);
  for (const auto& p : right) check(p);
  for (const auto& p : left)
    if (!evaluate(p, f)) return false;
  for (const auto& p : right)
    if (evaluate(p, f)) return false;
  return true;
}

// ---------------------------------------------------------------- counting

namespace {

BigInt pool_size(int t, int s, int r, int m) {
  if (t < 0 || s < 0 || m < 0) throw DomainError("bound parameters must be nonnegative");
  if (r < 2) throw DomainError("bound requires maximum arity r >= 2");
  BigInt base = m + s;
  return BigInt(t + 1) * boost::multiprecision::pow(base, static_cast<unsigned>(r));
}

}  // namespace

BigInt count_bound(int t, int s, int r, int m) {
  BigInt x = pool_size(t, s, r, m);
  if (x > 24) throw DomainError("count_bound result too large to represent");
  BigInt inner = BigInt(1) << static_cast<unsigned>(x);
  return BigInt(1) << static_cast<unsigned>(inner + m);
}

BigInt atom_bound(int t, int s, int r, int m) {
  BigInt x = pool_size(t, s, r, m);
  if (x > (1 << 24)) throw DomainError("atom_bound result too large to represent");
  return x * (BigInt(1) << static_cast<unsigned>(x));
}

std::vector<Atom> atom_pool(const Schema& schema, const std::vector<std::string>& terms) {
  std::vector<Atom> pool;
  const std::size_t n = terms.size();
  for (const auto& rel : schema.relations()) {
    if (n == 0) break;
    std::vector<std::size_t> idx(rel.arity, 0);
    while (true) {
      Atom a;
      a.relation = rel.name;
      for (auto i : idx) a.args.push_back(terms[i]);
      pool.push_back(std::move(a));
      int pos = rel.arity - 1;
      while (pos >= 0 && ++idx[pos] == n) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Atom a;
      a.equality = true;
      a.args = {terms[i], terms[j]};
      pool.push_back(std::move(a));
    }
  return pool;
}

std::vector<std::vector<bool>> consistent_types(const Schema& schema, const std::vector<std::string>& vars) {
  auto pool = atom_pool(schema, vars);
  if (pool.size() > 20) throw DomainError("atom pool too large to enumerate types");
  std::vector<std::vector<bool>> out;
  const std::size_t n = vars.size();
  auto index_of = [&](const std::string& v) {
    return static_cast<std::size_t>(std::find(vars.begin(), vars.end(), v) - vars.begin());
  };
  for (unsigned long mask = 0; mask < (1ul << pool.size()); ++mask) {
    std::vector<bool> bits(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) bits[i] = mask >> i & 1;
    // Equality part must be an equivalence relation.
    std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
    std::size_t base = pool.size() - n * n;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) eq[i][j] = bits[base + i * n + j];
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      ok = eq[i][i];
      for (std::size_t j = 0; j < n && ok; ++j) {
        ok = eq[i][j] == eq[j][i];
        for (std::size_t k = 0; k < n && ok; ++k) ok = !(eq[i][j] && eq[j][k]) || eq[i][k];
      }
    }
    // Relation atoms must agree on equal argument tuples.
    for (std::size_t a = 0; a < base && ok; ++a)
      for (std::size_t b = a + 1; b < base && ok; ++b) {
        if (pool[a].relation != pool[b].relation) continue;
        bool same = true;
        for (std::size_t i = 0; i < pool[a].args.size(); ++i)
          same = same && eq[index_of(pool[a].args[i])][index_of(pool[b].args[i])];
        if (same) ok = bits[a] == bits[b];
      }
    if (ok) out.push_back(std::move(bits));
  }
  return out;
}

BigInt enumerated_sentence_count(const Schema& schema, int m) {
  std::vector<std::string> vars;
  for (int i = 1; i <= m; ++i) vars.push_back("x" + std::to_string(i));
  auto types = consistent_types(schema, vars);
  return (BigInt(1) << m) * (BigInt(1) << static_cast<unsigned>(types.size()));
}

}  // namespace gamelab
