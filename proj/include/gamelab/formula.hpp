#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gamelab/pebbled.hpp"
#include "gamelab/qbf.hpp"
#include "gamelab/search.hpp"

namespace gamelab {

// R(t1,...,tk) or t1 = t2. Terms are variable or constant names.
struct Atom {
  bool equality = false;
  std::string relation;
  std::vector<std::string> args;
  bool operator==(const Atom&) const = default;
  auto operator<=>(const Atom&) const = default;
};

// Quantifier-free formula in negation normal form.
struct Matrix {
  enum class Kind { True, False, Literal, And, Or };
  Kind kind = Kind::True;
  Atom atom;
  bool positive = true;
  std::vector<Matrix> children;

  static Matrix literal(Atom a, bool positive);
  // Empty conjunction is True, empty disjunction False; a single child is returned as is.
  static Matrix conj(std::vector<Matrix> c);
  static Matrix disj(std::vector<Matrix> c);
  bool operator==(const Matrix&) const = default;
};

struct Formula {
  std::vector<std::pair<Quantifier, std::string>> prefix;
  Matrix matrix;
  std::vector<std::string> free_vars;

  int quantifier_count() const { return static_cast<int>(prefix.size()); }
  // Throws StructuralError if a matrix variable is neither free nor bound, or names clash.
  void validate() const;
  bool operator==(const Formula&) const = default;
};

// Grammar:
//   formula := [ "FREE" "(" name {"," name} ")" ] { ("EXISTS"|"FORALL") name } [ "." ] matrix
//   matrix  := conj { "|" conj }        conj := unary { "&" unary }
//   unary   := "!" unary | "(" matrix ")" | "TRUE" | "FALSE" | atom
//   atom    := name "(" name {"," name} ")" | name "=" name | name "!=" name
// A "." must follow a nonempty prefix. Without FREE, the free variables are the matrix
// names that are not bound and are listed in first-occurrence order; names in `constants`
// are treated as constants.
Formula parse_formula(const std::string& text, const std::vector<std::string>& constants = {});
std::string print_formula(const Formula& f);
std::string print_matrix(const Matrix& m);

bool evaluate(const Structure& s, const Formula& f, const std::map<std::string, Element>& assignment);
bool evaluate(const PebbledStructure& p, const Formula& f);
bool separates(const Formula& f, const std::vector<PebbledStructure>& left,
               const std::vector<PebbledStructure>& right);

using BigInt = boost::multiprecision::cpp_int;
BigInt count_bound(int t, int s, int r, int m);
BigInt atom_bound(int t, int s, int r, int m);

// The atom pool over the given terms: every relation applied to every term tuple, then
// every ordered equality t1 = t2.
std::vector<Atom> atom_pool(const Schema& schema, const std::vector<std::string>& terms);
// Polarity vectors over atom_pool(schema, vars) consistent with equality (vars only).
std::vector<std::vector<bool>> consistent_types(const Schema& schema, const std::vector<std::string>& vars);
// Number of (prefix, set of consistent types) sentences over m variables.
BigInt enumerated_sentence_count(const Schema& schema, int m);

struct SynthResult {
  enum class Status { Found, None, Unknown } status = Status::None;
  Formula formula;
  SearchStats stats;
};

SynthResult synth_separating(const std::vector<PebbledStructure>& left,
                             const std::vector<PebbledStructure>& right, int m,
                             const SearchLimits& limits = SearchLimits::from_env());

}  // namespace gamelab
