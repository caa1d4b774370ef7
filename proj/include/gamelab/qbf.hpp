#pragma once

#include <string>
#include <vector>

namespace gamelab {

enum class Quantifier { Exists, Forall };

// Quantified CNF. Variables are 1..num_vars, quantified in order by prefix[v-1].
// Literals are signed variable indices as in DIMACS.
struct QbfInstance {
  int num_vars = 0;
  std::vector<Quantifier> prefix;
  std::vector<std::vector<int>> clauses;

  // Throws StructuralError when a literal is out of range or a clause is empty or too long.
  void validate(std::size_t max_clause_len = 3) const;
  bool alternating() const;  // exists, forall, exists, forall, ... with an even count
  bool operator==(const QbfInstance&) const = default;
};

// Inserts fresh dummy variables (not occurring in any clause) so the prefix becomes
// exists/forall alternating with an even number of variables. var_map[v-1] gives the new
// index of original variable v.
QbfInstance make_alternating(const QbfInstance& q, std::vector<int>* var_map = nullptr);

// QDIMACS: "p cnf V C", quantifier lines "e ... 0" / "a ... 0", clauses "l ... 0".
// Free variables are existential and outermost.
QbfInstance parse_qdimacs(const std::string& text);
std::string write_qdimacs(const QbfInstance& q);

}  // namespace gamelab
