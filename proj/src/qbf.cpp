#include "gamelab/qbf.hpp"

#include <cstdlib>
#include <sstream>

#include "gamelab/errors.hpp"

namespace gamelab {

void QbfInstance::validate(std::size_t max_clause_len) const {
  if (static_cast<int>(prefix.size()) != num_vars) throw StructuralError("prefix length != num_vars");
  for (const auto& c : clauses) {
    if (c.empty() || c.size() > max_clause_len) throw StructuralError("clause size out of range");
    for (int l : c)
      if (l == 0 || std::abs(l) > num_vars) throw StructuralError("literal out of range");
  }
}

bool QbfInstance::alternating() const {
  if (num_vars % 2 != 0) return false;
  for (int i = 0; i < num_vars; ++i)
    if (prefix[i] != (i % 2 == 0 ? Quantifier::Exists : Quantifier::Forall)) return false;
  return true;
}

QbfInstance make_alternating(const QbfInstance& q, std::vector<int>* var_map) {
  QbfInstance out;
  std::vector<int> map(q.num_vars, 0);
  for (int v = 0; v < q.num_vars; ++v) {
    Quantifier want = out.num_vars % 2 == 0 ? Quantifier::Exists : Quantifier::Forall;
    if (q.prefix[v] != want) {
      out.prefix.push_back(want);
      ++out.num_vars;
    }
    out.prefix.push_back(q.prefix[v]);
    map[v] = ++out.num_vars;
  }
  if (out.num_vars % 2 != 0) {
    out.prefix.push_back(Quantifier::Forall);
    ++out.num_vars;
  }
  for (const auto& c : q.clauses) {
    std::vector<int> nc;
    for (int l : c) nc.push_back(l > 0 ? map[l - 1] : -map[-l - 1]);
    out.clauses.push_back(std::move(nc));
  }
  if (var_map) *var_map = map;
  return out;
}

QbfInstance parse_qdimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0, declared_clauses = -1;
  QbfInstance q;
  std::vector<int> quant(0);  // 0 unset, 1 exists, 2 forall
  std::vector<int> order;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string fmt;
      if (!(ls >> fmt >> q.num_vars >> declared_clauses) || fmt != "cnf" || q.num_vars < 0)
        throw ParseError("bad problem line", line_no);
      quant.assign(q.num_vars + 1, 0);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("content before problem line", line_no);
    if (tag == "e" || tag == "a") {
      int v;
      while (ls >> v && v != 0) {
        if (v < 1 || v > q.num_vars || quant[v]) throw ParseError("bad quantified variable", line_no);
        quant[v] = tag == "e" ? 1 : 2;
        order.push_back(v);
      }
      continue;
    }
    std::vector<int> clause;
    std::istringstream cs(line);
    int l;
    bool closed = false;
    while (cs >> l) {
      if (l == 0) {
        closed = true;
        break;
      }
      if (std::abs(l) > q.num_vars) throw ParseError("literal out of range", line_no);
      clause.push_back(l);
    }
    if (!closed || clause.empty()) throw ParseError("bad clause line", line_no);
    q.clauses.push_back(std::move(clause));
  }
  if (!have_header) throw ParseError("missing problem line");
  if (declared_clauses >= 0 && static_cast<int>(q.clauses.size()) != declared_clauses)
    throw ParseError("clause count does not match problem line");
  // Free variables go outermost as existentials, then the declared blocks in order.
  std::vector<int> full;
  for (int v = 1; v <= q.num_vars; ++v)
    if (!quant[v]) full.push_back(v);
  for (int v : order) full.push_back(v);
  std::vector<int> rename(q.num_vars + 1);
  for (std::size_t i = 0; i < full.size(); ++i) {
    rename[full[i]] = static_cast<int>(i) + 1;
    q.prefix.push_back(quant[full[i]] == 2 ? Quantifier::Forall : Quantifier::Exists);
  }
  for (auto& c : q.clauses)
    for (int& l : c) l = l > 0 ? rename[l] : -rename[-l];
  return q;
}

std::string write_qdimacs(const QbfInstance& q) {
  std::ostringstream out;
  out << "p cnf " << q.num_vars << " " << q.clauses.size() << "\n";
  for (int v = 0; v < q.num_vars; ++v)
    out << (q.prefix[v] == Quantifier::Exists ? "e " : "a ") << v + 1 << " 0\n";
  for (const auto& c : q.clauses) {
    for (int l : c) out << l << " ";
    out << "0\n";
  }
  return out.str();
}

}  // namespace gamelab
