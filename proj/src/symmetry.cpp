#include "gamelab/symmetry.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace gamelab {

bool is_automorphism(const Structure& s, const Permutation& perm) {
  if (perm.size() != s.size()) return false;
  std::vector<bool> seen(s.size(), false);
  for (Element e : perm) {
    if (e >= s.size() || seen[e]) return false;
    seen[e] = true;
  }
  for (Element c : s.constants())
    if (perm[c] != c) return false;
  for (std::size_t r = 0; r < s.relation_count(); ++r) {
    const Relation& rel = s.relation(r);
    Tuple img;
    for (const auto& t : rel.tuples()) {
      img.assign(t.size(), 0);
      for (std::size_t i = 0; i < t.size(); ++i) img[i] = perm[t[i]];
      if (!rel.contains(std::span<const Element>(img))) return false;
    }
  }
  return true;
}

Symmetry::Symmetry(const Structure& s, std::vector<Permutation> generators, bool twins)
    : n_(s.size()), generators_(std::move(generators)) {
  if (!twins || !s.binary_only() || n_ == 0) return;
  // Signature: unary bits, loop bits, and neighbor lists without the element itself.
  std::map<std::vector<std::int64_t>, std::vector<Element>> groups;
  std::vector<bool> is_const(n_, false);
  for (Element c : s.constants()) is_const[c] = true;
  for (Element e = 0; e < n_; ++e) {
    if (is_const[e]) continue;
    std::vector<std::int64_t> sig;
    for (std::size_t r = 0; r < s.relation_count(); ++r) {
      const Relation& rel = s.relation(r);
      if (rel.arity() == 1) {
        sig.push_back(rel.contains(e));
        continue;
      }
      sig.push_back(rel.contains(e, e));
      sig.push_back(-1);
      for (Element o : rel.out(e))
        if (o != e) sig.push_back(o);
      sig.push_back(-2);
      for (Element i : rel.in(e))
        if (i != e) sig.push_back(i);
      sig.push_back(-3);
    }
    groups[sig].push_back(e);
  }
  twin_class_.assign(n_, -1);
  for (auto& [sig, members] : groups) {
    if (members.size() < 2) continue;
    for (Element e : members) twin_class_[e] = static_cast<int>(twin_members_.size());
    twin_members_.push_back(members);
  }
}

namespace {

struct UnionFind {
  std::vector<Element> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Element find(Element x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(Element a, Element b) {
    a = find(a);
    b = find(b);
    if (a < b) parent[b] = a;
    else if (b < a) parent[a] = b;
  }
};

}  // namespace

std::vector<Element> Symmetry::representatives(const std::vector<Element>& fixed) const {
  std::vector<bool> is_fixed(n_, false);
  for (Element e : fixed) is_fixed[e] = true;
  std::vector<const Permutation*> active;
  for (const auto& g : generators_) {
    bool ok = true;
    for (Element e : fixed) ok = ok && g[e] == e;
    if (ok) active.push_back(&g);
  }
  std::vector<Element> reps;
  if (active.empty()) {
    std::vector<bool> taken(twin_members_.size(), false);
    for (Element e = 0; e < n_; ++e) {
      int c = twin_class_.empty() ? -1 : twin_class_[e];
      if (c < 0 || is_fixed[e]) {
        reps.push_back(e);
      } else if (!taken[c]) {
        taken[c] = true;
        reps.push_back(e);
      }
    }
    return reps;
  }
  UnionFind uf(n_);
  for (const auto* g : active)
    for (Element e = 0; e < n_; ++e) uf.unite(e, (*g)[e]);
  for (const auto& members : twin_members_) {
    Element first = static_cast<Element>(n_);
    for (Element e : members) {
      if (is_fixed[e]) continue;
      if (first == n_) first = e;
      else uf.unite(first, e);
    }
  }
  for (Element e = 0; e < n_; ++e)
    if (uf.find(e) == e) reps.push_back(e);
  return reps;
}

}  // namespace gamelab
