#include "gamelab/pebbled.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "gamelab/errors.hpp"

namespace gamelab {

namespace {

std::optional<long> palette_index(const std::string& c) {
  if (c.size() < 2 || c[0] != 'x') return std::nullopt;
  long v = 0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] < '0' || c[i] > '9') return std::nullopt;
    v = v * 10 + (c[i] - '0');
    if (v > 1'000'000'000) return std::nullopt;
  }
  return v;
}

void push_bit(std::string& out, std::size_t& nbits, bool bit) {
  if (nbits % 8 == 0) out.push_back('\0');
  if (bit) out.back() = static_cast<char>(out.back() | (1 << (nbits % 8)));
  ++nbits;
}

// All index tuples of length `arity` over 0..last that mention `last`, in lexicographic order.
void tuples_with_last(int arity, Element last, Tuple& cur, const std::function<void()>& visit,
                      bool seen) {
  if (static_cast<int>(cur.size()) == arity) {
    if (seen) visit();
    return;
  }
  for (Element i = 0; i <= last; ++i) {
    cur.push_back(i);
    tuples_with_last(arity, last, cur, visit, seen || i == last);
    cur.pop_back();
  }
}

}  // namespace

bool color_less(const std::string& a, const std::string& b) {
  auto ia = palette_index(a), ib = palette_index(b);
  if (ia && ib) return *ia != *ib ? *ia < *ib : a < b;
  if (ia || ib) return ia.has_value();
  return a < b;
}

std::string fresh_color(const std::vector<std::string>& used) {
  long next = 1;
  for (const auto& c : used)
    if (auto i = palette_index(c)) next = std::max(next, *i + 1);
  return "x" + std::to_string(next);
}

PebbledStructure::PebbledStructure(StructurePtr s, std::vector<Pebble> pebbles)
    : structure_(std::move(s)), pebbles_(std::move(pebbles)) {
  if (!structure_) throw StructuralError("null structure");
  std::set<std::string> seen;
  for (const auto& p : pebbles_) {
    if (!seen.insert(p.color).second) throw StructuralError("color used twice: " + p.color);
    if (p.element >= structure_->size()) throw StructuralError("pebble outside universe");
  }
}

PebbledStructure PebbledStructure::with(const std::string& color, Element e) const {
  auto p = pebbles_;
  p.push_back({color, e});
  return PebbledStructure(structure_, std::move(p));
}

std::vector<std::string> PebbledStructure::sorted_colors() const {
  std::vector<std::string> c;
  for (const auto& p : pebbles_) c.push_back(p.color);
  std::sort(c.begin(), c.end(), color_less);
  return c;
}

std::vector<Element> PebbledStructure::points() const {
  std::vector<Element> pts(structure_->constants());
  auto peb = pebbles_;
  std::stable_sort(peb.begin(), peb.end(),
                   [](const Pebble& a, const Pebble& b) { return color_less(a.color, b.color); });
  for (const auto& p : peb) pts.push_back(p.element);
  return pts;
}

std::optional<Element> PebbledStructure::element_of(const std::string& color) const {
  for (const auto& p : pebbles_)
    if (p.color == color) return p.element;
  return std::nullopt;
}

bool PebbledStructure::operator==(const PebbledStructure& o) const {
  if (structure_ != o.structure_ && !(*structure_ == *o.structure_)) return false;
  return sorted_colors() == o.sorted_colors() && points() == o.points();
}

void extension_signature(const Structure& s, const std::vector<Element>& points, Element e,
                         std::string& out) {
  out.clear();
  std::size_t nbits = 0;
  for (Element p : points) push_bit(out, nbits, p == e);
  const Element last = static_cast<Element>(points.size());
  for (std::size_t r = 0; r < s.relation_count(); ++r) {
    const Relation& rel = s.relation(r);
    if (rel.arity() == 1) {
      push_bit(out, nbits, rel.contains(e));
    } else if (rel.arity() == 2) {
      for (Element p : points) push_bit(out, nbits, rel.contains(p, e));
      for (Element p : points) push_bit(out, nbits, rel.contains(e, p));
      push_bit(out, nbits, rel.contains(e, e));
    } else {
      Tuple idx, elems(rel.arity());
      tuples_with_last(
          rel.arity(), last, idx,
          [&] {
            for (std::size_t i = 0; i < idx.size(); ++i)
              elems[i] = idx[i] == last ? e : points[idx[i]];
            push_bit(out, nbits, rel.contains(std::span<const Element>(elems)));
          },
          false);
    }
  }
}

std::string extension_signature(const Structure& s, const std::vector<Element>& points,
                                 Element e) {
  std::string out;
  extension_signature(s, points, e, out);
  return out;
}

bool same_atomic_type(const Structure& a, const std::vector<Element>& pa, const Structure& b,
                      const std::vector<Element>& pb) {
  if (pa.size() != pb.size()) return false;
  std::vector<Element> prefa, prefb;
  std::string sa, sb;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    extension_signature(a, prefa, pa[i], sa);
    extension_signature(b, prefb, pb[i], sb);
    if (sa != sb) return false;
    prefa.push_back(pa[i]);
    prefb.push_back(pb[i]);
  }
  return true;
}

bool matching_pair(const PebbledStructure& p, const PebbledStructure& q) {
  if (!(p.structure().schema() == q.structure().schema()))
    throw StructuralError("matching_pair: schema mismatch");
  if (p.sorted_colors() != q.sorted_colors()) return false;
  return same_atomic_type(p.structure(), p.points(), q.structure(), q.points());
}

std::string atomic_type_key(const PebbledStructure& p) {
  std::string key;
  for (const auto& c : p.sorted_colors()) {
    key += c;
    key.push_back(',');
  }
  key.push_back('|');
  std::vector<Element> prefix;
  std::string sig;
  for (Element e : p.points()) {
    extension_signature(p.structure(), prefix, e, sig);
    key += sig;
    prefix.push_back(e);
  }
  return key;
}

}  // namespace gamelab
