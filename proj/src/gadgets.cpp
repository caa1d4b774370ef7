#include "gamelab/gadgets.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include <json.hpp>

#include "gamelab/errors.hpp"
#include "gamelab/json_util.hpp"

namespace gamelab {

Element GadgetOutput::at(const std::string& name) const {
  if (auto it = designated.find(name); it != designated.end()) return it->second;
  return structure->at(name);
}

int LabeledDigraph::add(const std::string& label, const std::string& color) {
  if (index_.count(label)) throw StructuralError("duplicate gadget vertex '" + label + "'");
  int v = static_cast<int>(label_.size());
  label_.push_back(label);
  color_.push_back(color);
  alive_.push_back(true);
  out_.emplace_back();
  in_.emplace_back();
  index_[label] = v;
  return v;
}

int LabeledDigraph::id(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw StructuralError("unknown gadget vertex '" + label + "'");
  return it->second;
}

void LabeledDigraph::edge(int from, int to) {
  out_[from].insert(to);
  in_[to].insert(from);
}

void LabeledDigraph::remove_edge(int from, int to) {
  out_[from].erase(to);
  in_[to].erase(from);
}

std::size_t LabeledDigraph::edge_count() const {
  std::size_t c = 0;
  for (std::size_t v = 0; v < out_.size(); ++v)
    if (alive_[v]) c += out_[v].size();
  return c;
}

void LabeledDigraph::remove(int v) {
  for (int u : out_[v]) in_[u].erase(v);
  for (int u : in_[v]) out_[u].erase(v);
  out_[v].clear();
  in_[v].clear();
  alive_[v] = false;
  index_.erase(label_[v]);
}

std::vector<int> LabeledDigraph::replace(int v, const std::vector<std::string>& labels) {
  std::set<int> ins = in_[v], outs = out_[v];
  ins.erase(v);
  outs.erase(v);
  std::string color = color_[v];
  remove(v);
  std::vector<int> ids;
  for (const auto& l : labels) {
    int w = add(l, color);
    for (int u : ins) edge(u, w);
    for (int u : outs) edge(w, u);
    ids.push_back(w);
  }
  return ids;
}

void LabeledDigraph::elide(int v) {
  std::set<int> ins = in_[v], outs = out_[v];
  remove(v);
  for (int u : ins)
    for (int w : outs)
      if (u != v && w != v) edge(u, w);
}

Structure LabeledDigraph::to_structure(bool colored) const {
  std::vector<Element> el(label_.size(), 0);
  std::map<Element, std::string> labels;
  Element n = 0;
  for (std::size_t v = 0; v < label_.size(); ++v)
    if (alive_[v]) {
      el[v] = n;
      labels[n++] = label_[v];
    }
  std::vector<Tuple> e, r, g, b;
  for (std::size_t v = 0; v < label_.size(); ++v) {
    if (!alive_[v]) continue;
    for (int w : out_[v]) e.push_back({el[v], el[w]});
    const std::string& c = color_[v];
    if (colored) {
      if (c == "R") r.push_back({el[v]});
      if (c == "G") g.push_back({el[v]});
      if (c == "B") b.push_back({el[v]});
    } else if (c == "G") {
      e.push_back({el[v], el[v]});
    }
  }
  if (colored)
    return Structure(Schema::colored_digraph(), n, {e, r, g, b}, {}, std::move(labels));
  return Structure(Schema::digraph(), n, {e}, {}, std::move(labels));
}

namespace {

using LabelMap = std::function<std::string(const std::string&)>;

Permutation relabeled(const Structure& s, const LabelMap& f) {
  Permutation p(s.size());
  for (const auto& [e, l] : s.labels()) p[e] = s.at(f(l));
  return p;
}

void add_generator(GadgetOutput& g, const LabelMap& f) {
  Permutation p = relabeled(*g.structure, f);
  if (!is_automorphism(*g.structure, p))
    throw StructuralError("gadget generator is not an automorphism");
  g.automorphism_generators.push_back(std::move(p));
}

LabelMap pair_map(const std::vector<std::pair<std::string, std::string>>& swaps) {
  auto m = std::make_shared<std::map<std::string, std::string>>();
  for (const auto& [a, b] : swaps) {
    (*m)[a] = b;
    (*m)[b] = a;
  }
  return [m](const std::string& l) {
    auto it = m->find(l);
    return it == m->end() ? l : it->second;
  };
}

bool opens(char c) { return c == '[' || c == '(' || c == '<'; }
bool closes(char c) { return c == ']' || c == ')' || c == '>' || c == ','; }

// Exchanges whole-token occurrences of a and b (tokens are delimited by brackets or the
// ends of the label).
std::string swap_tokens(const std::string& s, const std::string& a, const std::string& b) {
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    bool hit = false;
    for (const auto* x : {&a, &b}) {
      std::size_t end = i + x->size();
      if (s.compare(i, x->size(), *x) == 0 && (i == 0 || opens(s[i - 1])) &&
          (end == s.size() || closes(s[end]))) {
        out += x == &a ? b : a;
        i = end;
        hit = true;
        break;
      }
    }
    if (!hit) out += s[i++];
  }
  return out;
}

LabelMap token_swap(std::string a, std::string b) {
  return [a = std::move(a), b = std::move(b)](const std::string& l) { return swap_tokens(l, a, b); };
}

void structure_from(GadgetOutput& g, const LabeledDigraph& d, bool colored) {
  g.structure = std::make_shared<const Structure>(d.to_structure(colored));
}

// Polarity gadget: wiring of each middle vertex to (p|p', q|q', r|r').

struct NpWire {
  char kind;
  int index;
  bool primed_pole, primed_blue, primed_green;
};
constexpr NpWire kNpWires[] = {
    {'c', 1, false, false, false}, {'c', 2, false, true, true},  {'d', 1, false, false, true},
    {'d', 2, false, true, false},  {'c', 3, true, false, true},  {'c', 4, true, true, false},
    {'d', 3, true, false, false},  {'d', 4, true, true, true},
};

struct NpNames {
  std::string level;  // empty for the standalone gadget
  std::string pole(const std::string& base) const { return level.empty() ? base : base + "_" + level; }
  std::string mid(char kind, int i) const {
    return level.empty() ? std::string(1, kind) + "_" + std::to_string(i)
                         : std::string(1, kind) + "^" + level + "_" + std::to_string(i);
  }
  std::string aux(char kind, int i, int t) const {
    std::string a(1, kind == 'c' ? 'a' : 'b');
    return level.empty() ? a + "^" + std::to_string(i) + "_" + std::to_string(t)
                         : a + "^{" + level + "," + std::to_string(i) + "}_" + std::to_string(t);
  }
};

int aux_low(char kind) { return kind == 'c' ? 1 : 2; }

void add_I_np(LabeledDigraph& g, int j, const NpNames& nm) {
  g.add(nm.pole("p"), "R");
  g.add(nm.pole("p'"), "R");
  for (const auto& w : kNpWires) g.add(nm.mid(w.kind, w.index));
  g.add(nm.pole("q"), "B");
  g.add(nm.pole("q'"), "B");
  g.add(nm.pole("r"), "G");
  g.add(nm.pole("r'"), "G");
  for (const auto& w : kNpWires) {
    std::string m = nm.mid(w.kind, w.index);
    g.edge(nm.pole(w.primed_pole ? "p'" : "p"), m);
    g.edge(m, nm.pole(w.primed_blue ? "q'" : "q"));
    g.edge(m, nm.pole(w.primed_green ? "r'" : "r"));
  }
  for (const auto& w : kNpWires)
    for (int t = aux_low(w.kind); t <= j; ++t) {
      g.add(nm.aux(w.kind, w.index, t));
      g.edge(nm.aux(w.kind, w.index, t), nm.mid(w.kind, w.index));
    }
}

// Swaps of middle vertices (with their auxiliaries) given as pairs of indices per kind.
void middle_swaps(std::vector<std::pair<std::string, std::string>>& out, const NpNames& nm, int j,
                  char kind, int a, int b) {
  out.push_back({nm.mid(kind, a), nm.mid(kind, b)});
  for (int t = aux_low(kind); t <= j; ++t) out.push_back({nm.aux(kind, a, t), nm.aux(kind, b, t)});
}

// J/J' connectors and the two-level PSPACE gadget.

using MidName = std::function<std::string(char, int)>;

std::string aux_of(const std::string& v, int t) { return "aux_" + std::to_string(t) + "(" + v + ")"; }

void add_with_aux(LabeledDigraph& g, const std::string& v, char kind, int j) {
  g.add(v);
  for (int t = aux_low(kind); t <= j; ++t) {
    g.add(aux_of(v, t));
    g.edge(aux_of(v, t), v);
  }
}

// J_j (prime = false) or J'_j connecting z to (q, q').
void add_J(LabeledDigraph& g, const std::string& z, const std::string& q, const std::string& qp, int j,
           bool prime, const MidName& mid) {
  for (char kind : {'c', 'd'})
    for (int i = 1; i <= 4; ++i) {
      std::string v = mid(kind, i);
      add_with_aux(g, v, kind, j);
      g.edge(z, v);
      bool to_q = prime ? (i % 2 == 1) : (kind == 'c');
      g.edge(v, to_q ? q : qp);
    }
}

bool upper_has_prime(char kind, int i) {
  if (kind == 'c') return i <= 4 || i >= 9;
  return i <= 4 || (i >= 13 && i <= 16);
}
bool upper_from_p(int i) { return i <= 8; }
int upper_count(char kind) { return kind == 'c' ? 12 : 20; }

struct FloorNames {
  std::string tag;  // empty for the standalone gadget
  std::string upper(char kind, int i) const {
    std::string k(1, kind);
    return tag.empty() ? k + "^U_" + std::to_string(i) : k + "^{" + tag + ",U}_" + std::to_string(i);
  }
  std::string lower(char kind, int i, const std::string& u) const {
    std::string k(1, kind);
    return (tag.empty() ? k + "^L_" : k + "^{" + tag + ",L}_") + std::to_string(i) + "[" + u + "]";
  }
};

void ensure(LabeledDigraph& g, const std::string& v) {
  if (!g.has(v)) g.add(v);
}

void add_pspace_floor(LabeledDigraph& g, int j, const FloorNames& nm, const std::string& p,
                      const std::string& pp, const std::string& q, const std::string& qp,
                      std::map<std::string, std::string>* notes) {
  ensure(g, p);
  ensure(g, pp);
  ensure(g, q);
  ensure(g, qp);
  for (char kind : {'c', 'd'})
    for (int i = 1; i <= upper_count(kind); ++i) {
      std::string u = nm.upper(kind, i);
      add_with_aux(g, u, kind, j);
      g.edge(upper_from_p(i) ? p : pp, u);
    }
  for (char kind : {'c', 'd'})
    for (int i = 1; i <= upper_count(kind); ++i) {
      std::string u = nm.upper(kind, i);
      bool prime = upper_has_prime(kind, i);
      add_J(g, u, q, qp, j - 1, prime, [&](char k, int l) { return nm.lower(k, l, u); });
      if (notes) (*notes)[u] = prime ? "J'" : "J";
    }
}

struct UpperBlock {
  char kind;
  int first;
};
constexpr UpperBlock kBlocks[] = {{'c', 1}, {'c', 5}, {'c', 9}, {'d', 1},
                                  {'d', 5}, {'d', 9}, {'d', 13}, {'d', 17}};

// Generators of a floor: permutations of same-kind upper vertices carrying the same gadget
// type from the same pole, and the local symmetries of each attached J/J'. `labeled`
// restricts both to moves that respect the skyscraper's informal labels.
void floor_generators(GadgetOutput& g, const FloorNames& nm, bool labeled) {
  for (const auto& b : kBlocks) {
    bool tagged = labeled && b.kind == 'c' && b.first == 5;
    std::vector<std::pair<int, int>> moves =
        tagged ? std::vector<std::pair<int, int>>{{0, 1}, {2, 3}}
               : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}};
    for (auto [x, y] : moves)
      add_generator(g, token_swap(nm.upper(b.kind, b.first + x), nm.upper(b.kind, b.first + y)));
  }
  for (char kind : {'c', 'd'})
    for (int i = 1; i <= upper_count(kind); ++i) {
      std::string u = nm.upper(kind, i);
      bool tagged = labeled && kind == 'c' && i >= 5 && i <= 8;
      std::vector<std::pair<int, int>> moves;
      if (upper_has_prime(kind, i))
        moves = {{1, 3}, {2, 4}};
      else if (tagged)
        moves = {{1, 2}, {3, 4}};
      else
        moves = {{1, 2}, {2, 3}, {3, 4}};
      for (char lk : {'c', 'd'})
        for (auto [x, y] : moves) add_generator(g, token_swap(nm.lower(lk, x, u), nm.lower(lk, y, u)));
    }
}

std::string vt(int t) { return "v" + std::to_string(t + 1); }
std::string copy_label(const std::string& w, int t) { return "<" + w + "," + vt(t) + ">"; }

}  // namespace

GadgetOutput build_I_np(int j, bool colored) {
  if (j < 1) throw DomainError("I_np gadget needs j >= 1");
  LabeledDigraph d;
  NpNames nm;
  add_I_np(d, j, nm);
  GadgetOutput g;
  structure_from(g, d, colored);
  for (const char* v : {"p", "p'", "q", "q'", "r", "r'"}) g.designated[v] = g.structure->at(v);
  // (p,p') fixed; (p,q) pairs swapped; (p,r) pairs swapped.
  const int swaps[3][4][2] = {{{1, 2}, {3, 4}}, {{1, 4}, {2, 3}}, {{1, 3}, {2, 4}}};
  const char* poles[3][2][2] = {{{"q", "q'"}, {"r", "r'"}}, {{"p", "p'"}, {"q", "q'"}}, {{"p", "p'"}, {"r", "r'"}}};
  for (int s = 0; s < 3; ++s) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int x = 0; x < 2; ++x) pairs.push_back({poles[s][x][0], poles[s][x][1]});
    for (int x = 0; x < 2; ++x)
      for (char kind : {'c', 'd'}) middle_swaps(pairs, nm, j, kind, swaps[s][x][0], swaps[s][x][1]);
    add_generator(g, pair_map(pairs));
  }
  return g;
}

namespace {

GadgetOutput build_J_any(int j, bool prime) {
  if (j < 1) throw DomainError("J gadgets need j >= 1");
  LabeledDigraph d;
  d.add("z");
  d.add("q");
  d.add("q'");
  auto mid = [](char k, int i) { return std::string(1, k) + "_" + std::to_string(i); };
  add_J(d, "z", "q", "q'", j, prime, mid);
  GadgetOutput g;
  structure_from(g, d, false);
  for (const char* v : {"z", "q", "q'"}) g.designated[v] = g.structure->at(v);
  std::vector<std::pair<int, int>> moves =
      prime ? std::vector<std::pair<int, int>>{{1, 3}, {2, 4}}
            : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 4}};
  for (char kind : {'c', 'd'})
    for (auto [x, y] : moves) add_generator(g, token_swap(mid(kind, x), mid(kind, y)));
  if (prime) {
    auto flip = [mid](const std::string& l) {
      std::string s = swap_tokens(l, "q", "q'");
      for (char kind : {'c', 'd'}) {
        s = swap_tokens(s, mid(kind, 1), mid(kind, 2));
        s = swap_tokens(s, mid(kind, 3), mid(kind, 4));
      }
      return s;
    };
    add_generator(g, flip);
  }
  return g;
}

}  // namespace

GadgetOutput build_J(int j) { return build_J_any(j, false); }
GadgetOutput build_J_prime(int j) { return build_J_any(j, true); }

GadgetOutput build_I_pspace(int j) {
  if (j < 2) throw DomainError("the PSPACE gadget I_j needs j >= 2");
  LabeledDigraph d;
  FloorNames nm;
  GadgetOutput g;
  add_pspace_floor(d, j, nm, "p", "p'", "q", "q'", &g.notes);
  structure_from(g, d, false);
  for (const char* v : {"p", "p'", "q", "q'"}) g.designated[v] = g.structure->at(v);
  floor_generators(g, nm, false);
  return g;
}

GadgetOutput build_domset_structure(const Graph& graph, int k, bool colored) {
  if (k < 1) throw DomainError("DOMSET structure needs k >= 1");
  int n = graph.size();
  if (n < 1) throw DomainError("DOMSET structure needs a nonempty graph");
  LabeledDigraph d;
  auto level = [](int j) { return NpNames{std::to_string(j)}; };
  for (int j = k; j >= 1; --j) add_I_np(d, j, level(j));
  for (int j = k; j >= 2; --j) {
    NpNames up = level(j), down = level(j - 1);
    d.edge(up.pole("q"), down.pole("p"));
    d.edge(up.pole("q'"), down.pole("p'"));
    d.edge(up.pole("r"), down.pole("p"));
    d.edge(up.pole("r'"), down.pole("p'"));
  }
  std::vector<std::string> middles;
  for (int j = k; j >= 1; --j) {
    NpNames nm = level(j);
    for (const auto& w : kNpWires) {
      std::string m = nm.mid(w.kind, w.index);
      middles.push_back(m);
      std::vector<std::string> copies;
      for (int t = 0; t < n; ++t) copies.push_back(copy_label(m, t));
      d.replace(d.id(m), copies);
      // Each copy gets its own auxiliary in-neighbors.
      for (int a = aux_low(w.kind); a <= j; ++a) {
        std::string aux = nm.aux(w.kind, w.index, a);
        d.remove(d.id(aux));
        for (int t = 0; t < n; ++t) {
          d.add(copy_label(aux, t));
          d.edge(copy_label(aux, t), copies[t]);
        }
      }
    }
  }
  NpNames bottom = level(1);
  std::vector<std::string> lows = {bottom.pole("q"), bottom.pole("q'"), bottom.pole("r"), bottom.pole("r'")};
  for (std::size_t i = 0; i < lows.size(); ++i) {
    std::vector<std::string> copies;
    for (int t = 0; t < n; ++t) copies.push_back(copy_label(lows[i], t));
    if (i == 1) copies.push_back("null_q'");
    if (i == 3) copies.push_back("null_r'");
    d.replace(d.id(lows[i]), copies);
  }
  for (int j = 1; j < k; ++j) {
    d.elide(d.id(level(j).pole("p")));
    d.elide(d.id(level(j).pole("p'")));
  }
  auto link = [&](int s, int t) {
    for (const auto& w : lows)
      for (const auto& m : middles) d.edge(copy_label(w, s), copy_label(m, t));
  };
  for (int t = 0; t < n; ++t) link(t, t);
  for (auto [s, t] : graph.edges()) {
    link(s, t);
    link(t, s);
  }
  GadgetOutput g;
  structure_from(g, d, colored);
  NpNames top = level(k);
  g.designated["a"] = g.structure->at(top.pole("p"));
  g.designated["a'"] = g.structure->at(top.pole("p'"));
  g.designated["null_q'"] = g.structure->at("null_q'");
  g.designated["null_r'"] = g.structure->at("null_r'");
  for (const auto& sigma : graph_automorphisms(graph)) {
    bool identity = true;
    for (int i = 0; i < n; ++i) identity = identity && sigma[i] == i;
    if (identity) continue;
    add_generator(g, [&sigma](const std::string& l) {
      auto comma = l.rfind(",v");
      if (l.empty() || l[0] != '<' || comma == std::string::npos) return l;
      int t = std::stoi(l.substr(comma + 2)) - 1;
      return l.substr(0, comma) + "," + vt(sigma[t]) + ">";
    });
  }
  return g;
}

GadgetOutput build_skyscraper(const QbfInstance& phi_in, int t) {
  phi_in.validate();
  QbfInstance phi = phi_in.alternating() ? phi_in : make_alternating(phi_in);
  int m = static_cast<int>(phi.clauses.size());
  if (t < 1 || t > m) throw DomainError("skyscraper needs 1 <= t <= number of clauses");
  int k = phi.num_vars / 2;
  LabeledDigraph d;
  GadgetOutput g;
  auto pole = [](const std::string& b, int j) { return b + "_" + std::to_string(j); };
  std::map<std::string, std::string> informal;
  for (int j = k; j >= 1; --j) {
    FloorNames nm{std::to_string(j)};
    std::string q = j > 1 ? pole("p", j - 1) : "q_1";
    std::string qp = j > 1 ? pole("p'", j - 1) : "q'_1";
    add_pspace_floor(d, 2 * j + m - t, nm, pole("p", j), pole("p'", j), q, qp, nullptr);
    g.notes["floor " + std::to_string(j)] = "I_" + std::to_string(2 * j + m - t);
    std::string upper_var = "x" + std::to_string(2 * k - 2 * j + 1);
    std::string lower_var = "x" + std::to_string(2 * k - 2 * j + 2);
    for (int i = 5; i <= 8; ++i) {
      std::string u = nm.upper('c', i);
      informal[u] = (i <= 6 ? "T(" : "F(") + upper_var + ")";
      for (char kind : {'c', 'd'})
        for (int l = 1; l <= 4; ++l) informal[nm.lower(kind, l, u)] = (l <= 2 ? "T(" : "F(") + lower_var + ")";
    }
  }
  std::vector<std::string> vs, vps;
  for (int i = 1; i <= m; ++i) {
    vs.push_back("v_C" + std::to_string(i));
    vps.push_back("v'_C" + std::to_string(i));
  }
  std::vector<std::string> sqp = vps;
  for (int i = 1; i <= m; ++i) sqp.push_back("null_" + std::to_string(i));
  d.replace(d.id("q_1"), vs);
  d.replace(d.id("q'_1"), sqp);
  std::map<std::string, std::vector<std::string>> by_tag;
  for (const auto& [v, tag] : informal) by_tag[tag].push_back(v);
  for (int i = 0; i < m; ++i)
    for (int lit : phi.clauses[i]) {
      std::string tag = (lit > 0 ? "T(x" : "F(x") + std::to_string(std::abs(lit)) + ")";
      for (const auto& target : by_tag[tag]) {
        d.edge(vs[i], target);
        d.edge(vps[i], target);
      }
    }
  structure_from(g, d, false);
  for (const auto& [v, tag] : informal) g.informal_labels[g.structure->at(v)] = tag;
  g.designated["a"] = g.structure->at(pole("p", k));
  g.designated["a'"] = g.structure->at(pole("p'", k));
  for (int i = 1; i <= m; ++i) {
    for (const auto& name : {vs[i - 1], vps[i - 1], "null_" + std::to_string(i)})
      g.designated[name] = g.structure->at(name);
  }
  for (int j = k; j >= 1; --j) floor_generators(g, FloorNames{std::to_string(j)}, true);
  return g;
}

std::vector<std::vector<int>> graph_automorphisms(const Graph& g) {
  int n = g.size();
  if (n > 8) throw DomainError("graph automorphisms: at most 8 vertices");
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = 0; v < n && ok; ++v) ok = g.adjacent(u, v) == g.adjacent(p[u], p[v]);
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::string save_gadget(const GadgetOutput& g) {
  nlohmann::json j = structure_to_json(*g.structure);
  j["designated"] = g.designated;
  nlohmann::json inf = nlohmann::json::object();
  for (const auto& [e, tag] : g.informal_labels) inf[std::to_string(e)] = tag;
  j["informal_labels"] = inf;
  j["automorphisms"] = g.automorphism_generators;
  j["notes"] = g.notes;
  return j.dump(1) + "\n";
}

GadgetOutput load_gadget(const std::string& text) {
  nlohmann::json j = parse_json(text);
  GadgetOutput g;
  g.structure = std::make_shared<const Structure>(structure_from_json(j));
  try {
    if (j.contains("designated")) g.designated = j["designated"].get<std::map<std::string, Element>>();
    if (j.contains("informal_labels"))
      for (const auto& [e, tag] : j["informal_labels"].items())
        g.informal_labels[static_cast<Element>(std::stoul(e))] = tag.get<std::string>();
    if (j.contains("automorphisms")) g.automorphism_generators = j["automorphisms"].get<std::vector<Permutation>>();
    if (j.contains("notes")) g.notes = j["notes"].get<std::map<std::string, std::string>>();
  } catch (const std::exception& e) {
    throw ParseError(std::string("gadget: ") + e.what());
  }
  for (const auto& p : g.automorphism_generators)
    if (!is_automorphism(*g.structure, p)) throw StructuralError("gadget: invalid automorphism generator");
  for (const auto& [name, e] : g.designated)
    if (e >= g.structure->size()) throw StructuralError("gadget: designated vertex out of range");
  return g;
}

}  // namespace gamelab
