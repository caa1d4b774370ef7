#include "gamelab/scripts.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "gamelab/errors.hpp"

namespace gamelab {

namespace {

std::string vertex_tag(int v) { return "v" + std::to_string(v + 1); }

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

bool related(const Relation& e, Element a, Element b) { return e.contains(a, b) || e.contains(b, a); }

// Smallest unpebbled neighbor of `center` (an out-neighbor, or an in-neighbor when
// `incoming`) whose only edge to any pebble is the one with `center`.
std::optional<Element> lone_neighbor(const PebbledStructure& b, Element center, bool incoming) {
  const Relation& e = b.structure().relation(0);
  const auto& cand = incoming ? e.in(center) : e.out(center);
  for (Element v : cand) {
    bool ok = !(incoming ? e.contains(center, v) : e.contains(v, center));
    for (const auto& p : b.pebbles()) {
      if (p.element == v) ok = false;
      if (p.element != center && related(e, v, p.element)) ok = false;
    }
    if (ok) return v;
  }
  return std::nullopt;
}

// Records the colors the script emits so later rounds can find earlier pebbles.
struct ColorLog {
  std::vector<std::string> colors;
  std::string next(const MsPosition& pos, int round) {
    if (round == 0) colors.clear();
    std::vector<std::string> used = pos.colors();
    used.insert(used.end(), colors.begin(), colors.end());
    colors.push_back(fresh_color(used));
    return colors.back();
  }
};

Side script_side(int round, int) { return round == 0 || round == 2 ? Side::Left : Side::Right; }

}  // namespace

std::vector<Side> domset_script_sides(int k) {
  std::vector<Side> sides(2 * k, Side::Left);
  sides.push_back(Side::Right);
  return sides;
}

SpoilerScript spoiler_script_domset(const GadgetOutput& gadget, int k, std::vector<int> domset) {
  if (k < 1) throw DomainError("DOMSET script needs k >= 1");
  if (domset.empty() || static_cast<int>(domset.size()) > k)
    throw DomainError("DOMSET script needs between 1 and k dominating vertices");
  while (static_cast<int>(domset.size()) < k) domset.push_back(domset.back());
  const Structure& s = *gadget.structure;
  std::vector<Element> mid, aux;
  for (int j = k; j >= 1; --j) {
    std::string u = vertex_tag(domset[k - j]);
    std::string lv = std::to_string(j);
    mid.push_back(s.at("<c^" + lv + "_1," + u + ">"));
    aux.push_back(s.at("<a^{" + lv + ",1}_1," + u + ">"));
  }
  Element null_q = gadget.at("null_q'"), null_r = gadget.at("null_r'");

  SpoilerScript script;
  script.name = "domset-spoiler";
  script.sides = domset_script_sides(k);
  script.step = [=](const MsPosition& pos, int round) {
    std::string color = fresh_color(pos.colors());
    if (round < 2 * k) {
      Element e = round % 2 == 0 ? mid[round / 2] : aux[round / 2];
      return SpoilerMove{Side::Left, color, std::vector<Element>(pos.left.size(), e)};
    }
    // The level-1 middle answer decides which bottom pair is forced.
    SpoilerMove move{Side::Right, color, {}};
    for (const auto& b : pos.right) {
      bool blue = false;
      for (const auto& p : b.pebbles()) blue = blue || starts_with(b.structure().name_of(p.element), "<c^1_3,");
      move.placement.push_back(blue ? null_r : null_q);
    }
    return move;
  };
  return script;
}

SpoilerScript spoiler_script_skyscraper(const GadgetOutput& gadget, const QbfInstance& phi_in, int t,
                                        std::function<bool(const std::vector<int>&)> policy) {
  QbfInstance phi = phi_in.alternating() ? phi_in : make_alternating(phi_in);
  int m = static_cast<int>(phi.clauses.size());
  if (phi.num_vars != 2) throw DomainError("skyscraper script handles one floor (two variables)");
  if (t < 1 || t > m) throw DomainError("skyscraper script needs 1 <= t <= number of clauses");
  const Structure& s = *gadget.structure;
  int j = 2 + m - t;
  Element upper = s.at(policy({}) ? "c^{1,U}_5" : "c^{1,U}_7");
  // Clause vertices v'_C by informal tag of the literals they contain.
  std::map<std::string, std::vector<Element>> primed_by_tag;
  for (int i = 0; i < m; ++i)
    for (int lit : phi.clauses[i]) {
      std::string tag = (lit > 0 ? "T(x" : "F(x") + std::to_string(std::abs(lit)) + ")";
      primed_by_tag[tag].push_back(s.at("v'_C" + std::to_string(i + 1)));
    }
  Element null1 = s.at("null_1");
  auto log = std::make_shared<ColorLog>();

  SpoilerScript script;
  script.name = "skyscraper-spoiler";
  script.sides = {Side::Left, Side::Right, Side::Left};
  for (int r = 0; r < j - 1; ++r) script.sides.push_back(Side::Right);
  script.step = [=](const MsPosition& pos, int round) {
    std::string color = log->next(pos, round);
    Side side = script_side(round, j);
    SpoilerMove move{side, color, {}};
    const auto& boards = side == Side::Left ? pos.left : pos.right;
    for (const auto& b : boards) {
      Element e = 0;
      if (round == 0) {
        e = upper;
      } else if (round == 1) {
        e = s.at("c^{1,L}_2[" + s.name_of(*b.element_of(log->colors[0])) + "]");
      } else {
        Element low = *b.element_of(log->colors[1]);
        if (round == 2) {
          // A lower c answer waits on its auxiliary; a lower d answer is attacked through a
          // clause vertex pointing back at it, or through a null below it.
          auto tag = gadget.informal_labels.find(low);
          if (starts_with(s.name_of(low), "c^")) {
            e = lone_neighbor(b, low, true).value_or(low);
          } else if (tag != gadget.informal_labels.end() && primed_by_tag.count(tag->second)) {
            e = primed_by_tag.at(tag->second).front();
          } else {
            e = null1;
          }
        } else {
          // Waiting boards get fresh targets below the lower pebble; the others are out-counted
          // on the lower pebble's auxiliaries.
          Element third = *b.element_of(log->colors[2]);
          bool waiting = s.relation(0).contains(third, low);
          e = lone_neighbor(b, low, !waiting).value_or(low);
        }
      }
      move.placement.push_back(e);
    }
    return move;
  };
  return script;
}

}  // namespace gamelab
