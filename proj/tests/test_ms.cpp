#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gamelab/ef.hpp"
#include "gamelab/errors.hpp"
#include "gamelab/gadgets.hpp"
#include "gamelab/ms.hpp"
#include "gamelab/oracles.hpp"
#include "test_util.hpp"

using namespace gamelab;
using namespace gamelab::testing;

namespace {

// Up to two boards per side over random digraphs with 1..max_n elements, sharing 0 or 1 pebble.
MsPosition random_position(std::mt19937& rng, int max_n, int rounds) {
  std::uniform_int_distribution<int> size(1, max_n), count(1, 2), pebbles(0, 1);
  std::uniform_real_distribution<double> density(0.2, 0.6);
  MsPosition pos;
  pos.rounds = rounds;
  int p = pebbles(rng);
  for (auto* side : {&pos.left, &pos.right}) {
    int c = count(rng);
    for (int i = 0; i < c; ++i)
      side->push_back(random_pebbled(rng, random_digraph(rng, size(rng), density(rng)), p));
  }
  pos.deduplicate();
  return pos;
}

void expect_certificate(const MsPosition& pos) {
  MsOptions opt;
  opt.certificate = true;
  auto res = ms_winner(pos, SearchLimits::unlimited(), opt);
  ASSERT_EQ(res.winner, Winner::Spoiler);
  ASSERT_TRUE(res.certificate.has_value());
  EXPECT_TRUE(res.certificate->won());
  Formula f = ms_strategy_to_formula(*res.certificate);
  EXPECT_EQ(f.quantifier_count(), static_cast<int>(res.certificate->steps.size()));
  EXPECT_LE(f.quantifier_count(), pos.rounds);
  EXPECT_TRUE(separates(f, pos.left, pos.right)) << print_formula(f);
  EXPECT_TRUE(dnf_separates(f, pos.left, pos.right));
}

SpoilerScript constant_script(Side side, int rounds) {
  SpoilerScript s;
  s.name = "constant";
  s.sides.assign(rounds, side);
  s.step = [side](const MsPosition& pos, int) {
    const auto& boards = side == Side::Left ? pos.left : pos.right;
    return SpoilerMove{side, "", std::vector<Element>(boards.size(), 0)};
  };
  return s;
}

}  // namespace

TEST(Ms, IdenticalSingletonsDuplicator) {
  auto s = digraph(3, {{0, 1}, {1, 2}});
  for (int m = 0; m <= 3; ++m) EXPECT_EQ(ms_winner({{bare(s)}, {bare(s)}, m}).winner, Winner::Duplicator);
}

TEST(Ms, SingleEdgeVersusEdgeless) {
  MsPosition pos{{bare(single_edge())}, {bare(edgeless(2))}, 1};
  EXPECT_EQ(ms_winner(pos).winner, Winner::Duplicator);
  pos.rounds = 2;
  EXPECT_EQ(ms_winner(pos).winner, Winner::Spoiler);
  expect_certificate(pos);
}

TEST(Ms, PolarityGadgetOneRound) {
  auto g = build_I_np(1);
  MsPosition pos{{PebbledStructure(g.structure, {{"x1", g.at("p")}})},
                 {PebbledStructure(g.structure, {{"x1", g.at("p'")}})},
                 1};
  EXPECT_EQ(ms_winner(pos).winner, Winner::Duplicator);
}

TEST(Ms, ObliviousResponseAndDiscard) {
  auto a = single_edge(), b = edgeless(3);
  MsPosition pos{{bare(a)}, {bare(b)}, 2};
  auto next = oblivious_response(pos, {Side::Left, "x1", {0}});
  EXPECT_EQ(next.left.size(), 1u);
  EXPECT_EQ(next.right.size(), 3u);
  EXPECT_EQ(next.rounds, 1);
  EXPECT_EQ(discard(next).right.size(), 3u);
  EXPECT_THROW(oblivious_response(next, {Side::Left, "x1", {0}}), StructuralError);
  EXPECT_THROW(oblivious_response(pos, {Side::Left, "x1", {5}}), ScriptError);

  auto after = discard(oblivious_response(next, {Side::Left, "x2", {1}}));
  EXPECT_TRUE(after.left.empty());
  EXPECT_TRUE(after.right.empty());
  auto same = discard(pos);
  EXPECT_EQ(discard(same).left.size(), same.left.size());

  MsPosition mismatch{{PebbledStructure(a, {{"x1", 0}})}, {PebbledStructure(b, {{"x1", 0}})}, 0};
  mismatch.right[0] = PebbledStructure(digraph(1, {{0, 0}}), {{"x1", 0}});
  auto d = discard(mismatch);
  EXPECT_TRUE(d.left.empty() && d.right.empty());
}

TEST(Ms, DomsetRoundOneDiscardKeepsMirrorCopies) {
  auto g = build_domset_structure(Graph(3, {{0, 1}, {1, 2}}), 1);
  const auto& s = *g.structure;
  MsPosition pos{{PebbledStructure(g.structure, {{"x1", g.at("a")}})},
                 {PebbledStructure(g.structure, {{"x1", g.at("a'")}})},
                 3};
  auto after = discard(oblivious_response(pos, {Side::Left, "x2", {s.at("<c^1_1,v1>")}}));
  std::set<std::string> kinds;
  for (const auto& b : after.right) {
    std::string label = s.name_of(*b.element_of("x2"));
    kinds.insert(label.substr(0, label.find(',')));
    EXPECT_TRUE(matching_pair(after.left.at(0), b));
  }
  EXPECT_EQ(kinds, (std::set<std::string>{"<c^1_3", "<c^1_4", "<d^1_3", "<d^1_4"}));
  EXPECT_EQ(after.right.size(), 12u);
}

TEST(Ms, AgreesWithSubsetReferenceAndDiscard) {
  std::mt19937 rng(7);
  int spoiler = 0;
  for (int i = 0; i < 300; ++i) {
    auto pos = random_position(rng, 3, i % 3);
    auto ref = oracle::naive_ms_subset(pos.left, pos.right, pos.rounds);
    auto got = ms_winner(pos).winner;
    ASSERT_EQ(got, ref) << "instance " << i;
    EXPECT_EQ(ms_winner(discard(pos)).winner, got);
    if (got == Winner::Spoiler) {
      ++spoiler;
      expect_certificate(pos);
    }
  }
  EXPECT_GT(spoiler, 30);
}

TEST(Ms, SpoilerWinMatchesSeparatingFormula) {
  std::mt19937 rng(11);
  for (int i = 0; i < 80; ++i) {
    auto pos = random_position(rng, 4, i % 4);
    auto synth = synth_separating(pos.left, pos.right, pos.rounds, SearchLimits::unlimited());
    ASSERT_NE(synth.status, SynthResult::Status::Unknown);
    EXPECT_EQ(ms_winner(pos).winner == Winner::Spoiler, synth.status == SynthResult::Status::Found)
        << "instance " << i;
  }
}

TEST(Ms, EfDuplicatorImpliesMsDuplicator) {
  std::mt19937 rng(5);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    int m = 1 + i % 3;
    auto s1 = random_digraph(rng, 1 + i % 4, 0.4), s2 = random_digraph(rng, 1 + (i / 4) % 4, 0.4);
    if (ef_winner({bare(s1), bare(s2), m}).winner != Winner::Duplicator) continue;
    ++checked;
    EXPECT_EQ(ms_winner({{bare(s1)}, {bare(s2)}, m}).winner, Winner::Duplicator);
  }
  EXPECT_GT(checked, 20);
}

TEST(Ms, ZeroRoundCertificateUsesConstants) {
  Schema schema({{"E", 2}}, {"c"});
  auto a = std::make_shared<const Structure>(schema, 2, std::vector<std::vector<Tuple>>{{{0, 0}}},
                                             std::vector<Element>{0});
  auto b = std::make_shared<const Structure>(schema, 2, std::vector<std::vector<Tuple>>{{}},
                                             std::vector<Element>{0});
  MsPosition pos{{bare(a)}, {bare(b)}, 0};
  expect_certificate(pos);
}

TEST(Ms, BudgetExhaustionIsUnknown) {
  std::mt19937 rng(3);
  auto pos = MsPosition{{bare(random_digraph(rng, 5, 0.5))}, {bare(random_digraph(rng, 5, 0.5))}, 3};
  EXPECT_EQ(ms_winner(pos, {1, 60.0}).winner, Winner::Unknown);
}

TEST(MsScripts, ConstantScriptFailsOnIdenticalSingletons) {
  auto s = digraph(3, {{0, 1}});
  auto res = run_spoiler_script(constant_script(Side::Left, 2), {{bare(s)}, {bare(s)}, 2});
  EXPECT_FALSE(res.win);
  EXPECT_EQ(res.trace.steps.size(), 2u);
  EXPECT_THROW(run_spoiler_script(constant_script(Side::Left, 3), {{bare(s)}, {bare(s)}, 2}), ScriptError);
}

TEST(MsScripts, WrongSideIsScriptError) {
  auto s = digraph(2, {{0, 1}});
  auto script = constant_script(Side::Left, 1);
  script.sides = {Side::Right};
  EXPECT_THROW(run_spoiler_script(script, {{bare(s)}, {bare(edgeless(2))}, 1}), ScriptError);
}

TEST(MsScripts, WinningScriptGivesSeparator) {
  // Left then left: pebble both ends of the edge.
  SpoilerScript s;
  s.name = "edge";
  s.sides = {Side::Left, Side::Left};
  s.step = [](const MsPosition& pos, int round) {
    return SpoilerMove{Side::Left, "", std::vector<Element>(pos.left.size(), static_cast<Element>(round))};
  };
  MsPosition pos{{bare(single_edge())}, {bare(edgeless(2))}, 2};
  auto res = run_spoiler_script(s, pos);
  ASSERT_TRUE(res.win) << res.message;
  Formula f = ms_strategy_to_formula(res.trace);
  EXPECT_EQ(f.quantifier_count(), 2);
  EXPECT_TRUE(separates(f, pos.left, pos.right));

  auto composed = parallel_compose({SubGame{pos.left, pos.right, s}, SubGame{{}, {}, s}});
  EXPECT_TRUE(run_spoiler_script(composed, pos).win);

  auto other = s;
  other.sides = {Side::Left, Side::Right};
  EXPECT_THROW(parallel_compose({SubGame{pos.left, pos.right, s}, SubGame{{}, {}, other}}), StructuralError);
}

TEST(MsScripts, DuplicatorStrategyCheck) {
  auto s = digraph(3, {{0, 1}, {1, 2}});
  auto mirror = mirror_duplicator();
  for (int m = 0; m <= 2; ++m) EXPECT_EQ(check_duplicator_strategy(mirror, {{bare(s)}, {bare(s)}, m}), true);
  EXPECT_EQ(check_duplicator_strategy(mirror, {{bare(single_edge())}, {bare(edgeless(2))}, 2}), false);
  EXPECT_EQ(check_duplicator_strategy(mirror, {{bare(single_edge())}, {bare(edgeless(2))}, 1}), true);
}

TEST(Ms, DnfEvaluatorAgreesWithNaive) {
  auto f = parse_formula("EXISTS x FORALL y . E(x,y) & !E(y,x) | x = y | E(y,y)");
  std::mt19937 rng(1);
  for (int i = 0; i < 50; ++i) {
    auto a = bare(random_digraph(rng, 1 + i % 4, 0.5)), b = bare(random_digraph(rng, 1 + i % 3, 0.5));
    EXPECT_EQ(dnf_separates(f, {a}, {b}), separates(f, {a}, {b}));
  }
}
