#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "gamelab/errors.hpp"
#include "gamelab/graph.hpp"
#include "gamelab/oracles.hpp"
#include "gamelab/qbf.hpp"
#include "gamelab/structure_io.hpp"
#include "test_util.hpp"

using namespace gamelab;
using namespace gamelab::testing;

TEST(Schema, RejectsDuplicateNamesAndBadArity) {
  EXPECT_THROW(Schema({{"E", 2}, {"E", 1}}), StructuralError);
  EXPECT_THROW(Schema({{"E", 0}}), StructuralError);
  EXPECT_THROW(Schema({{"E", 2}}, {"E"}), StructuralError);
  EXPECT_EQ(Schema::colored_digraph().max_arity(), 2);
}

TEST(Structure, RejectsOutOfRangeTuples) {
  EXPECT_THROW(digraph(2, {{0, 2}}), StructuralError);
  EXPECT_THROW(Structure(Schema({{"E", 2}}, {"c"}), 2, {{}}, {3}), StructuralError);
}

TEST(MatchingPair, UnpebbledConstantFree) {
  EXPECT_TRUE(matching_pair(bare(single_edge()), bare(edgeless(5))));
}

TEST(MatchingPair, EdgeAtomDiffers) {
  PebbledStructure p(single_edge(), {{"x1", 0}, {"x2", 1}});
  PebbledStructure q(edgeless(2), {{"x1", 0}, {"x2", 1}});
  EXPECT_FALSE(matching_pair(p, q));
  EXPECT_NE(atomic_type_key(p), atomic_type_key(q));
}

TEST(MatchingPair, ColorSetsAndOrder) {
  auto s = single_edge();
  PebbledStructure p(s, {{"x1", 0}, {"x2", 1}});
  PebbledStructure q(s, {{"x2", 1}, {"x1", 0}});
  PebbledStructure r(s, {{"x1", 0}, {"x3", 1}});
  EXPECT_TRUE(matching_pair(p, q));
  EXPECT_EQ(atomic_type_key(p), atomic_type_key(q));
  EXPECT_FALSE(matching_pair(p, r));
}

TEST(MatchingPair, SchemaMismatchThrows) {
  auto colored = std::make_shared<const Structure>(Schema::colored_digraph(), 1,
                                                   std::vector<std::vector<Tuple>>(4));
  EXPECT_THROW(matching_pair(bare(colored), bare(edgeless(1))), StructuralError);
}

TEST(MatchingPair, ConstantsTakePart) {
  Schema sch({{"E", 2}}, {"c"});
  auto a = std::make_shared<const Structure>(sch, 2, std::vector<std::vector<Tuple>>{{{0, 1}}},
                                             std::vector<Element>{0});
  auto b = std::make_shared<const Structure>(sch, 2, std::vector<std::vector<Tuple>>{{{0, 1}}},
                                             std::vector<Element>{1});
  EXPECT_FALSE(matching_pair(PebbledStructure(a, {{"x1", 1}}), PebbledStructure(b, {{"x1", 0}})));
  EXPECT_TRUE(matching_pair(PebbledStructure(a, {{"x1", 1}}), PebbledStructure(b, {{"x1", 1}})) ==
              false);
  EXPECT_TRUE(matching_pair(PebbledStructure(a, {{"x1", 1}}), PebbledStructure(a, {{"x1", 1}})));
}

TEST(MatchingPair, HigherArity) {
  Schema sch({{"T", 3}});
  auto a = std::make_shared<const Structure>(sch, 3, std::vector<std::vector<Tuple>>{{{0, 1, 2}}});
  auto b = std::make_shared<const Structure>(sch, 3, std::vector<std::vector<Tuple>>{{{0, 2, 1}}});
  PebbledStructure p(a, {{"x1", 0}, {"x2", 1}, {"x3", 2}});
  PebbledStructure q(b, {{"x1", 0}, {"x2", 1}, {"x3", 2}});
  PebbledStructure q2(b, {{"x1", 0}, {"x2", 2}, {"x3", 1}});
  EXPECT_FALSE(matching_pair(p, q));
  EXPECT_TRUE(matching_pair(p, q2));
  EXPECT_EQ(matching_pair(p, q), oracle::naive_matching(p, q));
}

// Random corpus: symmetry, agreement with the brute-force definition and with the keys.
TEST(MatchingPair, RandomCorpusAgreesWithReference) {
  std::mt19937 rng(11);
  for (int it = 0; it < 3000; ++it) {
    std::size_t n1 = 1 + rng() % 6, n2 = 1 + rng() % 6;
    int k = static_cast<int>(rng() % 4);
    auto p = random_pebbled(rng, random_digraph(rng, n1, 0.3), k);
    auto q = random_pebbled(rng, random_digraph(rng, n2, 0.3), k);
    bool m = matching_pair(p, q);
    ASSERT_EQ(m, matching_pair(q, p));
    ASSERT_EQ(m, oracle::naive_matching(p, q));
    ASSERT_EQ(m, atomic_type_key(p) == atomic_type_key(q));
    // Extending by a fresh color can only keep or lose the match.
    if (!m) {
      for (Element u = 0; u < n1; ++u)
        for (Element v = 0; v < n2; ++v)
          ASSERT_FALSE(matching_pair(p.with("x9", u), q.with("x9", v)));
    }
  }
}

// Invariance under automorphisms, found by brute force on small structures.
TEST(MatchingPair, AutomorphismInvariance) {
  std::mt19937 rng(5);
  for (int it = 0; it < 60; ++it) {
    std::size_t n = 2 + rng() % 5;
    auto s = random_digraph(rng, n, 0.25);
    std::vector<Element> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    auto p = random_pebbled(rng, s, 2);
    auto q = random_pebbled(rng, random_digraph(rng, n, 0.25), 2);
    bool base = matching_pair(p, q);
    do {
      bool aut = true;
      for (const auto& t : s->relation(0).tuples())
        aut = aut && s->relation(0).contains(perm[t[0]], perm[t[1]]);
      if (!aut) continue;
      std::vector<Pebble> moved;
      for (const auto& pb : p.pebbles()) moved.push_back({pb.color, perm[pb.element]});
      ASSERT_EQ(base, matching_pair(PebbledStructure(s, moved), q));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(StructureIo, RoundTrips) {
  Structure empty(Schema::digraph(), 0, {{}});
  EXPECT_EQ(load_structure(save_structure(empty)), empty);
  auto e = single_edge();
  EXPECT_EQ(load_structure(save_structure(*e)), *e);
  Structure labeled(Schema({{"E", 2}, {"R", 1}}, {"c"}), 3, {{{2, 0}, {0, 1}}, {{1}}}, {2},
                    {{0, "p"}, {2, "c^1_5"}});
  std::string text = save_structure(labeled);
  EXPECT_EQ(load_structure(text), labeled);
  EXPECT_EQ(save_structure(load_structure(text)), text);
  PebbledStructure pb(std::make_shared<const Structure>(labeled), {{"x2", 1}, {"x1", 0}});
  auto back = load_pebbled(save_pebbled(pb));
  EXPECT_EQ(back.pebbles(), pb.pebbles());
}

TEST(StructureIo, ReportsLinesAndFields) {
  try {
    load_structure("{\n\"schema\": {\n  \"relations\": [\n ]\n,,}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5);
  }
  EXPECT_THROW(load_structure(R"({"schema":{"relations":[{"name":"E","arity":2}]},"relations":{}})"),
               ParseError);
  EXPECT_THROW(load_structure(R"({"schema":{"relations":[{"name":"E","arity":2}]},"universe_size":1,"relations":{"E":[[0,1]]}})"),
               ParseError);
}

TEST(Graph, DimacsRoundTripAndErrors) {
  Graph g = parse_dimacs("c path\np edge 3 2\ne 1 2\ne 2 3\n");
  EXPECT_EQ(g.size(), 3);
  EXPECT_TRUE(g.adjacent(0, 1));
  EXPECT_FALSE(g.adjacent(0, 2));
  EXPECT_EQ(parse_dimacs(write_dimacs(g)), g);
  EXPECT_THROW(parse_dimacs("p edge 2 1\ne 1 3\n"), ParseError);
  EXPECT_THROW(parse_dimacs("e 1 2\n"), ParseError);
}

TEST(Graph, IsomorphismClassCounts) {
  // 1, 1, 2, 4, 11 graphs on 0..4 vertices up to isomorphism.
  std::vector<std::size_t> expect{1, 1, 2, 4, 11};
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(graphs_up_to_iso(n).size(), expect[n]);
}

TEST(Qbf, QdimacsAndAlternation) {
  QbfInstance q = parse_qdimacs("c x\np cnf 3 2\na 1 0\ne 2 3 0\n1 -2 0\n3 0\n");
  ASSERT_EQ(q.num_vars, 3);
  EXPECT_EQ(q.prefix, (std::vector<Quantifier>{Quantifier::Forall, Quantifier::Exists, Quantifier::Exists}));
  EXPECT_EQ(parse_qdimacs(write_qdimacs(q)), q);
  std::vector<int> map;
  QbfInstance alt = make_alternating(q, &map);
  EXPECT_TRUE(alt.alternating());
  EXPECT_EQ(alt.num_vars, 6);
  EXPECT_EQ(map, (std::vector<int>{2, 3, 5}));
  EXPECT_EQ(oracle::maxqsat_value(alt), oracle::maxqsat_value(q));
  EXPECT_THROW(parse_qdimacs("p cnf 2 1\n1 3 0\n"), ParseError);
}
