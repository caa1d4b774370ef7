#include <gtest/gtest.h>

#include <random>

#include "gamelab/errors.hpp"
#include "gamelab/formula.hpp"
#include "test_util.hpp"

using namespace gamelab;
using namespace gamelab::testing;

TEST(FormulaText, ParsesIntoNnfAndRoundTrips) {
  Formula f = parse_formula("EXISTS x1 FORALL x2 . (E(x1,x2) & !E(x2,x1)) | x1=x2");
  EXPECT_EQ(f.quantifier_count(), 2);
  EXPECT_TRUE(f.free_vars.empty());
  EXPECT_EQ(f.matrix.kind, Matrix::Kind::Or);
  EXPECT_EQ(print_formula(f), "EXISTS x1 FORALL x2 . (E(x1,x2) & !E(x2,x1)) | x1=x2");
  EXPECT_EQ(parse_formula(print_formula(f)), f);

  Formula g = parse_formula("!(E(x1,x2) | !(x1 = x2))");
  EXPECT_EQ(print_formula(g), "!E(x1,x2) & x1=x2");
  EXPECT_EQ(g.free_vars, (std::vector<std::string>{"x1", "x2"}));
  Formula h = parse_formula("FREE(x3) EXISTS x1 . TRUE");
  EXPECT_EQ(h.free_vars, (std::vector<std::string>{"x3"}));
  EXPECT_EQ(parse_formula(print_formula(h)), h);
  EXPECT_THROW(parse_formula("EXISTS x1 E(x1,x1)"), ParseError);
  EXPECT_THROW(parse_formula("EXISTS x1 EXISTS x1 . E(x1,x1)"), StructuralError);
  EXPECT_THROW(parse_formula("E(x1,"), ParseError);
}

TEST(Evaluate, BasicSentences) {
  Formula f = parse_formula("EXISTS x1 EXISTS x2 . E(x1,x2)");
  EXPECT_TRUE(evaluate(*single_edge(), f, {}));
  EXPECT_FALSE(evaluate(*edgeless(2), f, {}));
  EXPECT_THROW(evaluate(*edgeless(2), parse_formula("EXISTS x1 . F(x1)"), {}), StructuralError);
  EXPECT_THROW(evaluate(*edgeless(2), parse_formula("E(x1,x1)"), {}), StructuralError);
  EXPECT_TRUE(evaluate(*edgeless(2), parse_formula("!E(x1,x1)"), {{"x1", 1}}));
}

TEST(Evaluate, RenamingBoundVariables) {
  std::mt19937 rng(3);
  Formula f = parse_formula("FORALL x1 EXISTS x2 . E(x1,x2) | x1=x2");
  Formula g = parse_formula("FORALL y EXISTS z . E(y,z) | y=z");
  for (int i = 0; i < 50; ++i) {
    auto s = random_digraph(rng, 1 + rng() % 5, 0.4);
    EXPECT_EQ(evaluate(*s, f, {}), evaluate(*s, g, {}));
  }
}

TEST(Separates, Examples) {
  Formula f = parse_formula("EXISTS x1 EXISTS x2 . E(x1,x2)");
  EXPECT_TRUE(separates(f, {bare(single_edge())}, {bare(edgeless(2))}));
  EXPECT_FALSE(separates(f, {bare(single_edge())}, {bare(single_edge())}));
  EXPECT_THROW(separates(f, {PebbledStructure(single_edge(), {{"x1", 0}})}, {}), StructuralError);
}

TEST(Bounds, ClosedForms) {
  EXPECT_EQ(count_bound(1, 0, 2, 1), 32);
  EXPECT_EQ(count_bound(1, 0, 2, 0), 2);
  EXPECT_EQ(atom_bound(1, 0, 2, 1), 8);
  EXPECT_EQ(count_bound(0, 1, 2, 1), BigInt(1) << 17);
  EXPECT_THROW(count_bound(1, 0, 1, 1), DomainError);
  EXPECT_THROW(count_bound(1, 0, 2, 4), DomainError);
  EXPECT_EQ(atom_bound(1, 0, 2, 4), BigInt(32) << 32);
}

TEST(Bounds, EnumeratedSentencesWithinBound) {
  for (int m = 0; m <= 2; ++m)
    EXPECT_LE(enumerated_sentence_count(Schema::digraph(), m), count_bound(1, 0, 2, m)) << m;
  // Consistent types over two variables with one binary relation: 2 + 16.
  EXPECT_EQ(consistent_types(Schema::digraph(), {"x1", "x2"}).size(), 18u);
  EXPECT_EQ(atom_pool(Schema::digraph(), {"x1", "x2"}).size(), 8u);
}

TEST(Synthesis, SpecExamples) {
  auto r2 = synth_separating({bare(single_edge())}, {bare(edgeless(2))}, 2);
  ASSERT_EQ(r2.status, SynthResult::Status::Found);
  EXPECT_EQ(r2.formula.quantifier_count(), 2);
  EXPECT_TRUE(separates(r2.formula, {bare(single_edge())}, {bare(edgeless(2))}));
  Formula ref = parse_formula("EXISTS x1 EXISTS x2 . E(x1,x2)");
  std::mt19937 rng(8);
  // Equivalent on loop-free oriented graphs, the only atomic types the inputs realize.
  for (int i = 0; i < 100; ++i) {
    std::size_t n = 1 + rng() % 4;
    std::vector<Tuple> edges;
    for (Element a = 0; a < n; ++a)
      for (Element b = a + 1; b < n; ++b)
        if (rng() % 3 == 0) edges.push_back(rng() % 2 ? Tuple{a, b} : Tuple{b, a});
    auto s = digraph(n, edges);
    EXPECT_EQ(evaluate(*s, r2.formula, {}), evaluate(*s, ref, {}));
  }
  EXPECT_EQ(synth_separating({bare(single_edge())}, {bare(edgeless(2))}, 1).status,
            SynthResult::Status::None);
  auto s = random_digraph(rng, 4, 0.5);
  EXPECT_EQ(synth_separating({bare(s)}, {bare(s)}, 3).status, SynthResult::Status::None);
}

TEST(Synthesis, BudgetGivesUnknown) {
  auto r = synth_separating({bare(single_edge())}, {bare(edgeless(2))}, 2, {5, 60});
  EXPECT_EQ(r.status, SynthResult::Status::Unknown);
}

TEST(Synthesis, PebbledInputsUseFreeVariables) {
  PebbledStructure a(single_edge(), {{"x1", 0}});
  PebbledStructure b(single_edge(), {{"x1", 1}});
  auto r = synth_separating({a}, {b}, 1);
  ASSERT_EQ(r.status, SynthResult::Status::Found);
  EXPECT_EQ(r.formula.free_vars, (std::vector<std::string>{"x1"}));
  EXPECT_EQ(r.formula.quantifier_count(), 1);
  EXPECT_EQ(r.formula.prefix[0].second, "x2");
}
