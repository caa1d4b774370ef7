#include <gtest/gtest.h>

#include "gamelab/errors.hpp"
#include "gamelab/oracles.hpp"
#include "gamelab/reductions.hpp"
#include "gamelab/scripts.hpp"

using namespace gamelab;

namespace {

QbfInstance qbf2(std::vector<std::vector<int>> clauses) {
  return {2, {Quantifier::Exists, Quantifier::Forall}, std::move(clauses)};
}

const Graph kP3(3, {{0, 1}, {1, 2}});
const Graph k2K1(2, {});
const Graph kK1(1, {});

}  // namespace

TEST(Reductions, RoundBudgets) {
  for (int k = 1; k <= 6; ++k) {
    EXPECT_EQ(domset_ms_rounds(k), (RoundBudget{2 * k + 1, k + 1}));
    EXPECT_EQ(domset_ef_rounds(k), (RoundBudget{k + 1, k}));
    for (int m = 1; m <= 4; ++m)
      for (int t = 1; t <= m; ++t) EXPECT_EQ(qsat_ms_rounds(k, m, t), (RoundBudget{2 * k + m - t + 2, 2 * k + m - t + 1}));
  }
  EXPECT_EQ(qsat_ms_rounds(1, 2, 2), (RoundBudget{4, 3}));
}

TEST(Reductions, DomsetToEf) {
  for (auto [g, expect] : {std::pair{kP3, Winner::Spoiler}, {k2K1, Winner::Duplicator}, {kK1, Winner::Spoiler}}) {
    auto r = reduce_domset_to_ef(g, 1);
    EXPECT_EQ(r.ef().rounds, 2);
    EXPECT_EQ(ef_winner(r.ef(), SearchLimits::unlimited(), r.ef_options()).winner, expect);
  }
}

TEST(Reductions, DomsetToMs) {
  auto r = reduce_domset_to_ms(kP3, 1);
  EXPECT_EQ(r.ms().rounds, 3);
  EXPECT_LT(r.budget.duplicator, r.budget.spoiler);
  auto script = spoiler_script_domset(r.gadget, 1, oracle::min_domset_witness(kP3));
  EXPECT_TRUE(run_spoiler_script(script, r.ms()).win);

  auto no = reduce_domset_to_ms(k2K1, 1);
  auto at = no.with_rounds(no.budget.duplicator);
  EXPECT_EQ(at.ms().rounds, 2);
  EXPECT_EQ(ms_winner(at.ms(), SearchLimits::unlimited(), at.ms_options()).winner, Winner::Duplicator);
}

TEST(Reductions, QsatToMs) {
  auto q = qbf2({{1}, {1, -2}});
  auto r = reduce_qsat_to_ms(q, 2);
  EXPECT_EQ(r.budget, (RoundBudget{4, 3}));
  auto script = spoiler_script_skyscraper(r.gadget, q, 2, [&](const std::vector<int>& a) {
    return oracle::best_existential_move(q, a);
  });
  EXPECT_TRUE(run_spoiler_script(script, r.ms()).win);
  EXPECT_THROW(reduce_qsat_to_ms(q, 0), DomainError);
  EXPECT_THROW(reduce_qsat_to_ms(q, 3), DomainError);
}

TEST(Approx, DomsetLoopFollowsEachSemantics) {
  // A stand-in that wins exactly from rounds = opt + 1 on A(G, k) with k >= opt.
  auto fake = [](const Graph& g) {
    int opt = oracle::min_domset_bruteforce(g);
    return MsDecider([opt](const ReductionOutput& r) {
      return r.parameter >= opt && r.ms().rounds >= opt + 1 ? Winner::Spoiler : Winner::Duplicator;
    });
  };
  Graph three(3, {});
  auto text = approx_domset(three, fake(three), DomsetSemantics::Text);
  EXPECT_EQ(text.status, ApproxResult::Status::Output);
  EXPECT_EQ(text.value, 3);
  EXPECT_EQ(text.queries.size(), 3u);
  EXPECT_EQ(text.queries.back().rounds, 4);

  auto listing = approx_domset(three, fake(three), DomsetSemantics::Listing);
  EXPECT_EQ(listing.status, ApproxResult::Status::NoOutput);
  EXPECT_EQ(listing.queries.size(), 3u);
  EXPECT_EQ(listing.queries.back().rounds, 3);

  auto unknown = approx_domset(three, [](const ReductionOutput&) { return Winner::Unknown; });
  EXPECT_EQ(unknown.status, ApproxResult::Status::Unknown);
  EXPECT_EQ(unknown.queries.size(), 1u);
}

TEST(Approx, DomsetWithExactSolver) {
  auto exact = exact_ms_decider(SearchLimits::unlimited());
  for (const auto& g : {kK1, kP3, k2K1}) {
    int opt = oracle::min_domset_bruteforce(g);
    auto r = approx_domset(g, exact, DomsetSemantics::Text);
    ASSERT_EQ(r.status, ApproxResult::Status::Output);
    EXPECT_GE(r.value, opt);
    EXPECT_LE(r.value, 2 * opt);
  }
}

TEST(Approx, MaxqsatLoop) {
  auto q = qbf2({{2}, {-2}});
  std::vector<int> asked;
  auto fake = [&](const ReductionOutput& r) {
    asked.push_back(r.ms().rounds);
    return r.ms().rounds >= 4 ? Winner::Spoiler : Winner::Duplicator;
  };
  auto res = approx_maxqsat(q, fake);
  EXPECT_EQ(res.status, ApproxResult::Status::Output);
  EXPECT_EQ(res.value, 1);
  EXPECT_EQ(asked, (std::vector<int>{3, 4}));

  auto none = approx_maxqsat(q, [](const ReductionOutput&) { return Winner::Duplicator; });
  EXPECT_EQ(none.status, ApproxResult::Status::NoOutput);
  EXPECT_EQ(none.value, 0);
  EXPECT_EQ(approx_maxqsat(q, [](const ReductionOutput&) { return Winner::Unknown; }).status,
            ApproxResult::Status::Unknown);
}
