#include <gtest/gtest.h>

#include <memory>

#include "gadgetlab/corpus.hpp"
#include "gadgetlab/ef_solver.hpp"
#include "gadgetlab/error.hpp"
#include "gadgetlab/isomorphism.hpp"
#include "gadgetlab/strategy.hpp"
#include "gadgetlab/type_partition.hpp"
#include "oracles.hpp"

using namespace gadgetlab;

namespace {

Structure random_small(oracle::Gen& g, const Language& lang) {
  return oracle::random_structure(g, lang, g.between(1, 4), 4);
}

bool partition_equivalent(const Structure& a, const Structure& b, std::size_t k) {
  TypeInterner interner;
  auto pa = rank_k_type_partition(a, k, 0, interner);
  auto pb = rank_k_type_partition(b.reordered_to(a.language()), k, 0, interner);
  return pa.ids[0] == pb.ids[0];
}

}  // namespace

TEST(PartialIsomorphism, AgreesWithOracle) {
  oracle::Gen g(31);
  Language lang({{"E", 2}, {"P", 1}}, {"c"});
  for (int i = 0; i < 300; ++i) {
    auto a = oracle::random_structure(g, lang, g.between(1, 4), 5);
    auto b = oracle::random_structure(g, lang, g.between(1, 4), 5);
    std::size_t len = g.below(3);
    std::vector<Vertex> ap, bp;
    for (std::size_t j = 0; j < len; ++j) {
      ap.push_back(static_cast<Vertex>(g.below(a.size())));
      bp.push_back(static_cast<Vertex>(g.below(b.size())));
    }
    EXPECT_EQ(is_partial_isomorphism(a, ap, b, bp), oracle::partial_iso(a, ap, b, bp));
  }
}

TEST(EfSolver, MatchesNaiveMinimax) {
  oracle::Gen g(37);
  Language lang({{"E", 2}, {"P", 1}});
  for (int i = 0; i < 120; ++i) {
    auto a = random_small(g, lang);
    auto b = random_small(g, lang);
    std::size_t k = g.between(1, 3);
    EXPECT_EQ(duplicator_wins(a, {}, b, {}, k), oracle::naive_ef(a, {}, b, {}, k))
        << "instance " << i;
  }
}

TEST(EfSolver, MatchesNaiveMinimaxWithPicksAndConstants) {
  oracle::Gen g(41);
  Language lang({{"E", 2}}, {"c"});
  for (int i = 0; i < 80; ++i) {
    auto a = random_small(g, lang);
    auto b = random_small(g, lang);
    std::vector<Vertex> ap = {static_cast<Vertex>(g.below(a.size()))};
    std::vector<Vertex> bp = {static_cast<Vertex>(g.below(b.size()))};
    std::size_t k = g.between(0, 2);
    EXPECT_EQ(duplicator_wins(a, ap, b, bp, k), oracle::naive_ef(a, ap, b, bp, k));
  }
}

TEST(EfSolver, AgreesWithTypePartition) {
  oracle::Gen g(43);
  Language lang({{"E", 2}, {"P", 1}});
  for (int i = 0; i < 80; ++i) {
    auto a = random_small(g, lang);
    auto b = random_small(g, lang);
    for (std::size_t k = 0; k <= 3; ++k) EXPECT_EQ(duplicator_wins(a, {}, b, {}, k), partition_equivalent(a, b, k));
  }
}

TEST(EfSolver, LinearOrderThreshold) {
  for (std::size_t k = 1; k <= 3; ++k) {
    std::size_t t = (std::size_t{1} << k) - 1;
    for (std::size_t m = 1; m <= 8; ++m)
      for (std::size_t n = m; n <= 8; ++n) {
        bool expected = m == n || (m >= t && n >= t);
        EXPECT_EQ(duplicator_wins(linear_order(m), {}, linear_order(n), {}, k), expected)
            << "k=" << k << " m=" << m << " n=" << n;
      }
  }
}

TEST(EfSolver, DifferentLanguagesRejected) {
  EXPECT_THROW(EfSolver(linear_order(2, "R"), linear_order(2, "S")), Error);
}

TEST(EfSolver, BudgetExceededIsDistinct) {
  EXPECT_THROW(duplicator_wins(linear_order(8), {}, linear_order(9), {}, 4, 50), BudgetExceeded);
}

TEST(EfSolver, BestResponseKeepsTheWin) {
  auto a = linear_order(7);
  auto b = linear_order(8);
  EfSolver solver(a, b);
  ASSERT_TRUE(solver.duplicator_wins(3));
  for (Vertex v = 0; v < 7; ++v) {
    auto w = solver.best_response({}, {}, true, v, 2);
    ASSERT_TRUE(w.has_value());
    std::vector<Vertex> ap = {v}, bp = {*w};
    EXPECT_TRUE(oracle::naive_ef(a, ap, b, bp, 2));
  }
}

TEST(EquivalenceRank, LinearOrders) {
  auto r = equivalence_rank(linear_order(3), linear_order(4), 4);
  EXPECT_EQ(r.rank, 2);
  EXPECT_FALSE(r.truncated);
  auto same = equivalence_rank(linear_order(3), linear_order(3), 2);
  EXPECT_EQ(same.rank, 2);
  EXPECT_TRUE(same.truncated);
}

TEST(EquivalenceRank, ConstantsDisagree) {
  Language lang({{"P", 1}}, {"c"});
  Structure a(lang, 2, {{{0}}}, {0});
  Structure b(lang, 2, {{{0}}}, {1});
  EXPECT_EQ(equivalence_rank(a, b, 2).rank, -1);
  EXPECT_EQ(rho_distance(a, b, 2).value, Rational(2));
}

TEST(RhoDistance, PowersOfHalf) {
  auto d = rho_distance(linear_order(3), linear_order(4), 4);
  EXPECT_EQ(d.value, make_rational(1, 4));
  EXPECT_FALSE(d.truncated);
}

TEST(RhoDistance, UltrametricOnRandomTriples) {
  oracle::Gen g(47);
  Language lang({{"E", 2}});
  for (int i = 0; i < 40; ++i) {
    auto a = random_small(g, lang);
    auto b = random_small(g, lang);
    auto c = random_small(g, lang);
    auto ab = rho_distance(a, b, 3).value;
    auto bc = rho_distance(b, c, 3).value;
    auto ac = rho_distance(a, c, 3).value;
    EXPECT_LE(ac, std::max(ab, bc));
    EXPECT_EQ(ab, rho_distance(b, a, 3).value);
  }
}

TEST(Certificate, IsomorphismShortcut) {
  auto a = directed_cycles({5, 7});
  auto b = relabel(a, 3);
  auto cert = certify_equivalent(a, b, 6);
  EXPECT_EQ(cert.verdict, Verdict::equivalent);
  EXPECT_EQ(cert.method, CertificateMethod::isomorphism);
  auto game = certify_equivalent(linear_order(3), linear_order(4), 2);
  EXPECT_EQ(game.verdict, Verdict::equivalent);
  EXPECT_EQ(game.method, CertificateMethod::game);
  auto tight = certify_equivalent(linear_order(9), linear_order(10), 4, 10);
  EXPECT_EQ(tight.verdict, Verdict::budget_exceeded);
}

TEST(TypePartition, RefinesWithDepth) {
  oracle::Gen g(53);
  Language lang({{"E", 2}});
  for (int i = 0; i < 20; ++i) {
    auto s = oracle::random_structure(g, lang, g.between(2, 5), 8);
    TypeInterner interner;
    auto p1 = rank_k_type_partition(s, 1, 2, interner);
    auto p2 = rank_k_type_partition(s, 2, 2, interner);
    for (std::size_t x = 0; x < p2.ids.size(); ++x)
      for (std::size_t y = 0; y < p2.ids.size(); ++y)
        if (p2.ids[x] == p2.ids[y]) {
          EXPECT_EQ(p1.ids[x], p1.ids[y]);
        }
  }
}

TEST(TypePartition, SameTypeMatchesGame) {
  oracle::Gen g(59);
  Language lang({{"E", 2}});
  for (int i = 0; i < 60; ++i) {
    auto a = random_small(g, lang);
    auto b = random_small(g, lang);
    std::vector<Vertex> at = {static_cast<Vertex>(g.below(a.size())), static_cast<Vertex>(g.below(a.size()))};
    std::vector<Vertex> bt = {static_cast<Vertex>(g.below(b.size())), static_cast<Vertex>(g.below(b.size()))};
    std::size_t k = g.below(3);
    EXPECT_EQ(same_type(a, at, b, bt, k), oracle::naive_ef(a, at, b, bt, k));
  }
}

TEST(Strategy, SolverStrategySurvivesExhaustivePlay) {
  auto a = linear_order(7);
  auto b = linear_order(9);
  auto solver = std::make_shared<EfSolver>(a, b);
  SolverStrategy s(solver, 3);
  auto check = exhaustive_spoiler_check(a, b, s, 3);
  EXPECT_TRUE(check.survived);
  EXPECT_GT(check.plays, 0u);
}

TEST(Strategy, SolverStrategyRefusesLostPositions) {
  auto a = linear_order(2);
  auto b = linear_order(3);
  auto solver = std::make_shared<EfSolver>(a, b);
  SolverStrategy s(solver, 2);
  EXPECT_THROW(exhaustive_spoiler_check(a, b, s, 2), Error);
}

TEST(Strategy, BadBijectionLoses) {
  auto a = directed_cycles({4});
  CopyStrategy s({1, 0, 2, 3});
  auto check = exhaustive_spoiler_check(a, a, s, 2);
  EXPECT_FALSE(check.survived);
  EXPECT_FALSE(check.losing_play.empty());
}

TEST(Strategy, CopyStrategyHasInfiniteHorizon) {
  auto a = directed_cycles({4});
  auto b = relabel(a, 9);
  auto iso = find_isomorphism(a, b);
  ASSERT_TRUE(iso);
  CopyStrategy s(*iso);
  EXPECT_TRUE(exhaustive_spoiler_check(a, b, s, 3).survived);
  EXPECT_GT(s.horizon(), 1000u);
}

TEST(Strategy, ComposedStrategySurvives) {
  auto a1 = linear_order(3);
  auto a2 = linear_order(4);
  auto g1 = path_gadget(4);
  auto g2 = path_gadget(5);
  auto c1 = std::make_shared<const ConstructedStructure>(gadget_construct(a1, "R", g1));
  auto c2 = std::make_shared<const ConstructedStructure>(gadget_construct(a2, "R", g2));
  auto base_solver = std::make_shared<EfSolver>(a1, a2);
  auto gadget_solver = std::make_shared<EfSolver>(g1.as_structure(), g2.as_structure());
  ASSERT_TRUE(base_solver->duplicator_wins(2));
  ASSERT_TRUE(gadget_solver->duplicator_wins(1));
  auto composed = compose_strategy(std::make_unique<SolverStrategy>(base_solver, 2),
                                   std::make_unique<SolverStrategy>(gadget_solver, 1), c1, c2);
  EXPECT_EQ(composed->horizon(), 1u);
  auto check = exhaustive_spoiler_check(c1->result, c2->result, *composed, 1);
  EXPECT_TRUE(check.survived);
  EXPECT_GT(check.plays, 0u);
}

TEST(Strategy, HorizonExhausted) {
  auto a = linear_order(3);
  auto solver = std::make_shared<EfSolver>(a, a);
  SolverStrategy s(solver, 1);
  s.respond(Side::left, 0);
  try {
    s.respond(Side::left, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::horizon_exhausted);
  }
}
