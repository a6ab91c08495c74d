#include <gtest/gtest.h>

#include "gadgetlab/error.hpp"
#include "gadgetlab/evaluate.hpp"
#include "gadgetlab/formula.hpp"
#include "gadgetlab/profile.hpp"
#include "gadgetlab/stone_pairing.hpp"
#include "oracles.hpp"

using namespace gadgetlab;

namespace {

Structure triangle() { return undirected_graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

Structure star(std::size_t leaves) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return undirected_graph(leaves + 1, edges);
}

}  // namespace

TEST(Parser, FreeVariablesInFirstUseOrder) {
  auto f = parse_formula("E(y, x) and exists z. E(x, z)");
  EXPECT_EQ(f.free_variables(), (std::vector<std::string>{"y", "x"}));
  EXPECT_EQ(quantifier_rank(f), 1u);
}

TEST(Parser, BoundVariablesRenamed) {
  auto a = parse_formula("exists y. E(x, y)");
  auto b = parse_formula("exists w. E(x, w)");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.variable_names()[1], "_b0");
}

TEST(Parser, ShadowedVariables) {
  auto f = parse_formula("exists x. (E(x,x) and exists x. not E(x,x))");
  EXPECT_TRUE(f.is_sentence());
  EXPECT_EQ(quantifier_rank(f), 2u);
  Structure s(Language({{"E", 2}}), 2, {{{0, 0}}});
  EXPECT_TRUE(evaluate(s, f, std::vector<Vertex>{}));
}

TEST(Parser, ConstantsAndEquality) {
  auto f = parse_formula("x = @c or not E(@c, x)");
  EXPECT_EQ(f.constants_used(), (std::vector<std::string>{"c"}));
  EXPECT_EQ(f.free_count(), 1u);
}

TEST(Parser, ExplicitFreeOrder) {
  auto f = parse_formula("E(x, y)", std::vector<std::string>{"y", "x", "u"});
  EXPECT_EQ(f.free_count(), 3u);
  EXPECT_THROW(parse_formula("E(x, y)", std::vector<std::string>{"x"}), Error);
}

TEST(Parser, SyntaxErrorHasPosition) {
  try {
    parse_formula("E(x,, y)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 5u);
  }
  EXPECT_THROW(parse_formula("exists . E(x)"), ParseError);
  EXPECT_THROW(parse_formula("E(x) and"), ParseError);
  EXPECT_THROW(parse_formula("(E(x)"), ParseError);
}

TEST(Parser, LanguageChecks) {
  Language lang({{"E", 2}}, {"c"});
  EXPECT_NO_THROW(parse_formula("E(x, @c)", lang));
  EXPECT_THROW(parse_formula("F(x, y)", lang), Error);
  EXPECT_THROW(parse_formula("E(x)", lang), Error);
  EXPECT_THROW(parse_formula("E(x, @d)", lang), Error);
  EXPECT_THROW(parse_formula("E(x, y) and E(x)"), Error);
}

TEST(Parser, PrintParseRoundTrip) {
  oracle::Gen g(3);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::string> vars = {"x", "y"};
    std::size_t fresh = 0;
    auto f = Formula::from_expr(oracle::random_expr(g, vars, 4, fresh), std::vector<std::string>{"x", "y"});
    auto back = parse_formula(to_string(f), f.free_variables());
    EXPECT_EQ(to_string(back), to_string(f));
  }
}

TEST(Formula, NnfPushesNegations) {
  auto f = negation_normal_form(parse_formula("not exists y. (E(x,y) and not x = y)"));
  EXPECT_EQ(f.root().kind, NodeKind::Forall);
  EXPECT_EQ(to_string(f), "(forall _b0. (not (E(x,_b0)) or x = _b0))");
}

TEST(Formula, NnfPreservesTruthOnRandomInstances) {
  oracle::Gen g(7);
  for (int i = 0; i < 150; ++i) {
    std::vector<std::string> vars = {"x", "y"};
    std::size_t fresh = 0;
    auto f = Formula::from_expr(oracle::random_expr(g, vars, 4, fresh), std::vector<std::string>{"x", "y"});
    auto nnf = negation_normal_form(f);
    auto s = oracle::random_graph(g, g.between(1, 4), 0.5);
    for (Vertex x = 0; x < s.size(); ++x)
      for (Vertex y = 0; y < s.size(); ++y)
        EXPECT_EQ(oracle::naive_eval(s, f, {x, y}), oracle::naive_eval(s, nnf, {x, y})) << to_string(f);
  }
}

TEST(Evaluate, MatchesNaiveOracleOnRandomFormulas) {
  oracle::Gen g(13);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> vars = {"x", "y"};
    std::size_t fresh = 0;
    auto f = Formula::from_expr(oracle::random_expr(g, vars, 5, fresh), std::vector<std::string>{"x", "y"});
    Language lang({{"E", 2}});
    auto s = oracle::random_structure(g, lang, g.between(1, 5), 10);
    CompiledFormula cf(f, s);
    std::vector<Vertex> a(cf.variable_count());
    for (Vertex x = 0; x < s.size(); ++x)
      for (Vertex y = 0; y < s.size(); ++y) {
        a[0] = x;
        a[1] = y;
        ASSERT_EQ(cf.eval(a), oracle::naive_eval(s, f, {x, y})) << to_string(f);
      }
  }
}

TEST(Evaluate, GuardedQuantifiersWithConstants) {
  Language lang({{"E", 2}}, {"c"});
  Structure s(lang, 4, {{{0, 1}, {0, 2}, {3, 3}}}, {0});
  auto f = parse_formula("exists y. (E(@c, y) and exists z. (E(y, z) or y = z))", lang);
  EXPECT_TRUE(evaluate(s, f, std::vector<Vertex>{}));
  auto g = parse_formula("forall y. (not E(@c, y) or E(y, y))", lang);
  EXPECT_FALSE(evaluate(s, g, std::vector<Vertex>{}));
}

TEST(Evaluate, ValuationByName) {
  auto f = parse_formula("E(x, y)");
  EXPECT_TRUE(evaluate(triangle(), f, Valuation{{"x", 0}, {"y", 2}}));
  EXPECT_THROW(evaluate(triangle(), f, Valuation{{"x", 0}}), Error);
  EXPECT_THROW(evaluate(triangle(), f, std::vector<Vertex>{0, 3}), Error);
}

TEST(StonePairing, EdgeDensityOfTriangle) {
  EXPECT_EQ(stone_pairing_exact(triangle(), parse_formula("E(x,y)")), make_rational(2, 3));
}

TEST(StonePairing, SentencesAreZeroOrOne) {
  EXPECT_EQ(stone_pairing_exact(triangle(), parse_formula("exists x. exists y. E(x,y)")), Rational(1));
  EXPECT_EQ(stone_pairing_exact(triangle(), parse_formula("exists x. E(x,x)")), Rational(0));
}

TEST(StonePairing, DegreeOneInStar) {
  auto f = parse_formula("exists y. (E(x,y) and forall z. (not E(x,z) or z = y))");
  EXPECT_EQ(stone_pairing_exact(star(5), f), make_rational(5, 6));
}

TEST(StonePairing, MatchesNaiveOracle) {
  oracle::Gen g(17);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::string> vars = {"x", "y"};
    std::size_t fresh = 0;
    auto f = Formula::from_expr(oracle::random_expr(g, vars, 4, fresh), std::vector<std::string>{"x", "y"});
    auto s = oracle::random_graph(g, g.between(1, 6), 0.4);
    EXPECT_EQ(stone_pairing_exact(s, f), oracle::naive_pairing(s, f));
  }
}

TEST(StonePairing, WorkersDoNotChangeResult) {
  oracle::Gen g(19);
  auto s = oracle::random_graph(g, 30, 0.2);
  auto f = parse_formula("exists z. (E(x,z) and E(z,y))");
  PairingOptions one, many;
  many.workers = 4;
  EXPECT_EQ(stone_pairing_exact(s, f, one), stone_pairing_exact(s, f, many));
}

TEST(StonePairing, BudgetExceeded) {
  PairingOptions tight;
  tight.tuple_budget = 8;
  EXPECT_THROW(stone_pairing_exact(triangle(), parse_formula("E(x,y)"), tight), BudgetExceeded);
  EXPECT_THROW(stone_pairing_exact(Structure(Language({{"E", 2}}), 0, {{}}), parse_formula("E(x,y)")), Error);
}

TEST(StonePairing, SampledIsDeterministicAndClose) {
  oracle::Gen g(23);
  auto s = oracle::random_graph(g, 40, 0.3);
  auto f = parse_formula("E(x,y)");
  auto a = stone_pairing_sampled(s, f, 20000, 99);
  auto b = stone_pairing_sampled(s, f, 20000, 99);
  EXPECT_EQ(a.estimate, b.estimate);
  double exact = to_double(stone_pairing_exact(s, f));
  EXPECT_NEAR(to_double(a.estimate), exact, 4 * a.halfwidth + 1e-9);
  EXPECT_THROW(stone_pairing_sampled(s, f, 0, 1), Error);
  EXPECT_THROW(stone_pairing_sampled(s, parse_formula("exists x. E(x,x)"), 10, 1), Error);
}

TEST(ConditionalPairing, MatchesBruteForce) {
  // Base: directed R-edges plus unary P; profile (I={1}, E1={2}), arity 2.
  Language lang({{"R", 2}, {"P", 1}});
  oracle::Gen g(29);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = oracle::random_structure(g, lang, g.between(2, 5), 5);
    if (a.relation("R").empty()) continue;
    auto f = parse_formula("P(u) or R(v1, u) or v2 = u", std::vector<std::string>{"u", "v1", "v2"});
    auto pi = make_profile(2, {0}, {{1}});
    auto value = conditional_stone_pairing(a, "R", f, pi);
    ASSERT_TRUE(value.has_value());
    std::uint64_t hits = 0, total = 0;
    for (Vertex u = 0; u < a.size(); ++u)
      for (const auto& e : a.relation("R")) {
        ++total;
        if (oracle::naive_eval(a, f, {u, e[0], e[1]})) ++hits;
      }
    EXPECT_EQ(*value, make_rational(hits, total));
  }
}

TEST(ConditionalPairing, DistinctGroupsUseDistinctEdges) {
  Language lang({{"R", 2}});
  Structure a(lang, 3, {{{0, 1}, {1, 2}}});
  auto f = parse_formula("a1 = b1", std::vector<std::string>{"a1", "a2", "b1", "b2"});
  auto pi = make_profile(2, {}, {{0}, {1}});
  EXPECT_EQ(conditional_stone_pairing(a, "R", f, pi), Rational(0));
  auto three = make_profile(3, {}, {{0}, {1}, {2}});
  auto f3 = parse_formula("true", std::vector<std::string>{"a", "b", "c", "d", "e", "g"});
  EXPECT_EQ(conditional_stone_pairing(a, "R", f3, three), std::nullopt);
  EXPECT_THROW(conditional_stone_pairing(a, "R", parse_formula("true"), pi), Error);
}
