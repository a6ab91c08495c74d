#include <gtest/gtest.h>

#include <set>

#include "gadgetlab/ef_solver.hpp"
#include "gadgetlab/error.hpp"
#include "gadgetlab/fragmentation.hpp"
#include "gadgetlab/gadget.hpp"
#include "gadgetlab/isomorphism.hpp"
#include "gadgetlab/profile.hpp"
#include "gadgetlab/representation.hpp"
#include "gadgetlab/stone_pairing.hpp"
#include "oracles.hpp"

using namespace gadgetlab;

namespace {

// Builds A*G directly from the definition, numbering copies like the library.
Structure naive_construct(const Structure& a, const std::string& r, const Gadget& g) {
  const auto& edges = a.relation(r);
  std::vector<Vertex> non_roots;
  for (Vertex v = 0; v < g.size(); ++v)
    if (std::find(g.roots().begin(), g.roots().end(), v) == g.roots().end()) non_roots.push_back(v);
  std::size_t n = a.size() + edges.size() * non_roots.size();
  auto image = [&](std::size_t e, Vertex v) -> Vertex {
    for (std::size_t i = 0; i < g.arity(); ++i)
      if (g.roots()[i] == v) return edges[e][i];
    std::size_t rank = static_cast<std::size_t>(std::find(non_roots.begin(), non_roots.end(), v) - non_roots.begin());
    return static_cast<Vertex>(a.size() + e * non_roots.size() + rank);
  };
  std::vector<RelationSymbol> rels;
  std::vector<std::vector<Tuple>> tuples;
  for (std::size_t i = 0; i < a.language().relations().size(); ++i) {
    if (a.language().relations()[i].name == r) continue;
    rels.push_back(a.language().relations()[i]);
    tuples.push_back(a.relation(i));
  }
  for (std::size_t gi = 0; gi < g.body().language().relations().size(); ++gi) {
    const auto& sym = g.body().language().relations()[gi];
    auto it = std::find(rels.begin(), rels.end(), sym);
    std::size_t idx = static_cast<std::size_t>(it - rels.begin());
    if (it == rels.end()) {
      rels.push_back(sym);
      tuples.emplace_back();
    }
    for (std::size_t e = 0; e < edges.size(); ++e)
      for (const auto& t : g.body().relation(gi)) {
        Tuple m;
        for (auto v : t) m.push_back(image(e, v));
        tuples[idx].push_back(m);
      }
  }
  return Structure(Language(rels, a.language().constants()), n, tuples, a.constants());
}

Structure base_with_r(oracle::Gen& g, std::size_t n, std::size_t arity, std::size_t max_edges) {
  Language lang({{"R", arity}, {"P", 1}});
  return oracle::random_structure(g, lang, n, max_edges, true);
}

}  // namespace

TEST(Gadget, RootsFromConstants) {
  Language lang({{"E", 2}}, {"z1", "z2"});
  Structure s(lang, 3, {{{0, 1}, {1, 2}}}, {2, 0});
  auto g = Gadget::from_structure(s);
  EXPECT_EQ(g.roots(), (std::vector<Vertex>{2, 0}));
  EXPECT_EQ(g.non_roots(), (std::vector<Vertex>{1}));
  EXPECT_EQ(g.root_index(0), std::optional<std::size_t>(1));
  EXPECT_TRUE(g.as_structure().identical(s));
  Structure bad(Language({{"E", 2}}, {"z1", "z2"}), 3, {{}}, {1, 1});
  EXPECT_THROW(Gadget::from_structure(bad), Error);
}

TEST(Gadget, ConstructionMatchesDefinition) {
  oracle::Gen g(61);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t arity = g.between(1, 3);
    auto a = base_with_r(g, g.between(arity, 6), arity, 4);
    Language gl({{"E", 2}, {"P", 1}});
    auto gadget = oracle::random_gadget(g, gl, g.between(arity, 5), arity, 5);
    auto c = gadget_construct(a, "R", gadget);
    auto expected = naive_construct(a, "R", gadget);
    EXPECT_TRUE(c.result.reordered_to(expected.language()).identical(expected)) << "trial " << trial;
    EXPECT_EQ(c.result.size(), a.size() + a.relation("R").size() * (gadget.size() - arity));
  }
}

TEST(Gadget, ProvenanceInvertsCopyVertex) {
  auto a = undirected_graph(4, {{0, 1}, {1, 2}, {2, 3}}, "R");
  auto g = path_gadget(3);
  auto c = gadget_construct(a, "R", g);
  for (Vertex v = static_cast<Vertex>(c.internal_count()); v < c.result.size(); ++v) {
    const auto& o = c.origin(v);
    EXPECT_EQ(c.copy_vertex(o.slot, o.edge, o.gadget_vertex), v);
    EXPECT_EQ(c.rho(v), c.edges[0][o.edge]);
    EXPECT_EQ(c.edge_index(0, c.rho(v)), std::optional<std::size_t>(o.edge));
  }
  EXPECT_THROW(c.origin(0), Error);
}

TEST(Gadget, ArityMismatchAndSymbolClash) {
  auto a = undirected_graph(3, {{0, 1}}, "R");
  Gadget one(Structure(Language({{"E", 2}}), 2, {{{0, 1}}}), {0});
  EXPECT_THROW(gadget_construct(a, "R", one), Error);
  Gadget clash(Structure(Language({{"R", 2}}), 2, {{{0, 1}}}), {0, 1});
  EXPECT_THROW(gadget_construct(a, "R", clash), Error);
  EXPECT_THROW(gadget_construct(a, "Q", path_gadget(2)), Error);
}

TEST(Gadget, LiftedSymbols) {
  Structure a(Language({{"R", 2}}), 3, {{{0, 1}, {1, 2}}});
  ConstructionOptions opts;
  opts.lifted = true;
  auto c = gadget_construct(a, "R", path_gadget(3), opts);
  EXPECT_EQ(c.result.relation("R"), a.relation("R"));
  EXPECT_EQ(c.result.relation("Int").size(), 3u);
  EXPECT_EQ(c.result.relation("Ext").size(), 4u);
  const auto& rho = c.result.relation("rho");
  ASSERT_EQ(rho.size(), 4u);
  for (const auto& t : rho) EXPECT_EQ(Tuple(t.begin() + 1, t.end()), c.rho(t[0]));
}

TEST(Gadget, RestrictedRhoOnlyNextToRoots) {
  Structure a(Language({{"R", 2}}), 2, {{{0, 1}}});
  ConstructionOptions opts;
  opts.lifted = true;
  opts.restricted_rho = true;
  auto c = gadget_construct(a, "R", path_gadget(4), opts);
  // Path 0 - 2 - 3 - 4 - 1: only 2 and 4 touch a root.
  std::set<Vertex> with_rho;
  for (const auto& t : c.result.relation("rho")) with_rho.insert(t[0]);
  EXPECT_EQ(with_rho, (std::set<Vertex>{2, 4}));
}

TEST(Gadget, UndirectedModeOneCopyPerPair) {
  auto a = undirected_graph(3, {{0, 1}, {1, 2}}, "R");
  ConstructionOptions opts;
  opts.undirected = true;
  auto c = gadget_construct(a, "R", path_gadget(2), opts);
  EXPECT_EQ(c.edges[0].size(), 2u);
  EXPECT_EQ(c.result.size(), 5u);
  EXPECT_TRUE(is_symmetric(c.result, 0));
  Gadget lopsided(Structure(Language({{"P", 1}}), 2, {{{0}}}), {0, 1});
  EXPECT_THROW(gadget_construct(a, "R", lopsided, opts), Error);
}

TEST(Gadget, MultiGadgetEqualsSequential) {
  Structure a(Language({{"R", 2}, {"S", 1}}), 3, {{{0, 1}, {1, 2}}, {{0}, {2}}});
  Gadget gs(Structure(Language({{"E", 2}}), 2, {{{0, 1}}}), {0});
  auto both = multi_gadget_construct(a, {"R", "S"}, {path_gadget(2), gs});
  auto first = gadget_construct(a, "R", path_gadget(2));
  auto second = gadget_construct(first.result, "S", gs);
  EXPECT_TRUE(isomorphic(both.result, second.result.reordered_to(both.result.language())));
  EXPECT_EQ(both.slot_count(), 2u);
}

TEST(Gadget, SubdivideAddsOneVertexPerEdge) {
  auto k3 = undirected_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  auto s = subdivide(k3);
  EXPECT_EQ(s.result.size(), 6u);
  EXPECT_EQ(s.result.relation("E").size(), 12u);
  EXPECT_EQ(gaifman_distance(s.result, 0, 1), Distance(2));
}

TEST(Gadget, PathGadgetShape) {
  auto g = path_gadget(3);
  EXPECT_EQ(g.size(), 4u);
  EXPECT_EQ(g.roots(), (std::vector<Vertex>{0, 3}));
  EXPECT_EQ(gaifman_distance(g.body(), 0, 3), Distance(3));
  EXPECT_THROW(path_gadget(0), Error);
}

TEST(Fragmentation, SigmaBasics) {
  auto s = SigmaEquivalence::from_labels({0, 1, 0});
  EXPECT_EQ(s.to_string(), "{1,3}{2}");
  EXPECT_EQ(s.class_count(), 2u);
  EXPECT_TRUE(s.related(0, 2));
  EXPECT_FALSE(s.related(0, 1));
  EXPECT_EQ(s.max_class_size(), 2u);
  EXPECT_EQ(SigmaEquivalence::discrete(3).class_count(), 3u);
  EXPECT_EQ(SigmaEquivalence::full(3).max_class_size(), 3u);
  EXPECT_THROW(SigmaEquivalence(2, {{0}}), Error);
  EXPECT_THROW(SigmaEquivalence(2, {{0, 1}, {1}}), Error);
}

TEST(Fragmentation, GadSigmaShape) {
  auto sigma = SigmaEquivalence::from_labels({0, 1, 0});
  auto g = gad_sigma(sigma);
  EXPECT_EQ(g.arity(), 3u);
  EXPECT_EQ(g.size(), 3u + 3u);
  EXPECT_EQ(sigma_symbols(sigma), (std::vector<std::string>{"R0", "R1", "R2"}));
  EXPECT_EQ(g.body().relation("R0").size(), 1u);
  EXPECT_EQ(g.body().relation("R1"), (std::vector<Tuple>{{0, 2, 4}}));
  EXPECT_EQ(g.body().relation("R2"), (std::vector<Tuple>{{1, 5}}));
}

TEST(Fragmentation, FragmentSingleEdge) {
  Structure a(Language({{"R", 2}}), 3, {{{0, 2}}});
  auto f = fragment(a, "R", SigmaEquivalence::discrete(2));
  EXPECT_EQ(f.structure().size(), 6u);
  EXPECT_EQ(f.subedge(0, 1), (Tuple{0, 4}));
  EXPECT_EQ(f.subedge(0, 2), (Tuple{2, 5}));
  EXPECT_EQ(f.superedge(f.auxiliary(0, 2)), 0u);
  Structure clash(Language({{"R", 2}, {"R1", 1}}), 2, {{{0, 1}}, {}});
  EXPECT_THROW(fragment(clash, "R", SigmaEquivalence::discrete(2)), Error);
  EXPECT_THROW(fragment(a, "R", SigmaEquivalence::discrete(3)), Error);
}

TEST(Fragmentation, EstimateSigmaFromRootDistances) {
  std::vector<Gadget> near, far;
  for (std::size_t n = 1; n <= 4; ++n) {
    near.push_back(path_gadget(2));
    far.push_back(path_gadget(2 * n + 3));
  }
  EXPECT_EQ(estimate_eq_sigma(near, 3).sigma, SigmaEquivalence::full(2));
  auto est = estimate_eq_sigma(far, 3);
  EXPECT_EQ(est.sigma, SigmaEquivalence::discrete(2));
  ASSERT_EQ(est.trajectories.size(), 1u);
  EXPECT_EQ(est.trajectories[0].back(), Distance(11));
  EXPECT_THROW(estimate_eq_sigma({}, 3), Error);
}

TEST(Profile, AllProfilesCountIsOrderedBellSum) {
  // p=2: {I:12}, {I:1,E:2}, {I:2,E:1}, {E:12}, {E:1}{E:2}.
  EXPECT_EQ(all_profiles(1).size(), 2u);
  EXPECT_EQ(all_profiles(2).size(), 5u);
  EXPECT_EQ(all_profiles(3).size(), 15u);
  EXPECT_EQ(to_string(make_profile(3, {1}, {{2, 0}})), "(I={2},E1={1,3})");
  EXPECT_THROW(make_profile(2, {0}, {}), Error);
}

TEST(Profile, ProbabilitiesSumToOne) {
  oracle::Gen g(67);
  for (int trial = 0; trial < 15; ++trial) {
    auto a = base_with_r(g, g.between(2, 4), 2, 3);
    if (a.relation("R").empty()) continue;
    auto c = gadget_construct(a, "R", path_gadget(g.between(1, 3)));
    for (std::size_t p = 1; p <= 3; ++p) {
      Rational sum = 0;
      for (const auto& pi : all_profiles(p)) sum += profile_probability_exact(c, pi);
      EXPECT_EQ(sum, Rational(1));
    }
  }
}

TEST(Profile, FormulaMatchesEnumerationForEqualCopies) {
  oracle::Gen g(71);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = base_with_r(g, g.between(2, 5), 2, 4);
    std::size_t m = a.relation("R").size();
    if (m == 0) continue;
    auto c = gadget_construct(a, "R", path_gadget(g.between(2, 3)));
    for (const auto& pi : all_profiles(2)) {
      if (pi.t() > m) continue;
      EXPECT_EQ(profile_probability_formula(internal_proportion(c), m, pi), profile_probability_exact(c, pi));
    }
  }
}

TEST(Representation, ProfileOfGroupsByCopy) {
  Structure a(Language({{"R", 2}}), 3, {{{0, 1}, {1, 2}}});
  auto c = gadget_construct(a, "R", path_gadget(3));
  // Copy 0 holds 3, 4; copy 1 holds 5, 6.
  std::vector<Vertex> t = {5, 0, 3, 6};
  EXPECT_EQ(profile_of(c, t), make_profile(4, {1}, {{0, 3}, {2}}));
  auto rep = representation_at(c, t, 1);
  ASSERT_EQ(rep.gadget_sides.size(), 2u);
  EXPECT_EQ(rep.base_side.roots.size(), 1u + 2u + 2u + 2u);
  EXPECT_EQ(rep.gadget_sides[0].roots.size(), 2u);
}

TEST(Representation, DepthFormula) {
  EXPECT_EQ(representation_depth(1, 1, 1, 2, 2), 4u * 3u);
  EXPECT_EQ(representation_depth(1, 0, 2, 2, 2), 8u);
}

TEST(Representation, EquivalenceImpliesBallEquivalence) {
  Structure a1(Language({{"R", 2}}), 3, {{{0, 1}, {1, 2}}});
  Structure a2(Language({{"R", 2}}), 4, {{{0, 1}, {1, 2}, {2, 3}}});
  auto c1 = gadget_construct(a1, "R", path_gadget(2));
  auto c2 = gadget_construct(a2, "R", path_gadget(2));
  std::size_t trues = 0;
  for (Vertex u = 0; u < c1.result.size(); ++u)
    for (Vertex v = 0; v < c2.result.size(); ++v) {
      std::vector<Vertex> t1 = {u}, t2 = {v};
      auto verdict = representation_equivalent(c1, t1, c2, t2, 1, 0);
      if (!verdict.equivalent) continue;
      ++trues;
      RootedStructure b1{c1.result, t1}, b2{c2.result, t2};
      EXPECT_TRUE(duplicator_wins(ball_of_roots(b1, 1).as_structure(), {}, ball_of_roots(b2, 1).as_structure(), {}, 1));
    }
  EXPECT_GT(trues, 0u);
}

TEST(Representation, LiftedFormulaIdentity) {
  // <psi, A*G> = <phi|pi, A> * Pr[pi] on tiny lifted instances.
  oracle::Gen g(73);
  ConstructionOptions opts;
  opts.lifted = true;
  auto phi = parse_formula("P(u) and not v1 = u", std::vector<std::string>{"u", "v1", "v2"});
  auto pi = make_profile(2, {0}, {{1}});
  for (int trial = 0; trial < 8; ++trial) {
    auto a = base_with_r(g, g.between(2, 4), 2, 3);
    if (a.relation("R").empty()) continue;
    auto c = gadget_construct(a, "R", path_gadget(2), opts);
    auto psi = lift_profile_formula(phi, pi, 2);
    auto lhs = stone_pairing_exact(c.result, psi);
    auto rhs = *conditional_stone_pairing(a, "R", phi, pi) * profile_probability_exact(c, pi);
    EXPECT_EQ(lhs, rhs);
  }
  EXPECT_THROW(lift_profile_formula(phi, make_profile(1, {0}, {}), 2), Error);
}
