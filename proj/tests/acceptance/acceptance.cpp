#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "driver.hpp"
#include "gadgetlab/corpus.hpp"
#include "gadgetlab/ef_solver.hpp"
#include "gadgetlab/gadget.hpp"
#include "gadgetlab/profile.hpp"
#include "gadgetlab/representation.hpp"
#include "gadgetlab/sequences.hpp"
#include "gadgetlab/stone_pairing.hpp"
#include "gadgetlab/strategy.hpp"
#include "gadgetlab/theorem_checks.hpp"
#include "gadgetlab/trajectory.hpp"
#include "gadgetlab/type_partition.hpp"
#include "oracles.hpp"

using namespace gadgetlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

SequenceSpec family(std::string name, std::map<std::string, double> params = {},
                    std::map<std::string, std::string> options = {}, std::uint64_t seed = 0) {
  SequenceSpec s;
  s.family = std::move(name);
  s.params = std::move(params);
  s.options = std::move(options);
  s.seed = seed;
  return s;
}

std::string ratio(const Rational& r) { return to_string(r); }

std::size_t degree(const Structure& s, Vertex v) { return s.gaifman_adjacency()[v].size(); }

// 1. Vertex count and per-copy embedding on random (base, gadget) pairs.
Outcome construction_correctness() {
  oracle::Gen g(1001);
  Language gadget_lang({{"E", 2}, {"P", 1}, {"T", 3}});
  std::size_t checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t arity = g.between(1, 3);
    auto a = oracle::random_structure(g, Language({{"R", arity}, {"P", 1}}), g.between(arity, 6), 5, true);
    auto gadget = oracle::random_gadget(g, gadget_lang, g.between(arity, 5), arity, 6);
    auto c = gadget_construct(a, "R", gadget);
    const auto& edges = a.relation("R");
    std::size_t expected = a.size() + edges.size() * (gadget.size() - arity);
    if (c.result.size() != expected)
      return {false, "trial " + std::to_string(trial) + ": vertex count " + std::to_string(c.result.size()) +
                         " != " + std::to_string(expected)};
    const Structure& body = gadget.body();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      std::vector<Vertex> image(body.size());
      std::vector<int> preimage(c.result.size(), -1);
      for (Vertex v = 0; v < body.size(); ++v) {
        image[v] = c.copy_vertex(0, e, v);
        auto root = gadget.root_index(v);
        if (root ? image[v] != edges[e][*root] : image[v] < a.size())
          return {false, "trial " + std::to_string(trial) + ": copy " + std::to_string(e) + " misplaces vertex"};
        if (preimage[image[v]] != -1) return {false, "trial " + std::to_string(trial) + ": copy not injective"};
        preimage[image[v]] = static_cast<int>(v);
        if (!root) {
          const auto& o = c.origin(image[v]);
          if (o.edge != e || o.gadget_vertex != v) return {false, "trial " + std::to_string(trial) + ": provenance"};
        }
      }
      for (std::size_t gi = 0; gi < body.relations().size(); ++gi) {
        const std::string& name = body.language().relations()[gi].name;
        std::size_t ri = *c.result.language().relation_index(name);
        for (const auto& t : body.relation(gi)) {
          Tuple mapped;
          for (Vertex v : t) mapped.push_back(image[v]);
          if (!oracle::has_tuple(c.result, ri, mapped))
            return {false, "trial " + std::to_string(trial) + ": missing image of a " + name + " tuple"};
        }
        // Tuples touching a non-root of this copy come from the gadget.
        for (const auto& t : c.result.relation(ri)) {
          bool touches = std::any_of(t.begin(), t.end(), [&](Vertex v) {
            return v >= a.size() && preimage[v] != -1;
          });
          if (!touches) continue;
          Tuple back;
          for (Vertex v : t) {
            if (preimage[v] == -1) return {false, "trial " + std::to_string(trial) + ": tuple leaves its copy"};
            back.push_back(static_cast<Vertex>(preimage[v]));
          }
          if (!oracle::has_tuple(body, gi, back))
            return {false, "trial " + std::to_string(trial) + ": extra " + name + " tuple in copy"};
        }
      }
      ++checked;
    }
  }
  return {true, "200 pairs, " + std::to_string(checked) + " copies embedded"};
}

// 2. EF solver against the type partition, tuples of length p <= 2.
Outcome dual_oracle() {
  oracle::Gen g(2002);
  std::vector<Language> langs = {Language({{"E", 2}}), Language({{"E", 2}, {"P", 1}}),
                                 Language({{"P", 1}, {"Q", 1}})};
  std::size_t comparisons = 0;
  for (int i = 0; i < 50; ++i) {
    const Language& lang = langs[static_cast<std::size_t>(i) % langs.size()];
    auto a = oracle::random_structure(g, lang, g.between(1, 5), 7);
    auto b = oracle::random_structure(g, lang, g.between(1, 5), 7);
    EfSolver solver(a, b);
    for (std::size_t p = 0; p <= 2; ++p)
      for (std::size_t k = 0; k <= 3; ++k) {
        TypeInterner interner;
        auto pa = rank_k_type_partition(a, k, p, interner);
        auto pb = rank_k_type_partition(b, k, p, interner);
        std::size_t na = p == 0 ? 1 : (p == 1 ? a.size() : a.size() * a.size());
        std::size_t nb = p == 0 ? 1 : (p == 1 ? b.size() : b.size() * b.size());
        for (std::size_t x = 0; x < na; ++x)
          for (std::size_t y = 0; y < nb; ++y) {
            std::vector<Vertex> at, bt;
            if (p == 2) {
              at = {static_cast<Vertex>(x / a.size()), static_cast<Vertex>(x % a.size())};
              bt = {static_cast<Vertex>(y / b.size()), static_cast<Vertex>(y % b.size())};
            } else if (p == 1) {
              at = {static_cast<Vertex>(x)};
              bt = {static_cast<Vertex>(y)};
            }
            bool game = solver.duplicator_wins(at, bt, k);
            bool types = pa.id(at) == pb.id(bt);
            if (game != types)
              return {false, "instance " + std::to_string(i) + " p=" + std::to_string(p) + " k=" + std::to_string(k) +
                                 ": game " + std::to_string(game) + " vs types " + std::to_string(types)};
            ++comparisons;
          }
      }
  }
  std::size_t orders = 0;
  for (std::size_t k = 1; k <= 3; ++k) {
    std::size_t t = (std::size_t{1} << k) - 1;
    for (std::size_t m = 1; m <= 10; ++m)
      for (std::size_t n = m; n <= 10; ++n) {
        bool expected = m == n || (m >= t && n >= t);
        auto lm = linear_order(m), ln = linear_order(n);
        TypeInterner interner;
        bool types = rank_k_type_partition(lm, k, 0, interner).ids[0] == rank_k_type_partition(ln, k, 0, interner).ids[0];
        if (duplicator_wins(lm, {}, ln, {}, k) != expected || types != expected)
          return {false, "linear orders m=" + std::to_string(m) + " n=" + std::to_string(n) + " k=" + std::to_string(k)};
        ++orders;
      }
  }
  return {true, std::to_string(comparisons) + " tuple comparisons, " + std::to_string(orders) + " linear-order pairs"};
}

// 3. Continuity bound plus composed strategies under exhaustive play.
Outcome continuity() {
  std::size_t pass = 0, skip = 0, survived = 0;
  std::vector<std::pair<ContinuityInstance, std::size_t>> passed;
  for (std::size_t k = 1; k <= 2; ++k) {
    auto corpus = continuity_corpus(k);
    auto report = verify_continuity_bound(corpus, k);
    if (report.fail > 0) {
      for (const auto& i : report.instances)
        if (i.status == CheckStatus::fail) return {false, "k=" + std::to_string(k) + " " + i.label + ": " + i.detail};
    }
    pass += report.pass;
    skip += report.skip;
    for (std::size_t i = 0; i < corpus.size(); ++i)
      if (report.instances[i].status == CheckStatus::pass) passed.emplace_back(corpus[i], k);
  }
  if (pass < 20) return {false, "only " + std::to_string(pass) + " certified instances"};
  for (const auto& [inst, k] : passed) {
    if (survived == 5) break;
    std::size_t arity = inst.g1.arity();
    auto c1 = std::make_shared<const ConstructedStructure>(gadget_construct(inst.a1, inst.r_symbol, inst.g1));
    auto c2 = std::make_shared<const ConstructedStructure>(gadget_construct(inst.a2, inst.r_symbol, inst.g2));
    auto base_solver = std::make_shared<EfSolver>(inst.a1, inst.a2);
    auto gadget_solver = std::make_shared<EfSolver>(inst.g1.as_structure(), inst.g2.as_structure());
    auto composed = compose_strategy(std::make_unique<SolverStrategy>(base_solver, k * arity),
                                     std::make_unique<SolverStrategy>(gadget_solver, k), c1, c2);
    auto check = exhaustive_spoiler_check(c1->result, c2->result, *composed, k);
    if (!check.survived) return {false, "composed strategy lost on " + inst.label};
    ++survived;
  }
  if (survived < 5) return {false, "composed strategy ran on only " + std::to_string(survived) + " instances"};
  return {true, std::to_string(pass) + " certified instances pass, " + std::to_string(skip) +
                    " skipped, composed strategy survived on 5"};
}

// 4. Fragmentation bound at k = 1.
Outcome fragmentation() {
  auto report = verify_fragmentation_bound(fragmentation_corpus(), 1);
  for (const auto& i : report.instances)
    if (i.status == CheckStatus::fail) return {false, i.label + ": " + i.detail};
  if (report.pass < 10) return {false, "only " + std::to_string(report.pass) + " certified instances"};
  return {true, std::to_string(report.pass) + " pass, " + std::to_string(report.skip) + " skipped"};
}

// 5. K_n (odd n) or K_{2^n} (even n) with a star glued at one vertex.
Outcome example_fluctuation() {
  auto phi = parse_formula("exists y. (E(x,y) and forall z. (not E(x,z) or z = y))");
  std::vector<std::size_t> indices = {5, 6, 7, 8, 9, 10};
  auto t = trajectory_compute(family("fluctuating-base"), family("fluctuating-gadget"), {{"deg1", phi}}, indices);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    std::uint64_t n = indices[i];
    std::uint64_t two_n = std::uint64_t{1} << n;
    Rational closed = n % 2 == 1 ? make_rational(two_n, n + two_n) : make_rational(n, two_n + n);
    auto c = gadget_construct(generate(family("fluctuating-base"), n), "R",
                              generate_gadget(family("fluctuating-gadget"), n));
    std::uint64_t leaves = 0;
    for (Vertex v = 0; v < c.result.size(); ++v) leaves += degree(c.result, v) == 1;
    Rational counted = make_rational(leaves, c.result.size());
    if (!t.rows[i].value || *t.rows[i].value != closed || counted != closed)
      return {false, "n=" + std::to_string(n) + ": trajectory " +
                         (t.rows[i].value ? ratio(*t.rows[i].value) : std::string("NA")) + ", closed form " +
                         ratio(closed) + ", degree count " + ratio(counted)};
  }
  auto verdict = convergence_verdict(t).formulas[0].verdict;
  if (verdict != ConvergenceVerdict::fluctuating) return {false, std::string("verdict ") + to_string(verdict)};
  return {true, "n=5..10 exact (n=7 " + ratio(*t.rows[2].value) + ", n=8 " + ratio(*t.rows[3].value) +
                    "), verdict fluctuating"};
}

// 6. Subdivided lollipops, "x has exactly two neighbours of degree 2".
Outcome example_lollipop() {
  const std::string deg2 = "(exists a. exists b. (not a = b and E(Y,a) and E(Y,b) and "
                           "forall c. (not E(Y,c) or c = a or c = b)))";
  auto at = [&](const std::string& v) {
    std::string s = deg2;
    for (std::size_t p; (p = s.find('Y')) != std::string::npos;) s.replace(p, 1, v);
    return s;
  };
  auto phi = parse_formula("exists y1. exists y2. (not y1 = y2 and E(x,y1) and E(x,y2) and " + at("y1") + " and " +
                           at("y2") + " and forall w. (not E(x,w) or not " + at("w") + " or w = y1 or w = y2))");
  auto spec = family("lollipop-alternating", {}, {{"transform", "subdivide"}});
  std::vector<std::size_t> indices = {8, 9, 11, 12, 13, 16};
  auto t = trajectory_compute(spec, std::nullopt, {{"two", phi}}, indices);
  std::map<std::size_t, double> value;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    auto s = generate(spec, indices[i]);
    std::uint64_t hits = 0;
    for (Vertex x = 0; x < s.size(); ++x) {
      std::size_t twos = 0;
      for (Vertex y : s.gaifman_adjacency()[x]) twos += degree(s, y) == 2;
      hits += twos == 2;
    }
    Rational local = make_rational(hits, s.size());
    if (!t.rows[i].value || *t.rows[i].value != local)
      return {false, "n=" + std::to_string(indices[i]) + ": evaluation disagrees with local count " + ratio(local)};
    value[indices[i]] = to_double(local);
  }
  std::ostringstream detail;
  detail.precision(4);
  for (auto [n, v] : value) detail << "n=" << n << ":" << v << " ";
  for (std::size_t n : {9, 11, 13})
    if (value[n] < 0.9) return {false, detail.str() + "odd value below 0.9"};
  if (!(value[8] > value[12] && value[12] > value[16])) return {false, detail.str() + "even values not decreasing"};
  if (value[13] - value[16] < 0.3) return {false, detail.str() + "gap below 0.3"};
  detail << "gap " << value[13] - value[16];
  return {true, detail.str()};
}

// 7. Profile statistics on equal-copy-size constructions.
Outcome representation_statistics() {
  oracle::Gen g(7007);
  std::size_t instances = 0, profiles = 0;
  while (instances < 30) {
    auto a = oracle::random_structure(g, Language({{"R", 2}, {"P", 1}}), g.between(2, 5), 5, true);
    std::size_t m = a.relation("R").size();
    if (m == 0) continue;
    auto c = gadget_construct(a, "R", path_gadget(g.between(1, 4)));
    std::size_t max_p = c.result.size() <= 12 ? 3 : 2;
    for (std::size_t p = 1; p <= max_p; ++p) {
      Rational sum = 0;
      // Independent count of each profile from the provenance.
      std::map<Profile, std::uint64_t> counts;
      std::uint64_t total = 0;
      std::vector<Vertex> tuple(p, 0);
      std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == p) {
          std::vector<std::size_t> internal;
          std::map<std::size_t, std::vector<std::size_t>> by_copy;
          for (std::size_t j = 0; j < p; ++j) {
            if (tuple[j] < a.size()) internal.push_back(j);
            else by_copy[c.origin(tuple[j]).edge].push_back(j);
          }
          std::vector<std::vector<std::size_t>> groups;
          for (auto& entry : by_copy) groups.push_back(entry.second);
          ++counts[make_profile(p, internal, groups)];
          ++total;
          return;
        }
        for (Vertex v = 0; v < c.result.size(); ++v) {
          tuple[i] = v;
          walk(i + 1);
        }
      };
      walk(0);
      for (const auto& pi : all_profiles(p)) {
        auto exact = profile_probability_exact(c, pi);
        sum += exact;
        auto it = counts.find(pi);
        if (exact != make_rational(it == counts.end() ? 0 : it->second, total))
          return {false, "instance " + std::to_string(instances) + " " + to_string(pi) + ": enumeration mismatch"};
        if (pi.t() > m) continue;
        auto formula = profile_probability_formula(internal_proportion(c), m, pi);
        if (formula != exact)
          return {false, "instance " + std::to_string(instances) + " " + to_string(pi) + ": formula " +
                             ratio(formula) + " vs exact " + ratio(exact)};
        ++profiles;
      }
      if (sum != Rational(1)) return {false, "instance " + std::to_string(instances) + ": sum " + ratio(sum)};
    }
    ++instances;
  }
  return {true, "30 instances, " + std::to_string(profiles) + " profile identities, sums equal 1"};
}

// 8. <psi, A*G> = <phi|pi, A> Pr[pi] on lifted constructions.
Outcome lifted_identity() {
  oracle::Gen g(8008);
  ConstructionOptions opts;
  opts.lifted = true;
  struct Case {
    Formula phi;
    Profile pi;
  };
  std::vector<Case> cases = {
      {parse_formula("P(u) and not v1 = u", std::vector<std::string>{"u", "v1", "v2"}), make_profile(2, {0}, {{1}})},
      {parse_formula("R(u, w) or P(w)", std::vector<std::string>{"u", "w"}), make_profile(2, {0, 1}, {})},
      {parse_formula("exists s. (R(a1, s) and not s = b2)", std::vector<std::string>{"a1", "a2", "b1", "b2"}),
       make_profile(2, {}, {{0}, {1}})},
      {parse_formula("P(a2) or a1 = b1", std::vector<std::string>{"a1", "a2", "b1", "b2"}),
       make_profile(2, {}, {{0, 1}})},
  };
  std::size_t instances = 0, identities = 0;
  while (instances < 10) {
    auto a = oracle::random_structure(g, Language({{"R", 2}, {"P", 1}}), g.between(2, 4), 4, true);
    if (a.relation("R").size() < 2) continue;
    auto c = gadget_construct(a, "R", path_gadget(g.between(1, 2)), opts);
    for (const auto& [phi, pi] : cases) {
      auto psi = lift_profile_formula(phi, pi, 2);
      auto lhs = oracle::naive_pairing(c.result, psi);
      auto conditional = conditional_stone_pairing(a, "R", phi, pi);
      if (!conditional) return {false, "instance " + std::to_string(instances) + ": conditional pairing undefined"};
      auto rhs = *conditional * profile_probability_exact(c, pi);
      if (lhs != rhs)
        return {false, "instance " + std::to_string(instances) + " " + to_string(pi) + ": " + ratio(lhs) + " vs " +
                           ratio(rhs)};
      ++identities;
    }
    ++instances;
  }
  return {true, "10 instances, " + std::to_string(identities) + " exact identities"};
}

// 9. Extension property and the QF_1 / QF_2 gap on random graphs.
Outcome extension_gap() {
  oracle::Gen g(9009);
  for (int i = 0; i < 20; ++i)
    if (!check_extension_property(oracle::random_graph(g, g.between(1, 30), 0.5), 1))
      return {false, "q=1 failed on a random graph"};
  auto h60 = generate(family("random-hypergraph", {{"p", 0.5}}, {{"symmetric", "true"}}, 60), 60);
  if (!check_extension_property(h60, 2)) return {false, "H^2(60,0.5) fails q=2"};
  // q=2 directly: every vertex has a neighbour and a non-neighbour.
  for (Vertex v = 0; v < h60.size(); ++v) {
    std::size_t d = degree(h60, v);
    if (d == 0 || d + 1 == h60.size()) return {false, "q=2 checker disagrees with direct count"};
  }
  auto sparse = generate(family("random-hypergraph", {{"p", 0.3}}, {{"symmetric", "true"}}, 40), 40);
  auto dense = generate(family("random-hypergraph", {{"p", 0.7}}, {{"symmetric", "true"}}, 41), 40);
  auto edge = parse_formula("E(x,y)");
  double gap = to_double(stone_pairing_exact(dense, edge)) - to_double(stone_pairing_exact(sparse, edge));
  if (gap < 0.2) return {false, "edge density gap " + std::to_string(gap)};
  // Every quantifier-free formula in one variable is a Boolean function of
  // E(x,x) and x = x.
  const char* atoms[] = {"E(x,x)", "x = x"};
  for (int table = 0; table < 16; ++table) {
    std::string text;
    for (int row = 0; row < 4; ++row) {
      if (!(table >> row & 1)) continue;
      std::string clause = "(";
      for (int j = 0; j < 2; ++j) {
        if (j) clause += " and ";
        clause += (row >> j & 1) ? std::string(atoms[j]) : "not " + std::string(atoms[j]);
      }
      clause += ")";
      text += text.empty() ? clause : " or " + clause;
    }
    if (text.empty()) text = "false";
    auto f = parse_formula(text, std::vector<std::string>{"x"});
    if (stone_pairing_exact(sparse, f) != stone_pairing_exact(dense, f))
      return {false, "QF_1 statistic differs: " + text};
  }
  std::ostringstream detail;
  detail.precision(4);
  detail << "q=1 and q=2 hold, <E(x,y)> gap " << gap << ", 16 QF_1 statistics identical";
  return {true, detail.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 10. Two runs of one config give byte-identical artifacts.
Outcome determinism() {
  const fs::path fixtures = GADGETLAB_FIXTURES;
  auto config = driver::json::parse(R"j({"tasks": [
    {"kind": "construct", "name": "construct", "base": "l4.struct", "gadget": "p3.gadget", "output": "c.struct"},
    {"kind": "ef", "name": "ef", "left": "l3.struct", "right": "l4.struct", "k": 3, "rank": true, "output": "ef.json"},
    {"kind": "pairing", "name": "pairing", "structure": "k3.struct", "formula": "exists z. (E(x,z) and E(z,y))",
     "mode": "sampled", "samples": 1000, "seed": 17, "output": "pairing.json"},
    {"kind": "trajectory", "name": "example", "base": {"family": "fluctuating-base"},
     "gadget": {"family": "fluctuating-gadget"},
     "formulas": [{"id": "deg1", "text": "exists y. (E(x,y) and forall z. (not E(x,z) or z = y))"}],
     "indices": {"from": 3, "to": 9}, "output": "example.csv", "report": "example.json"},
    {"kind": "trajectory", "name": "random", "base": {"family": "random-hypergraph-alternating",
     "params": {"p": 0.3, "q": 0.7}, "options": {"symmetric": "true"}, "seed": 11},
     "formulas": [{"id": "edge", "text": "E(x,y)"}], "indices": [10, 11, 12, 13, 14, 15], "mode": "sampled",
     "samples": 2000, "seed": 5, "output": "random.csv", "report": "random.txt"},
    {"kind": "verify", "name": "continuity", "theorem": "continuity", "k": 1, "output": "continuity.json"},
    {"kind": "verify", "name": "fragmentation", "theorem": "fragmentation", "k": 1, "output": "fragmentation.txt"},
    {"kind": "diagnostics", "name": "diagnostics", "gadget": {"family": "path"}, "indices": [4, 8, 16],
     "radii": [1, 2], "threshold": 3, "output": "diagnostics.json"}
  ]})j");
  for (auto& task : config["tasks"])
    for (const char* key : {"base", "gadget", "left", "right", "structure"})
      if (task.contains(key) && task[key].is_string()) task[key] = (fixtures / task[key].get<std::string>()).string();

  auto root = fs::temp_directory_path() / ("gadgetlab_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root / "one");
  fs::create_directories(root / "two");
  auto first = driver::run_config(config, root / "one", 1);
  auto second = driver::run_config(config, root / "two", 4);
  Outcome out{true, ""};
  for (const auto& r : first.tasks)
    if (r.status == driver::TaskStatus::error) out = {false, r.name + ": " + r.message};
  std::size_t files = 0;
  if (out.pass) {
    for (const auto& entry : fs::directory_iterator(root / "one")) {
      auto other = root / "two" / entry.path().filename();
      if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
        out = {false, entry.path().filename().string() + " differs"};
        break;
      }
      ++files;
    }
  }
  if (out.pass && files != 11) out = {false, std::to_string(files) + " artifacts, expected 11"};
  if (out.pass) out.detail = std::to_string(files) + " artifacts byte-identical across two runs";
  fs::remove_all(root);
  return out;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"gadget construction", construction_correctness},
      {"dual-oracle EF equivalence", dual_oracle},
      {"continuity bound", continuity},
      {"fragmentation bound", fragmentation},
      {"fluctuating example", example_fluctuation},
      {"subdivided lollipops", example_lollipop},
      {"profile statistics", representation_statistics},
      {"lifted identity", lifted_identity},
      {"extension property", extension_gap},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failures;
    std::printf("criterion %zu (%s): %s %s [%.2f s]\n", i + 1, criteria[i].first.c_str(), out.pass ? "PASS" : "FAIL",
                out.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
