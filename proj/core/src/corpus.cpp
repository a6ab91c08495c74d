#include "gadgetlab/corpus.hpp"

#include <numeric>

#include "gadgetlab/error.hpp"
#include "gadgetlab/random.hpp"

namespace gadgetlab {

namespace {

std::vector<Vertex> permutation(std::size_t n, std::uint64_t seed) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  return perm;
}

Structure permuted(const Structure& s, const std::vector<Vertex>& perm) {
  auto rels = s.relations();
  for (auto& rel : rels)
    for (auto& t : rel)
      for (auto& v : t) v = perm[v];
  std::vector<Vertex> consts;
  for (Vertex c : s.constants()) consts.push_back(perm[c]);
  return Structure(s.language(), s.size(), std::move(rels), std::move(consts));
}

std::string name_of(const char* kind, const std::vector<std::size_t>& sizes) {
  std::string out = kind;
  for (std::size_t i = 0; i < sizes.size(); ++i) out += (i ? "+" : "") + std::to_string(sizes[i]);
  return out;
}

}  // namespace

Structure linear_order(std::size_t n, const std::string& symbol) {
  std::vector<Tuple> tuples;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) tuples.push_back({i, j});
  return Structure(Language({{symbol, 2}}), n, {std::move(tuples)});
}

Structure directed_cycles(const std::vector<std::size_t>& lengths, const std::string& symbol) {
  std::vector<Tuple> tuples;
  Vertex start = 0;
  for (auto len : lengths) {
    if (len == 0) throw Error(ErrorCode::invalid_argument, "cycle length must be positive");
    for (Vertex i = 0; i < len; ++i) tuples.push_back({start + i, start + static_cast<Vertex>((i + 1) % len)});
    start += static_cast<Vertex>(len);
  }
  return Structure(Language({{symbol, 2}}), start, {std::move(tuples)});
}

Structure relabel(const Structure& s, std::uint64_t seed) { return permuted(s, permutation(s.size(), seed)); }

Gadget relabel(const Gadget& g, std::uint64_t seed) {
  auto perm = permutation(g.size(), seed);
  std::vector<Vertex> roots;
  for (Vertex z : g.roots()) roots.push_back(perm[z]);
  return Gadget(permuted(g.body(), perm), std::move(roots));
}

std::vector<ContinuityInstance> continuity_corpus(std::size_t k) {
  struct BasePair {
    std::string label;
    Structure a1, a2;
  };
  struct GadgetPair {
    std::string label;
    Gadget g1, g2;
  };
  std::vector<BasePair> bases;
  std::vector<GadgetPair> gadgets;
  auto cyc = [](std::size_t n) { return directed_cycles({n}); };
  if (k <= 1) {
    for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 4}, {4, 5}, {3, 5}, {4, 6}})
      bases.push_back({"L" + std::to_string(m) + "/L" + std::to_string(n), linear_order(m), linear_order(n)});
    for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 5}, {5, 6}})
      bases.push_back({"C" + std::to_string(m) + "/C" + std::to_string(n), cyc(m), cyc(n)});
    bases.push_back({"L3/relabel", linear_order(3), relabel(linear_order(3), 11)});
    for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 5}, {5, 6}, {4, 6}})
      gadgets.push_back({"P" + std::to_string(m) + "/P" + std::to_string(n), path_gadget(m), path_gadget(n)});
    gadgets.push_back({"P3/relabel", path_gadget(3), relabel(path_gadget(3), 5)});
  } else {
    bases.push_back({"L3/relabel", linear_order(3), relabel(linear_order(3), 21)});
    bases.push_back({"C4/relabel", cyc(4), relabel(cyc(4), 22)});
    bases.push_back({"C2+C3/relabel", directed_cycles({2, 3}), relabel(directed_cycles({2, 3}), 23)});
    for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{6, 7}, {7, 8}, {6, 8}})
      gadgets.push_back({"P" + std::to_string(m) + "/P" + std::to_string(n), path_gadget(m), path_gadget(n)});
  }
  std::vector<ContinuityInstance> out;
  for (const auto& b : bases)
    for (const auto& g : gadgets)
      out.push_back({"k" + std::to_string(k) + ":" + b.label + "*" + g.label, b.a1, b.a2, g.g1, g.g2, "R"});
  return out;
}

std::vector<FragmentationInstance> fragmentation_corpus() {
  using Sizes = std::vector<std::size_t>;
  struct Case {
    Sizes left, right;
    std::size_t path;
  };
  std::vector<Case> cases{
      {{6}, {3, 3}, 5},    {{6}, {3, 3}, 6},    {{8}, {4, 4}, 5},    {{8}, {3, 5}, 5},
      {{9}, {3, 3, 3}, 5}, {{4, 4}, {3, 5}, 6}, {{10}, {5, 5}, 7},   {{7}, {3, 4}, 5},
      {{6}, {2, 4}, 6},    {{5}, {2, 3}, 5},    {{6}, {1, 5}, 5},    {{4}, {1, 1, 2}, 7},
  };
  std::vector<FragmentationInstance> out;
  auto discrete = SigmaEquivalence::discrete(2);
  for (const auto& c : cases) {
    out.push_back({name_of("C", c.left) + "/" + name_of("C", c.right) + "*P" + std::to_string(c.path),
                   directed_cycles(c.left), directed_cycles(c.right), path_gadget(c.path),
                   relabel(path_gadget(c.path), c.path), discrete, "R"});
  }
  // Roots too close for the discrete sigma.
  out.push_back({"C6/C3+3*P3", directed_cycles({6}), directed_cycles({3, 3}), path_gadget(3), path_gadget(3),
                 discrete, "R"});
  out.push_back({"C4/C2+2*P2", directed_cycles({4}), directed_cycles({2, 2}), path_gadget(2), path_gadget(2),
                 discrete, "R"});
  // Full sigma keeps the arrangement, so only isomorphic bases qualify.
  auto full = SigmaEquivalence::full(2);
  out.push_back({"C5/relabel*P2 full", directed_cycles({5}), relabel(directed_cycles({5}), 3), path_gadget(2),
                 path_gadget(2), full, "R"});
  out.push_back({"C6/C3+3*P2 full", directed_cycles({6}), directed_cycles({3, 3}), path_gadget(2), path_gadget(2),
                 full, "R"});
  return out;
}

}  // namespace gadgetlab
