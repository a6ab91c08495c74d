#include "gadgetlab/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gadgetlab/error.hpp"
#include "gadgetlab/random.hpp"

namespace gadgetlab {

namespace {

using Edges = std::vector<std::pair<Vertex, Vertex>>;

const std::map<std::string, std::vector<std::string>>& family_params() {
  static const std::map<std::string, std::vector<std::string>> table{
      {"clique", {}},
      {"star", {}},
      {"path", {}},
      {"lollipop", {"k", "l"}},
      {"lollipop-alternating", {}},
      {"marked-independent-union", {}},
      {"random-hypergraph", {"k", "p"}},
      {"random-hypergraph-alternating", {"k", "p", "q"}},
      {"attach-leaves", {"leaves"}},
      {"fluctuating-base", {}},
      {"fluctuating-gadget", {}},
  };
  return table;
}

double param(const SequenceSpec& spec, const std::string& key, double fallback) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

std::string option(const SequenceSpec& spec, const std::string& key, const std::string& fallback) {
  auto it = spec.options.find(key);
  return it == spec.options.end() ? fallback : it->second;
}

std::size_t count_param(const SequenceSpec& spec, const std::string& key, std::size_t fallback) {
  double v = param(spec, key, static_cast<double>(fallback));
  if (!(v >= 0) || v != std::floor(v) || v > 1e9)
    throw Error(ErrorCode::invalid_argument, spec.family + ": parameter " + key + " must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

double probability_param(const SequenceSpec& spec, const std::string& key) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) throw Error(ErrorCode::invalid_argument, spec.family + ": missing parameter " + key);
  if (!(it->second >= 0.0 && it->second <= 1.0))
    throw Error(ErrorCode::invalid_argument, spec.family + ": " + key + " must lie in [0,1]");
  return it->second;
}

std::size_t checked_pow2(std::size_t n) {
  if (n > 24) throw Error(ErrorCode::invalid_argument, "index too large for 2^n vertices");
  return std::size_t{1} << n;
}

void add_clique(Edges& edges, Vertex first, std::size_t k) {
  for (Vertex i = 0; i < k; ++i)
    for (Vertex j = i + 1; j < k; ++j) edges.emplace_back(first + i, first + j);
}

Structure clique(std::size_t k) {
  Edges edges;
  add_clique(edges, 0, k);
  return undirected_graph(k, edges);
}

Structure star(std::size_t leaves) {
  Edges edges;
  for (Vertex i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return undirected_graph(leaves + 1, edges);
}

Structure path(std::size_t length) {
  Edges edges;
  for (Vertex i = 0; i < length; ++i) edges.emplace_back(i, i + 1);
  return undirected_graph(length + 1, edges);
}

Structure lollipop(std::size_t k, std::size_t l) {
  if (k < 1 || l < 1) throw Error(ErrorCode::invalid_argument, "lollipop needs k >= 1 and l >= 1");
  Edges edges;
  add_clique(edges, 0, k);
  for (std::size_t i = 0; i < l; ++i)
    edges.emplace_back(static_cast<Vertex>(k - 1 + i), static_cast<Vertex>(k + i));
  return undirected_graph(k + l, edges);
}

Structure with_marks(const Structure& s, const std::vector<std::pair<std::string, std::vector<Vertex>>>& marks) {
  Language lang = s.language();
  auto rels = s.relations();
  for (const auto& [name, vertices] : marks) {
    if (lang.has_symbol(name)) throw Error(ErrorCode::invalid_argument, "mark symbol " + name + " already in use");
    lang = lang.with_relation({name, 1});
    std::vector<Tuple> tuples;
    for (Vertex v : vertices) tuples.push_back({v});
    rels.push_back(std::move(tuples));
  }
  return Structure(lang, s.size(), std::move(rels), s.constants());
}

Structure marked_independent_union(std::size_t n) {
  std::size_t big = n * n;
  std::size_t r_only = n % 2 == 1 ? n : 2 * n;
  std::size_t r_and_s = n % 2 == 1 ? 2 * n : n;
  Edges edges;
  add_clique(edges, 0, big);
  Structure g = undirected_graph(big + r_only + r_and_s, edges);
  std::vector<Vertex> r, s;
  for (std::size_t v = big; v < big + r_only + r_and_s; ++v) r.push_back(static_cast<Vertex>(v));
  for (std::size_t v = big + r_only; v < big + r_only + r_and_s; ++v) s.push_back(static_cast<Vertex>(v));
  return with_marks(g, {{"R", r}, {"S", s}});
}

Structure random_hypergraph(std::size_t n, std::size_t k, double p, std::uint64_t seed, bool symmetric) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "random hypergraph needs k >= 1");
  if (symmetric && k != 2) throw Error(ErrorCode::invalid_argument, "symmetric storage needs k = 2");
  Rng rng(seed);
  std::vector<Tuple> tuples;
  if (k <= n) {
    Tuple t(k);
    for (std::size_t i = 0; i < k; ++i) t[i] = static_cast<Vertex>(i);
    for (;;) {
      if (rng.bernoulli(p)) tuples.push_back(t);
      std::size_t i = k;
      while (i > 0 && t[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++t[i - 1];
      for (std::size_t j = i; j < k; ++j) t[j] = t[j - 1] + 1;
    }
  }
  if (symmetric) {
    std::size_t count = tuples.size();
    for (std::size_t i = 0; i < count; ++i) tuples.push_back({tuples[i][1], tuples[i][0]});
  }
  return Structure(Language({{"E", k}}), n, {std::move(tuples)});
}

Structure attach_leaves(const Structure& s, std::size_t leaves, const std::string& edge, const std::string& mark) {
  std::size_t n = s.size();
  Language lang = s.language();
  auto rels = s.relations();
  auto e = lang.relation_index(edge);
  if (!e) {
    lang = lang.with_relation({edge, 2});
    rels.emplace_back();
    e = rels.size() - 1;
  } else if (lang.relations()[*e].arity != 2) {
    throw Error(ErrorCode::invalid_argument, "attach-leaves needs a binary edge symbol");
  }
  if (lang.has_symbol(mark)) throw Error(ErrorCode::invalid_argument, "leaf mark " + mark + " already in use");
  lang = lang.with_relation({mark, 1});
  rels.emplace_back();
  Vertex next = static_cast<Vertex>(n);
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < leaves; ++i, ++next) {
      rels[*e].push_back({v, next});
      rels[*e].push_back({next, v});
      rels.back().push_back({next});
    }
  }
  return Structure(lang, n + n * leaves, std::move(rels), s.constants());
}

Structure base_structure(const SequenceSpec& spec, std::size_t n) {
  const std::string& f = spec.family;
  if (f == "clique") return clique(n);
  if (f == "star" || f == "fluctuating-gadget") {
    std::size_t leaves = f == "star" ? n : (n % 2 == 1 ? checked_pow2(n) : n);
    return star(leaves);
  }
  if (f == "path") return path(n);
  if (f == "lollipop") return lollipop(count_param(spec, "k", n), count_param(spec, "l", n));
  if (f == "lollipop-alternating") {
    std::size_t l = n % 2 == 1 ? n * n * n : ceil_pow_three_halves(n);
    return lollipop(n, l);
  }
  if (f == "marked-independent-union") return marked_independent_union(n);
  if (f == "random-hypergraph" || f == "random-hypergraph-alternating") {
    std::size_t k = count_param(spec, "k", 2);
    double p = f == "random-hypergraph" || n % 2 == 1 ? probability_param(spec, "p") : probability_param(spec, "q");
    return random_hypergraph(n, k, p, derive_seed(spec.seed, n), option(spec, "symmetric", "false") == "true");
  }
  if (f == "attach-leaves") {
    if (!spec.of) throw Error(ErrorCode::invalid_argument, "attach-leaves needs an inner family");
    return attach_leaves(generate(*spec.of, n), count_param(spec, "leaves", n), "E", "Leaf");
  }
  if (f == "fluctuating-base") {
    Structure k = clique(n % 2 == 1 ? n : checked_pow2(n));
    return with_marks(k, {{"R", {0}}});
  }
  throw Error(ErrorCode::invalid_argument, "unknown family " + f);
}

}  // namespace

void validate(const SequenceSpec& spec) {
  auto it = family_params().find(spec.family);
  if (it == family_params().end()) throw Error(ErrorCode::invalid_argument, "unknown family " + spec.family);
  for (const auto& [key, value] : spec.params) {
    if (std::find(it->second.begin(), it->second.end(), key) == it->second.end())
      throw Error(ErrorCode::invalid_argument, spec.family + ": unknown parameter " + key);
    if (!std::isfinite(value)) throw Error(ErrorCode::invalid_argument, spec.family + ": parameter " + key + " not finite");
  }
  static const std::vector<std::string> known_options{"mark", "root_mode", "symmetric", "transform"};
  for (const auto& [key, value] : spec.options) {
    if (std::find(known_options.begin(), known_options.end(), key) == known_options.end())
      throw Error(ErrorCode::invalid_argument, spec.family + ": unknown option " + key);
  }
  if (auto t = option(spec, "transform", ""); !t.empty() && t != "subdivide")
    throw Error(ErrorCode::invalid_argument, "unknown transform " + t);
  if (auto s = option(spec, "symmetric", "false"); s != "true" && s != "false")
    throw Error(ErrorCode::invalid_argument, "option symmetric must be true or false");
  if (spec.family == "random-hypergraph") probability_param(spec, "p");
  if (spec.family == "random-hypergraph-alternating") {
    probability_param(spec, "p");
    probability_param(spec, "q");
  }
  if (spec.family == "attach-leaves") {
    if (!spec.of) throw Error(ErrorCode::invalid_argument, "attach-leaves needs an inner family");
    validate(*spec.of);
  } else if (spec.of) {
    throw Error(ErrorCode::invalid_argument, spec.family + " takes no inner family");
  }
  if (spec.options.count("root_mode")) {
    auto mode = spec.options.at("root_mode");
    bool ok = ((spec.family == "star" || spec.family == "fluctuating-gadget") && (mode == "center" || mode == "leaf")) ||
              (spec.family == "path" && (mode == "endpoints" || mode == "start"));
    if (!ok) throw Error(ErrorCode::invalid_argument, spec.family + ": invalid root_mode " + mode);
  }
}

Structure generate(const SequenceSpec& spec, std::size_t n) {
  validate(spec);
  if (n < 1) throw Error(ErrorCode::invalid_argument, "sequence index must be >= 1");
  Structure s = base_structure(spec, n);
  if (auto mark = option(spec, "mark", ""); !mark.empty()) s = with_marks(s, {{mark, {0}}});
  if (option(spec, "transform", "") == "subdivide") s = subdivide(s).result;
  return s;
}

Gadget generate_gadget(const SequenceSpec& spec, std::size_t n) {
  validate(spec);
  if (option(spec, "transform", "") == "subdivide")
    throw Error(ErrorCode::invalid_argument, "gadget families cannot be subdivided");
  Structure s = generate(spec, n);
  const std::string& f = spec.family;
  if (f == "star" || f == "fluctuating-gadget") {
    bool leaf = option(spec, "root_mode", "center") == "leaf";
    return Gadget(s, {static_cast<Vertex>(leaf ? 1 : 0)});
  }
  if (f == "path") {
    if (option(spec, "root_mode", "endpoints") == "start") return Gadget(s, {0});
    return Gadget(s, {0, static_cast<Vertex>(n)});
  }
  throw Error(ErrorCode::invalid_argument, "family " + f + " has no roots");
}

const char* to_string(Role role) noexcept {
  switch (role) {
    case Role::plain: return "plain";
    case Role::base: return "base";
    case Role::gadget: return "gadget";
  }
  return "?";
}

Role role_from_string(const std::string& name) {
  if (name == "plain") return Role::plain;
  if (name == "base") return Role::base;
  if (name == "gadget") return Role::gadget;
  throw Error(ErrorCode::invalid_argument, "unknown role " + name);
}

std::uint64_t ceil_pow_three_halves(std::uint64_t n) {
  std::uint64_t cube = n * n * n;
  auto m = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(cube)));
  while (m * m < cube) ++m;
  while (m > 0 && (m - 1) * (m - 1) >= cube) --m;
  return m;
}

bool check_extension_property(const Structure& h, std::size_t q, const std::string& symbol) {
  if (q < 1) throw Error(ErrorCode::invalid_argument, "extension property needs q >= 1");
  std::size_t rel = h.language().require_relation(symbol);
  std::size_t k = h.language().relations()[rel].arity;
  if (k < 1) throw Error(ErrorCode::invalid_argument, "extension property needs k >= 1");
  std::set<Tuple> edges;
  for (Tuple t : h.relation(rel)) {
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end())
      throw Error(ErrorCode::invalid_argument, "hypergraph tuple with a repeated vertex is not k-uniform");
    edges.insert(t);
  }
  std::size_t n = h.size();
  if (q - 1 > n) return true;
  // All (q-1)-subsets S, then the (k-1)-subsets of S.
  std::vector<std::size_t> sel(q - 1);
  for (std::size_t i = 0; i < sel.size(); ++i) sel[i] = i;
  for (;;) {
    std::vector<Tuple> faces;
    std::vector<std::size_t> pick(k - 1);
    if (k - 1 <= sel.size()) {
      for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
      for (;;) {
        Tuple face;
        for (auto i : pick) face.push_back(static_cast<Vertex>(sel[i]));
        faces.push_back(face);
        std::size_t i = pick.size();
        while (i > 0 && pick[i - 1] == sel.size() - pick.size() + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
      }
    }
    if (faces.size() > 24) throw BudgetExceeded("extension property check over 2^" + std::to_string(faces.size()) + " splits");
    std::vector<bool> realized(std::size_t{1} << faces.size(), false);
    std::size_t found = 0;
    for (Vertex v = 0; v < n && found < realized.size(); ++v) {
      if (std::find(sel.begin(), sel.end(), v) != sel.end()) continue;
      std::size_t mask = 0;
      for (std::size_t f = 0; f < faces.size(); ++f) {
        Tuple e = faces[f];
        e.push_back(v);
        std::sort(e.begin(), e.end());
        if (edges.count(e)) mask |= std::size_t{1} << f;
      }
      if (!realized[mask]) {
        realized[mask] = true;
        ++found;
      }
    }
    if (found < realized.size()) return false;
    std::size_t i = sel.size();
    while (i > 0 && sel[i - 1] == n - sel.size() + i - 1) --i;
    if (i == 0) break;
    ++sel[i - 1];
    for (std::size_t j = i; j < sel.size(); ++j) sel[j] = sel[j - 1] + 1;
  }
  return true;
}

}  // namespace gadgetlab
