#include "gadgetlab/gadget.hpp"

#include <algorithm>
#include <set>

#include "gadgetlab/error.hpp"
#include "gadgetlab/isomorphism.hpp"

namespace gadgetlab {

// ---- Gadget ----

Gadget::Gadget(Structure body, std::vector<Vertex> roots) : body_(std::move(body)), roots_(std::move(roots)) {
  if (!body_.language().constants().empty())
    throw Error(ErrorCode::invalid_argument, "gadget body must not interpret constants");
  std::set<Vertex> seen;
  for (Vertex r : roots_) {
    if (r >= body_.size())
      throw Error(ErrorCode::out_of_range, "gadget root " + std::to_string(r) + " out of range");
    if (!seen.insert(r).second)
      throw Error(ErrorCode::invalid_argument, "gadget roots must be pairwise distinct");
  }
  rank_.assign(body_.size(), SIZE_MAX);
  for (Vertex v = 0; v < body_.size(); ++v) {
    if (seen.count(v)) continue;
    rank_[v] = non_roots_.size();
    non_roots_.push_back(v);
  }
}

Gadget Gadget::from_structure(const Structure& s) {
  const auto& names = s.language().constants();
  std::vector<Vertex> roots(names.size());
  std::vector<bool> filled(names.size(), false);
  for (std::size_t c = 0; c < names.size(); ++c) {
    const std::string& name = names[c];
    std::size_t index = 0;
    bool ok = name.size() >= 2 && name[0] == 'z' && name[1] != '0';
    for (std::size_t i = 1; ok && i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') ok = false;
      else index = index * 10 + static_cast<std::size_t>(name[i] - '0');
    }
    if (!ok || index == 0 || index > names.size() || filled[index - 1])
      throw Error(ErrorCode::invalid_argument,
                  "gadget constants must be exactly z1..z" + std::to_string(names.size()) +
                      ", found " + name);
    filled[index - 1] = true;
    roots[index - 1] = s.constants()[c];
  }
  return Gadget(shadow_to(s, s.language().without_constants()), std::move(roots));
}

std::optional<std::size_t> Gadget::non_root_rank(Vertex v) const {
  if (v >= rank_.size() || rank_[v] == SIZE_MAX) return std::nullopt;
  return rank_[v];
}

std::optional<std::size_t> Gadget::root_index(Vertex v) const {
  for (std::size_t i = 0; i < roots_.size(); ++i)
    if (roots_[i] == v) return i;
  return std::nullopt;
}

Structure Gadget::as_structure() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < roots_.size(); ++i) names.push_back("z" + std::to_string(i + 1));
  return Structure(Language(body_.language().relations(), std::move(names)), body_.size(),
                   body_.relations(), roots_);
}

// ---- ConstructedStructure ----

const ExternalOrigin& ConstructedStructure::origin(Vertex v) const {
  if (v < internal_count() || v - internal_count() >= origins.size())
    throw Error(ErrorCode::invalid_argument, "vertex " + std::to_string(v) + " is not external");
  return origins[v - internal_count()];
}

const Tuple& ConstructedStructure::rho(Vertex v) const {
  const auto& o = origin(v);
  return edges[o.slot][o.edge];
}

Vertex ConstructedStructure::copy_vertex(std::size_t slot, std::size_t edge, Vertex gv) const {
  const Gadget& g = gadgets.at(slot);
  if (auto i = g.root_index(gv)) return edges.at(slot).at(edge)[*i];
  auto rank = g.non_root_rank(gv);
  if (!rank) throw Error(ErrorCode::out_of_range, "gadget vertex out of range");
  return first_external.at(slot).at(edge) + static_cast<Vertex>(*rank);
}

std::optional<std::size_t> ConstructedStructure::edge_index(std::size_t slot, const Tuple& tuple) const {
  const auto& list = edges.at(slot);
  auto it = std::lower_bound(list.begin(), list.end(), tuple);
  if (it == list.end() || *it != tuple) return std::nullopt;
  return static_cast<std::size_t>(it - list.begin());
}

// ---- construction ----

namespace {

bool has_root_swap(const Gadget& g) {
  if (g.arity() != 2) return true;
  RootedStructure forward{g.body(), g.roots()};
  RootedStructure swapped{g.body(), {g.roots()[1], g.roots()[0]}};
  return isomorphic(forward.as_structure(), swapped.as_structure());
}

}  // namespace

ConstructedStructure multi_gadget_construct(const Structure& base, const std::vector<std::string>& r_symbols,
                                            const std::vector<Gadget>& gadgets,
                                            const ConstructionOptions& options) {
  if (r_symbols.size() != gadgets.size())
    throw Error(ErrorCode::invalid_argument, "one gadget per R symbol is required");
  if (r_symbols.empty()) throw Error(ErrorCode::invalid_argument, "no R symbol given");
  if (options.lifted && r_symbols.size() != 1)
    throw Error(ErrorCode::invalid_argument, "the lifted construction takes a single gadget");

  const Language& bl = base.language();
  std::vector<std::size_t> r_index;
  for (std::size_t j = 0; j < r_symbols.size(); ++j) {
    std::size_t idx = bl.require_relation(r_symbols[j]);
    if (std::find(r_index.begin(), r_index.end(), idx) != r_index.end())
      throw Error(ErrorCode::invalid_argument, "R symbol " + r_symbols[j] + " listed twice");
    r_index.push_back(idx);
    std::size_t arity = bl.relations()[idx].arity;
    if (gadgets[j].arity() != arity)
      throw Error(ErrorCode::invalid_argument,
                  "gadget for " + r_symbols[j] + " has " + std::to_string(gadgets[j].arity()) +
                      " roots, expected " + std::to_string(arity));
    if (options.undirected && arity > 2)
      throw Error(ErrorCode::invalid_argument, "undirected mode needs arity at most 2");
    if (options.undirected && !has_root_swap(gadgets[j]))
      throw Error(ErrorCode::invalid_argument,
                  "undirected mode needs a gadget automorphism swapping the roots");
  }

  // Result language: base symbols other than the R_j, then gadget-only symbols.
  std::vector<RelationSymbol> rels;
  for (std::size_t i = 0; i < bl.relations().size(); ++i)
    if (std::find(r_index.begin(), r_index.end(), i) == r_index.end()) rels.push_back(bl.relations()[i]);
  for (std::size_t j = 0; j < gadgets.size(); ++j) {
    for (const auto& sym : gadgets[j].body().language().relations()) {
      if (std::find(r_symbols.begin(), r_symbols.end(), sym.name) != r_symbols.end())
        throw Error(ErrorCode::invalid_argument, "gadget realizes the R symbol " + sym.name);
      auto it = std::find_if(rels.begin(), rels.end(), [&](const auto& r) { return r.name == sym.name; });
      if (it == rels.end()) {
        if (bl.constant_index(sym.name))
          throw Error(ErrorCode::language_mismatch, "gadget symbol " + sym.name + " is a base constant");
        rels.push_back(sym);
      } else if (it->arity != sym.arity) {
        throw Error(ErrorCode::language_mismatch, "gadget and base disagree on the arity of " + sym.name);
      }
    }
  }
  std::size_t plain_relations = rels.size();

  ConstructedStructure c;
  c.base = base;
  c.symbols = r_symbols;
  c.gadgets = gadgets;
  c.lifted = options.lifted;

  for (std::size_t j = 0; j < r_symbols.size(); ++j) {
    std::vector<Tuple> list = base.relation(r_index[j]);
    if (options.undirected && gadgets[j].arity() == 2) {
      for (auto& e : list)
        if (e[0] > e[1]) std::swap(e[0], e[1]);
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    c.edges.push_back(std::move(list));
  }

  Vertex next = static_cast<Vertex>(base.size());
  c.first_external.resize(r_symbols.size());
  for (std::size_t j = 0; j < r_symbols.size(); ++j) {
    std::size_t per_copy = gadgets[j].non_roots().size();
    for (std::size_t e = 0; e < c.edges[j].size(); ++e) {
      c.first_external[j].push_back(next);
      for (std::size_t k = 0; k < per_copy; ++k)
        c.origins.push_back({j, e, gadgets[j].non_roots()[k]});
      std::size_t total = static_cast<std::size_t>(next) + per_copy;
      if (total > std::numeric_limits<Vertex>::max())
        throw Error(ErrorCode::out_of_range, "constructed structure too large");
      next = static_cast<Vertex>(total);
    }
  }
  std::size_t n = next;

  std::vector<std::vector<Tuple>> tuples(plain_relations);
  for (std::size_t i = 0; i < plain_relations; ++i) {
    if (auto bi = bl.relation_index(rels[i].name)) tuples[i] = base.relation(*bi);
  }
  for (std::size_t j = 0; j < gadgets.size(); ++j) {
    const Structure& body = gadgets[j].body();
    for (std::size_t gi = 0; gi < body.relations().size(); ++gi) {
      const std::string& name = body.language().relations()[gi].name;
      std::size_t ri = static_cast<std::size_t>(
          std::find_if(rels.begin(), rels.end(), [&](const auto& r) { return r.name == name; }) - rels.begin());
      for (std::size_t e = 0; e < c.edges[j].size(); ++e) {
        for (const auto& t : body.relation(gi)) {
          Tuple mapped;
          mapped.reserve(t.size());
          for (Vertex v : t) mapped.push_back(c.copy_vertex(j, e, v));
          if (options.undirected && t.size() == 2) tuples[ri].push_back({mapped[1], mapped[0]});
          tuples[ri].push_back(std::move(mapped));
        }
      }
    }
  }

  std::vector<Vertex> consts = base.constants();
  if (!options.lifted) {
    c.result = Structure(Language(rels, bl.constants()), n, std::move(tuples), std::move(consts));
    return c;
  }

  // Lifted: R, Int, Ext, rho.
  const std::string& r_name = r_symbols[0];
  std::size_t arity = gadgets[0].arity();
  for (const auto* extra : {&options.int_symbol, &options.ext_symbol, &options.rho_symbol})
    if (std::any_of(rels.begin(), rels.end(), [&](const auto& r) { return r.name == *extra; }) ||
        bl.constant_index(*extra) || *extra == r_name)
      throw Error(ErrorCode::language_mismatch, "lifted symbol " + *extra + " already in use");

  std::vector<Tuple> rho;
  std::vector<bool> keep(n, true);
  if (options.restricted_rho) {
    Structure plain(Language(rels, bl.constants()), n, tuples, consts);
    const auto& adj = plain.gaifman_adjacency();
    for (Vertex v = static_cast<Vertex>(base.size()); v < n; ++v) {
      const Tuple& e = c.rho(v);
      keep[v] = std::any_of(e.begin(), e.end(), [&](Vertex root) {
        return std::binary_search(adj[v].begin(), adj[v].end(), root);
      });
    }
  }
  for (Vertex v = static_cast<Vertex>(base.size()); v < n; ++v) {
    if (!keep[v]) continue;
    Tuple t{v};
    const Tuple& e = c.rho(v);
    t.insert(t.end(), e.begin(), e.end());
    rho.push_back(std::move(t));
  }
  std::vector<Tuple> ints, exts;
  for (Vertex v = 0; v < n; ++v) (v < base.size() ? ints : exts).push_back({v});

  rels.push_back({r_name, arity});
  tuples.push_back(base.relation(r_index[0]));
  rels.push_back({options.int_symbol, 1});
  tuples.push_back(std::move(ints));
  rels.push_back({options.ext_symbol, 1});
  tuples.push_back(std::move(exts));
  rels.push_back({options.rho_symbol, arity + 1});
  tuples.push_back(std::move(rho));
  c.result = Structure(Language(std::move(rels), bl.constants()), n, std::move(tuples), std::move(consts));
  return c;
}

ConstructedStructure gadget_construct(const Structure& base, const std::string& r_symbol, const Gadget& gadget,
                                      const ConstructionOptions& options) {
  return multi_gadget_construct(base, {r_symbol}, {gadget}, options);
}

Gadget path_gadget(std::size_t length, const std::string& symbol) {
  if (length == 0) throw Error(ErrorCode::invalid_argument, "path gadget needs length >= 1");
  // Vertices: z1 = 0, inner 1..length-1, z2 = length.
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i < length; ++i) edges.push_back({i, i + 1});
  return Gadget(undirected_graph(length + 1, edges, symbol), {0, static_cast<Vertex>(length)});
}

ConstructedStructure subdivide(const Structure& graph, const std::string& symbol) {
  std::size_t idx = graph.language().require_relation(symbol);
  if (!is_symmetric(graph, idx))
    throw Error(ErrorCode::invalid_argument, "subdivision needs a symmetric binary relation " + symbol);
  std::string r_name = "_R";
  while (graph.language().has_symbol(r_name)) r_name = "_" + r_name;
  std::vector<RelationSymbol> rels = graph.language().relations();
  rels[idx].name = r_name;
  Structure base(Language(rels, graph.language().constants()), graph.size(), graph.relations(),
                 graph.constants());
  ConstructionOptions opts;
  opts.undirected = true;
  return gadget_construct(base, r_name, path_gadget(2, symbol), opts);
}

}  // namespace gadgetlab
