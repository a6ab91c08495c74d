#include <algorithm>
#include <deque>

#include "gadgetlab/error.hpp"
#include "gadgetlab/structure.hpp"

namespace gadgetlab {

namespace {

void check_vertex(const Structure& s, Vertex v) {
  if (v >= s.size())
    throw Error(ErrorCode::out_of_range, "vertex " + std::to_string(v) + " out of range");
}

}  // namespace

Structure symmetric_closure(const Structure& s, const std::vector<std::string>& symbols) {
  auto rels = s.relations();
  for (const auto& name : symbols) {
    std::size_t idx = s.language().require_relation(name);
    if (s.language().relations()[idx].arity != 2)
      throw Error(ErrorCode::invalid_argument, "symmetric closure needs a binary relation: " + name);
    auto& rel = rels[idx];
    std::size_t count = rel.size();
    for (std::size_t i = 0; i < count; ++i) rel.push_back({rel[i][1], rel[i][0]});
  }
  return Structure(s.language(), s.size(), std::move(rels), s.constants());
}

bool is_symmetric(const Structure& s, std::size_t relation_index) {
  if (s.language().relations().at(relation_index).arity != 2) return false;
  for (const auto& t : s.relation(relation_index)) {
    Vertex rev[2] = {t[1], t[0]};
    if (!s.contains(relation_index, rev)) return false;
  }
  return true;
}

std::vector<Distance> distances_from(const Structure& s, std::span<const Vertex> sources,
                                     std::size_t limit) {
  std::vector<Distance> dist(s.size());
  std::deque<Vertex> queue;
  for (Vertex v : sources) {
    check_vertex(s, v);
    if (!dist[v]) {
      dist[v] = 0;
      queue.push_back(v);
    }
  }
  const auto& adj = s.gaifman_adjacency();
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    if (*dist[u] >= limit) continue;
    for (Vertex w : adj[u]) {
      if (dist[w]) continue;
      dist[w] = *dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

Distance gaifman_distance(const Structure& s, Vertex u, Vertex v) {
  check_vertex(s, u);
  check_vertex(s, v);
  if (u == v) return 0;
  Vertex src[1] = {u};
  return distances_from(s, src)[v];
}

std::vector<Vertex> r_neighborhood(const Structure& s, std::span<const Vertex> set, std::size_t r) {
  auto dist = distances_from(s, set, r);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < s.size(); ++v)
    if (dist[v] && *dist[v] <= r) out.push_back(v);
  return out;
}

std::vector<Vertex> boundary(const Structure& s, std::span<const Vertex> set) {
  auto dist = distances_from(s, set, 1);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < s.size(); ++v)
    if (dist[v] && *dist[v] == 1) out.push_back(v);
  return out;
}

InducedSubstructure induced_substructure(const Structure& s, std::span<const Vertex> set) {
  std::vector<Vertex> members(set.begin(), set.end());
  for (Vertex v : members) check_vertex(s, v);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  constexpr Vertex kAbsent = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> to_new(s.size(), kAbsent);
  for (std::size_t i = 0; i < members.size(); ++i) to_new[members[i]] = static_cast<Vertex>(i);

  std::vector<std::vector<Tuple>> rels(s.relations().size());
  for (std::size_t r = 0; r < rels.size(); ++r) {
    for (const auto& t : s.relation(r)) {
      Tuple mapped;
      mapped.reserve(t.size());
      for (Vertex v : t) {
        if (to_new[v] == kAbsent) break;
        mapped.push_back(to_new[v]);
      }
      if (mapped.size() == t.size()) rels[r].push_back(std::move(mapped));
    }
  }
  std::vector<Vertex> consts;
  for (std::size_t c = 0; c < s.constants().size(); ++c) {
    Vertex v = s.constants()[c];
    if (to_new[v] == kAbsent)
      throw Error(ErrorCode::invalid_argument,
                  "vertex set omits constant " + s.language().constants()[c]);
    consts.push_back(to_new[v]);
  }
  return {Structure(s.language(), members.size(), std::move(rels), std::move(consts)),
          std::move(members)};
}

Structure disjoint_union(const Structure& a, const Structure& b) {
  const Language& la = a.language();
  const Language& lb = b.language();
  if (!la.without_constants().same_symbols(lb.without_constants()))
    throw Error(ErrorCode::language_mismatch, "disjoint union needs the same relation symbols");
  auto shift = static_cast<Vertex>(a.size());
  auto rels = a.relations();
  for (std::size_t r = 0; r < la.relations().size(); ++r) {
    const auto& other = b.relation(*lb.relation_index(la.relations()[r].name));
    for (const auto& t : other) {
      Tuple shifted = t;
      for (auto& v : shifted) v += shift;
      rels[r].push_back(std::move(shifted));
    }
  }
  auto names = la.constants();
  auto values = a.constants();
  for (std::size_t c = 0; c < lb.constants().size(); ++c) {
    const auto& name = lb.constants()[c];
    if (la.constant_index(name))
      throw Error(ErrorCode::invalid_argument, "constant " + name + " interpreted in both operands");
    names.push_back(name);
    values.push_back(b.constants()[c] + shift);
  }
  return Structure(Language(la.relations(), std::move(names)), a.size() + b.size(), std::move(rels),
                   std::move(values));
}

Structure shadow_to(const Structure& s, const Language& sub) {
  const Language& full = s.language();
  std::vector<std::vector<Tuple>> rels;
  for (const auto& sym : sub.relations()) {
    auto idx = full.relation_index(sym.name);
    if (!idx || full.relations()[*idx].arity != sym.arity)
      throw Error(ErrorCode::language_mismatch, "not a sublanguage: relation " + sym.name);
    rels.push_back(s.relation(*idx));
  }
  std::vector<Vertex> consts;
  for (const auto& c : sub.constants()) {
    auto idx = full.constant_index(c);
    if (!idx) throw Error(ErrorCode::language_mismatch, "not a sublanguage: constant " + c);
    consts.push_back(s.constants()[*idx]);
  }
  return Structure(sub, s.size(), std::move(rels), std::move(consts));
}

Rational relative_measure(const Structure& s, std::span<const Vertex> set) {
  if (s.size() == 0) throw Error(ErrorCode::invalid_argument, "relative measure on empty structure");
  std::vector<Vertex> members(set.begin(), set.end());
  for (Vertex v : members) check_vertex(s, v);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return make_rational(members.size(), s.size());
}

RootedStructure ball_of_roots(const RootedStructure& rs, std::size_t r) {
  std::vector<Vertex> centers = rs.roots;
  centers.insert(centers.end(), rs.base.constants().begin(), rs.base.constants().end());
  auto ball = r_neighborhood(rs.base, centers, r);
  auto sub = induced_substructure(rs.base, ball);
  RootedStructure out{sub.structure, {}};
  for (Vertex root : rs.roots) {
    auto it = std::lower_bound(sub.to_original.begin(), sub.to_original.end(), root);
    out.roots.push_back(static_cast<Vertex>(it - sub.to_original.begin()));
  }
  return out;
}

}  // namespace gadgetlab
