#include "gadgetlab/representation.hpp"

#include <algorithm>
#include <map>

#include "gadgetlab/error.hpp"
#include "gadgetlab/isomorphism.hpp"

namespace gadgetlab {

namespace {

void check_tuple(const ConstructedStructure& c, std::span<const Vertex> tuple) {
  for (Vertex v : tuple)
    if (v >= c.result.size()) throw Error(ErrorCode::out_of_range, "vertex " + std::to_string(v) + " out of range");
}

// Copy key (slot, edge) of every external entry; internal entries get none.
std::vector<std::pair<std::size_t, std::size_t>> copies_of(const ConstructedStructure& c,
                                                           std::span<const Vertex> tuple) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (Vertex v : tuple) {
    if (c.is_internal(v)) {
      out.emplace_back(SIZE_MAX, SIZE_MAX);
    } else {
      const auto& o = c.origin(v);
      out.emplace_back(o.slot, o.edge);
    }
  }
  return out;
}

bool equivalent_at(const Structure& a, const Structure& b, std::uint64_t depth, std::uint64_t budget) {
  if (a.size() == b.size() && isomorphic(a, b)) return true;
  EfSolver solver(a, b, budget);
  return solver.duplicator_wins(static_cast<std::size_t>(depth));
}

}  // namespace

Profile profile_of(const ConstructedStructure& c, std::span<const Vertex> tuple) {
  check_tuple(c, tuple);
  auto keys = copies_of(c, tuple);
  std::vector<std::size_t> internal;
  std::vector<std::vector<std::size_t>> groups;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> group_of;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (keys[i].first == SIZE_MAX) {
      internal.push_back(i);
      continue;
    }
    auto [it, inserted] = group_of.emplace(keys[i], groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(i);
  }
  return make_profile(tuple.size(), std::move(internal), std::move(groups));
}

MultiProfile multi_profile_of(const ConstructedStructure& c, std::span<const Vertex> tuple) {
  check_tuple(c, tuple);
  auto keys = copies_of(c, tuple);
  MultiProfile out;
  out.p = tuple.size();
  out.slots.resize(c.slot_count());
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> group_of;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (keys[i].first == SIZE_MAX) {
      out.internal.push_back(i);
      continue;
    }
    auto& slot = out.slots[keys[i].first];
    auto [it, inserted] = group_of.emplace(keys[i], slot.size());
    if (inserted) slot.emplace_back();
    slot[it->second].push_back(i);
  }
  return out;
}

Rational profile_probability_exact(const ConstructedStructure& c, const Profile& pi, std::uint64_t budget) {
  std::size_t n = c.result.size();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "profile probability on an empty structure");
  BigInt total = 1;
  for (std::size_t i = 0; i < pi.p; ++i) total *= n;
  if (total > budget)
    throw BudgetExceeded("profile enumeration over " + total.str() + " tuples, budget " + std::to_string(budget));
  std::vector<Vertex> tuple(pi.p, 0);
  std::uint64_t hits = 0;
  for (;;) {
    if (profile_of(c, tuple) == pi) ++hits;
    std::size_t i = pi.p;
    while (i > 0 && tuple[i - 1] + 1 == n) tuple[--i] = 0;
    if (i == 0) break;
    ++tuple[i - 1];
  }
  return make_rational(BigInt(hits), total);
}

Rational internal_proportion(const ConstructedStructure& c) {
  if (c.result.size() == 0) throw Error(ErrorCode::invalid_argument, "internal proportion of an empty structure");
  return make_rational(c.internal_count(), c.result.size());
}

Representation representation_at(const ConstructedStructure& c, std::span<const Vertex> tuple, std::size_t r) {
  if (c.slot_count() != 1) throw Error(ErrorCode::invalid_argument, "representation needs a single-gadget construction");
  Representation out;
  out.profile = profile_of(c, tuple);
  RootedStructure base{c.base, {}};
  for (Vertex v : tuple) {
    if (c.is_internal(v)) {
      base.roots.push_back(v);
    } else {
      const Tuple& e = c.rho(v);
      base.roots.insert(base.roots.end(), e.begin(), e.end());
    }
  }
  out.base_side = ball_of_roots(base, r);
  Structure g = c.gadgets[0].as_structure();
  for (const auto& group : out.profile.groups) {
    RootedStructure side{g, {}};
    for (auto i : group) side.roots.push_back(c.origin(tuple[i]).gadget_vertex);
    out.gadget_sides.push_back(ball_of_roots(side, r));
  }
  return out;
}

std::uint64_t representation_depth(std::size_t k, std::size_t r, std::size_t p, std::size_t arity,
                                   std::size_t max_arity) {
  std::uint64_t factor = 1;
  for (std::size_t i = 0; i <= p; ++i) factor *= arity;
  return factor * (r * max_arity + k);
}

RepresentationVerdict representation_equivalent(const ConstructedStructure& c1, std::span<const Vertex> t1,
                                                const ConstructedStructure& c2, std::span<const Vertex> t2,
                                                std::size_t k, std::size_t r, std::uint64_t budget) {
  if (t1.size() != t2.size()) throw Error(ErrorCode::invalid_argument, "tuples differ in length");
  if (c1.slot_count() != 1 || c2.slot_count() != 1)
    throw Error(ErrorCode::invalid_argument, "representation needs single-gadget constructions");
  std::size_t arity = c1.gadgets[0].arity();
  if (c2.gadgets[0].arity() != arity) throw Error(ErrorCode::invalid_argument, "gadget arities differ");
  std::size_t max_arity = std::max({c1.base.language().max_arity(), c1.gadgets[0].body().language().max_arity(),
                                    c2.base.language().max_arity(), c2.gadgets[0].body().language().max_arity()});
  RepresentationVerdict out;
  out.depth = representation_depth(k, r, t1.size(), arity, max_arity);
  auto rep1 = representation_at(c1, t1, r);
  auto rep2 = representation_at(c2, t2, r);
  if (rep1.profile != rep2.profile) return out;
  if (!equivalent_at(rep1.base_side.as_structure(), rep2.base_side.as_structure(), out.depth, budget)) return out;
  for (std::size_t j = 0; j < rep1.gadget_sides.size(); ++j)
    if (!equivalent_at(rep1.gadget_sides[j].as_structure(), rep2.gadget_sides[j].as_structure(), out.depth, budget))
      return out;
  auto g1 = ball_of_roots(c1.gadgets[0].rooted(), r);
  auto g2 = ball_of_roots(c2.gadgets[0].rooted(), r);
  if (!equivalent_at(g1.as_structure(), g2.as_structure(), out.depth, budget)) return out;
  out.equivalent = true;
  return out;
}

namespace {

Expr relativize(const Expr& e, const std::map<std::string, std::string>& rename, const std::string& int_symbol) {
  Expr out = e;
  out.children.clear();
  for (auto& t : out.terms) {
    if (t.is_constant) continue;
    if (auto it = rename.find(t.name); it != rename.end()) t.name = it->second;
  }
  if (e.kind == NodeKind::Exists || e.kind == NodeKind::Forall) {
    // Bound names shadow the free ones they might collide with.
    auto inner = rename;
    inner.erase(e.name);
    Expr body = relativize(e.children[0], inner, int_symbol);
    Expr guard = fo::atom(int_symbol, {fo::var(e.name)});
    if (e.kind == NodeKind::Exists)
      out.children.push_back(fo::conj({guard, body}));
    else
      out.children.push_back(fo::disj({fo::neg(guard), body}));
    return out;
  }
  for (const auto& c : e.children) out.children.push_back(relativize(c, rename, int_symbol));
  return out;
}

}  // namespace

Formula lift_profile_formula(const Formula& phi, const Profile& pi, std::size_t arity,
                             const ConstructionOptions& names) {
  std::size_t expected = pi.internal.size() + pi.external_count() * arity;
  if (phi.free_count() != expected)
    throw Error(ErrorCode::invalid_argument, "formula has " + std::to_string(phi.free_count()) +
                                                 " free variables but the profile needs " + std::to_string(expected));
  auto taken = phi.variable_names();
  auto fresh = [&](const std::string& base) {
    std::string name = base;
    while (std::find(taken.begin(), taken.end(), name) != taken.end()) name = "_" + name;
    taken.push_back(name);
    return name;
  };
  std::vector<std::string> x(pi.p);
  for (std::size_t i = 0; i < pi.p; ++i) x[i] = fresh("x" + std::to_string(i + 1));
  std::vector<std::vector<std::string>> y(pi.t(), std::vector<std::string>(arity));
  for (std::size_t j = 0; j < pi.t(); ++j)
    for (std::size_t c = 0; c < arity; ++c) y[j][c] = fresh("y" + std::to_string(j + 1) + "_" + std::to_string(c + 1));

  std::vector<std::size_t> group_of(pi.p, SIZE_MAX);
  for (std::size_t j = 0; j < pi.t(); ++j)
    for (auto i : pi.groups[j]) group_of[i] = j;

  auto free = phi.free_variables();
  std::map<std::string, std::string> rename;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < pi.p; ++i) {
    if (group_of[i] == SIZE_MAX) {
      rename[free[cursor++]] = x[i];
    } else {
      for (std::size_t c = 0; c < arity; ++c) rename[free[cursor++]] = y[group_of[i]][c];
    }
  }

  std::vector<Expr> parts;
  std::vector<Expr> inner;
  for (std::size_t i = 0; i < pi.p; ++i) {
    if (group_of[i] == SIZE_MAX) {
      parts.push_back(fo::atom(names.int_symbol, {fo::var(x[i])}));
      continue;
    }
    parts.push_back(fo::atom(names.ext_symbol, {fo::var(x[i])}));
    std::vector<Expr::RawTerm> terms{fo::var(x[i])};
    for (const auto& v : y[group_of[i]]) terms.push_back(fo::var(v));
    inner.push_back(fo::atom(names.rho_symbol, terms));
  }
  for (std::size_t j = 0; j < pi.t(); ++j) {
    for (std::size_t j2 = j + 1; j2 < pi.t(); ++j2) {
      std::vector<Expr> differs;
      for (std::size_t c = 0; c < arity; ++c) differs.push_back(fo::neg(fo::eq(fo::var(y[j][c]), fo::var(y[j2][c]))));
      inner.push_back(fo::disj(differs));
    }
  }
  inner.push_back(relativize(to_expr(phi), rename, names.int_symbol));
  Expr body = fo::conj(inner);
  for (std::size_t j = pi.t(); j-- > 0;)
    for (std::size_t c = arity; c-- > 0;) body = fo::exists(y[j][c], body);
  parts.push_back(body);
  return Formula::from_expr(fo::conj(parts), x);
}

}  // namespace gadgetlab
