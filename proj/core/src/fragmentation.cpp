#include "gadgetlab/fragmentation.hpp"

#include <algorithm>
#include <numeric>

#include "gadgetlab/error.hpp"

namespace gadgetlab {

SigmaEquivalence::SigmaEquivalence(std::size_t arity, std::vector<std::vector<std::size_t>> classes)
    : arity_(arity), classes_(std::move(classes)) {
  std::vector<int> seen(arity_, 0);
  for (auto& cls : classes_) {
    if (cls.empty()) throw Error(ErrorCode::invalid_argument, "sigma classes must be nonempty");
    for (auto i : cls) {
      if (i >= arity_) throw Error(ErrorCode::invalid_argument, "sigma index out of range");
      if (seen[i]++) throw Error(ErrorCode::invalid_argument, "sigma classes overlap");
    }
    std::sort(cls.begin(), cls.end());
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw Error(ErrorCode::invalid_argument, "sigma classes do not cover every index");
  std::sort(classes_.begin(), classes_.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

SigmaEquivalence SigmaEquivalence::discrete(std::size_t arity) {
  std::vector<std::vector<std::size_t>> cls;
  for (std::size_t i = 0; i < arity; ++i) cls.push_back({i});
  return SigmaEquivalence(arity, std::move(cls));
}

SigmaEquivalence SigmaEquivalence::full(std::size_t arity) {
  if (arity == 0) return SigmaEquivalence(0, {});
  std::vector<std::size_t> all(arity);
  std::iota(all.begin(), all.end(), 0);
  return SigmaEquivalence(arity, {all});
}

SigmaEquivalence SigmaEquivalence::from_labels(const std::vector<std::size_t>& labels) {
  std::vector<std::vector<std::size_t>> cls;
  std::vector<std::size_t> seen_labels;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find(seen_labels.begin(), seen_labels.end(), labels[i]);
    if (it == seen_labels.end()) {
      seen_labels.push_back(labels[i]);
      cls.push_back({i});
    } else {
      cls[static_cast<std::size_t>(it - seen_labels.begin())].push_back(i);
    }
  }
  return SigmaEquivalence(labels.size(), std::move(cls));
}

std::size_t SigmaEquivalence::class_of(std::size_t i) const {
  for (std::size_t c = 0; c < classes_.size(); ++c)
    if (std::binary_search(classes_[c].begin(), classes_[c].end(), i)) return c + 1;
  throw Error(ErrorCode::out_of_range, "sigma index out of range");
}

std::size_t SigmaEquivalence::max_class_size() const noexcept {
  std::size_t m = 0;
  for (const auto& c : classes_) m = std::max(m, c.size());
  return m;
}

std::string SigmaEquivalence::to_string() const {
  std::string out;
  for (const auto& c : classes_) {
    out += '{';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(c[k] + 1);
    }
    out += '}';
  }
  return out;
}

std::vector<std::string> sigma_symbols(const SigmaEquivalence& sigma, const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i <= sigma.class_count(); ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

Gadget gad_sigma(const SigmaEquivalence& sigma, const std::string& prefix) {
  std::size_t r = sigma.arity();
  std::size_t l = sigma.class_count();
  auto names = sigma_symbols(sigma, prefix);
  std::vector<RelationSymbol> rels{{names[0], 1}};
  std::vector<std::vector<Tuple>> tuples{{{static_cast<Vertex>(r)}}};
  for (std::size_t i = 1; i <= l; ++i) {
    const auto& cls = sigma.classes()[i - 1];
    rels.push_back({names[i], cls.size() + 1});
    Tuple t;
    for (auto j : cls) t.push_back(static_cast<Vertex>(j));
    t.push_back(static_cast<Vertex>(r + i));
    tuples.push_back({t});
  }
  std::vector<Vertex> roots(r);
  std::iota(roots.begin(), roots.end(), 0);
  return Gadget(Structure(Language(std::move(rels)), r + l + 1, std::move(tuples)), std::move(roots));
}

Tuple Fragmented::subedge(std::size_t edge, std::size_t class_index) const {
  if (class_index > sigma.class_count()) throw Error(ErrorCode::out_of_range, "sigma class out of range");
  Tuple t;
  if (class_index > 0)
    for (auto j : sigma.classes()[class_index - 1]) t.push_back(construction.edges[0].at(edge)[j]);
  t.push_back(auxiliary(edge, class_index));
  return t;
}

Vertex Fragmented::auxiliary(std::size_t edge, std::size_t class_index) const {
  return construction.copy_vertex(0, edge, static_cast<Vertex>(sigma.arity() + class_index));
}

std::size_t Fragmented::superedge(Vertex aux) const { return construction.origin(aux).edge; }

Fragmented fragment(const Structure& base, const std::string& r_symbol, const SigmaEquivalence& sigma,
                    const std::string& prefix) {
  std::size_t idx = base.language().require_relation(r_symbol);
  if (base.language().relations()[idx].arity != sigma.arity())
    throw Error(ErrorCode::invalid_argument, "sigma arity does not match R");
  auto symbols = sigma_symbols(sigma, prefix);
  for (const auto& s : symbols)
    if (base.language().has_symbol(s))
      throw Error(ErrorCode::language_mismatch, "fragment symbol " + s + " already in the base language");
  return Fragmented{gadget_construct(base, r_symbol, gad_sigma(sigma, prefix)), sigma, symbols};
}

SigmaEstimate estimate_eq_sigma(const std::vector<Gadget>& prefix, std::size_t threshold) {
  if (prefix.empty()) throw Error(ErrorCode::invalid_argument, "estimate_eq_sigma needs a nonempty prefix");
  std::size_t r = prefix.front().arity();
  for (const auto& g : prefix)
    if (g.arity() != r) throw Error(ErrorCode::invalid_argument, "gadgets of the prefix differ in arity");
  SigmaEstimate out;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) out.pairs.push_back({i, j});
  out.trajectories.resize(out.pairs.size());
  for (const auto& g : prefix) {
    for (std::size_t i = 0; i < r; ++i) {
      Vertex src[1] = {g.roots()[i]};
      auto dist = distances_from(g.body(), src);
      for (std::size_t p = 0; p < out.pairs.size(); ++p)
        if (out.pairs[p].first == i) out.trajectories[p].push_back(dist[g.roots()[out.pairs[p].second]]);
    }
  }
  std::vector<std::size_t> parent(r);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t p = 0; p < out.pairs.size(); ++p) {
    const Distance& d = out.trajectories[p].back();
    if (d && *d <= threshold) parent[find(out.pairs[p].first)] = find(out.pairs[p].second);
  }
  std::vector<std::size_t> labels(r);
  for (std::size_t i = 0; i < r; ++i) labels[i] = find(i);
  out.sigma = SigmaEquivalence::from_labels(labels);
  return out;
}

}  // namespace gadgetlab
