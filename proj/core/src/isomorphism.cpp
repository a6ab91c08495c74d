#include "gadgetlab/isomorphism.hpp"

#include <algorithm>

#include "gadgetlab/error.hpp"

namespace gadgetlab {

namespace {

constexpr Vertex kUnset = std::numeric_limits<Vertex>::max();

// Per vertex: constants it interprets, then tuple counts per (relation, position).
std::vector<std::vector<std::size_t>> invariants(const Structure& s) {
  const Language& lang = s.language();
  std::vector<std::vector<std::size_t>> inv(s.size());
  std::size_t width = lang.constants().size();
  for (const auto& r : lang.relations()) width += r.arity;
  for (auto& row : inv) row.assign(width + 1, 0);
  for (std::size_t c = 0; c < s.constants().size(); ++c) inv[s.constants()[c]][c] += 1;
  std::size_t base = lang.constants().size();
  for (std::size_t r = 0; r < lang.relations().size(); ++r) {
    for (const auto& t : s.relation(r))
      for (std::size_t i = 0; i < t.size(); ++i) inv[t[i]][base + i] += 1;
    base += lang.relations()[r].arity;
  }
  const auto& adj = s.gaifman_adjacency();
  for (Vertex v = 0; v < s.size(); ++v) inv[v][width] = adj[v].size();
  return inv;
}

class Matcher {
 public:
  Matcher(const Structure& a, const Structure& b) : a_(a), b_(b) {
    inv_a_ = invariants(a_);
    inv_b_ = invariants(b_);
    fwd_.assign(a_.size(), kUnset);
    bwd_.assign(b_.size(), kUnset);
    order_ = search_order();
  }

  bool feasible() const {
    if (a_.size() != b_.size()) return false;
    for (std::size_t r = 0; r < a_.relations().size(); ++r)
      if (a_.relation(r).size() != b_.relation(r).size()) return false;
    auto sa = inv_a_, sb = inv_b_;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb;
  }

  bool run(std::size_t depth) {
    if (depth == order_.size()) return true;
    Vertex v = order_[depth];
    for (Vertex w = 0; w < b_.size(); ++w) {
      if (bwd_[w] != kUnset || inv_a_[v] != inv_b_[w]) continue;
      fwd_[v] = w;
      bwd_[w] = v;
      if (consistent(v) && run(depth + 1)) return true;
      fwd_[v] = kUnset;
      bwd_[w] = kUnset;
    }
    return false;
  }

  std::vector<Vertex> mapping() const { return fwd_; }

 private:
  // BFS order from high-invariant vertices so that constraints bind early.
  std::vector<Vertex> search_order() const {
    std::vector<Vertex> order;
    std::vector<bool> seen(a_.size(), false);
    const auto& adj = a_.gaifman_adjacency();
    std::vector<Vertex> starts(a_.size());
    for (Vertex v = 0; v < a_.size(); ++v) starts[v] = v;
    std::stable_sort(starts.begin(), starts.end(),
                     [&](Vertex x, Vertex y) { return adj[x].size() > adj[y].size(); });
    for (Vertex c : a_.constants()) {
      if (seen[c]) continue;
      seen[c] = true;
      order.push_back(c);
    }
    std::size_t head = 0;
    auto drain = [&] {
      while (head < order.size()) {
        for (Vertex w : adj[order[head]])
          if (!seen[w]) {
            seen[w] = true;
            order.push_back(w);
          }
        ++head;
      }
    };
    drain();
    for (Vertex s : starts) {
      if (seen[s]) continue;
      seen[s] = true;
      order.push_back(s);
      drain();
    }
    return order;
  }

  bool consistent(Vertex v) const {
    return check_side(a_, b_, fwd_, v) && check_side(b_, a_, bwd_, fwd_[v]);
  }

  static bool check_side(const Structure& from, const Structure& to, const std::vector<Vertex>& map,
                         Vertex v) {
    Tuple image;
    for (std::size_t r = 0; r < from.relations().size(); ++r) {
      const auto& rel = from.relation(r);
      std::size_t arity = from.language().relations()[r].arity;
      for (std::size_t pos = 0; pos < arity; ++pos) {
        for (auto id : from.tuples_at(r, pos, v)) {
          const auto& t = rel[id];
          image.clear();
          for (Vertex x : t) {
            if (map[x] == kUnset) break;
            image.push_back(map[x]);
          }
          if (image.size() == t.size() && !to.contains(r, image)) return false;
        }
      }
    }
    return true;
  }

  const Structure& a_;
  const Structure& b_;
  std::vector<std::vector<std::size_t>> inv_a_, inv_b_;
  std::vector<Vertex> fwd_, bwd_;
  std::vector<Vertex> order_;
};

}  // namespace

std::optional<std::vector<Vertex>> find_isomorphism(const Structure& a, const Structure& b) {
  if (!a.language().same_symbols(b.language()))
    throw Error(ErrorCode::language_mismatch, "isomorphism test across different languages");
  Structure bb = b.reordered_to(a.language());
  Matcher m(a, bb);
  if (!m.feasible()) return std::nullopt;
  if (!m.run(0)) return std::nullopt;
  return m.mapping();
}

bool isomorphic(const Structure& a, const Structure& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace gadgetlab
