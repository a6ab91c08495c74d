#include "gadgetlab/stone_pairing.hpp"

#include <cmath>
#include <functional>
#include <thread>

#include "gadgetlab/error.hpp"
#include "gadgetlab/evaluate.hpp"
#include "gadgetlab/random.hpp"

namespace gadgetlab {

namespace {

// n^p, or nullopt past `limit`.
std::optional<std::uint64_t> bounded_power(std::uint64_t n, std::size_t p, std::uint64_t limit) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < p; ++i) {
    if (n != 0 && total > limit / n) return std::nullopt;
    total *= n;
  }
  if (total > limit) return std::nullopt;
  return total;
}

// Counts satisfying assignments whose first free variable is congruent to
// `offset` modulo `stride`.
std::uint64_t count_slice(const CompiledFormula& cf, std::size_t n, std::size_t offset,
                          std::size_t stride) {
  std::size_t p = cf.free_count();
  std::vector<Vertex> a(cf.variable_count(), 0);
  std::uint64_t hits = 0;
  for (std::size_t first = offset; first < n; first += stride) {
    a[0] = static_cast<Vertex>(first);
    for (std::size_t i = 1; i < p; ++i) a[i] = 0;
    for (;;) {
      if (cf.eval(a)) ++hits;
      bool done = true;
      for (std::size_t i = p - 1; i >= 1; --i) {
        if (++a[i] < n) {
          done = false;
          break;
        }
        a[i] = 0;
      }
      if (done) break;
    }
  }
  return hits;
}

}  // namespace

std::uint64_t count_satisfying(const Structure& s, const Formula& f, const PairingOptions& options) {
  CompiledFormula cf(f, s);
  std::size_t p = f.free_count();
  if (p == 0) {
    std::vector<Vertex> a(cf.variable_count(), 0);
    return cf.eval(a) ? 1 : 0;
  }
  if (s.empty()) throw Error(ErrorCode::invalid_argument, "Stone pairing of a formula with free variables on an empty structure");
  if (!bounded_power(s.size(), p, options.tuple_budget))
    throw BudgetExceeded(std::to_string(s.size()) + "^" + std::to_string(p) +
                         " tuples exceed the tuple budget of " + std::to_string(options.tuple_budget));
  std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(options.workers, s.size()));
  if (workers == 1) return count_slice(cf, s.size(), 0, 1);
  std::vector<std::uint64_t> partial(workers, 0);
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w)
    threads.emplace_back([&, w] { partial[w] = count_slice(cf, s.size(), w, workers); });
  for (auto& t : threads) t.join();
  std::uint64_t hits = 0;
  for (auto h : partial) hits += h;
  return hits;
}

Rational stone_pairing_exact(const Structure& s, const Formula& f, const PairingOptions& options) {
  std::uint64_t hits = count_satisfying(s, f, options);
  if (f.free_count() == 0) return Rational(hits);
  BigInt total = 1;
  for (std::size_t i = 0; i < f.free_count(); ++i) total *= s.size();
  return make_rational(BigInt(hits), total);
}

SampledPairing stone_pairing_sampled(const Structure& s, const Formula& f, std::uint64_t samples,
                                     std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::invalid_argument, "sampled Stone pairing needs samples > 0");
  if (f.free_count() == 0)
    throw Error(ErrorCode::invalid_argument, "sampled Stone pairing needs free variables");
  if (s.empty()) throw Error(ErrorCode::invalid_argument, "sampled Stone pairing on an empty structure");
  CompiledFormula cf(f, s);
  Rng rng(derive_seed(seed, 0));
  std::vector<Vertex> a(cf.variable_count(), 0);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    for (std::size_t j = 0; j < f.free_count(); ++j) a[j] = static_cast<Vertex>(rng.below(s.size()));
    if (cf.eval(a)) ++hits;
  }
  SampledPairing out;
  out.samples = samples;
  out.estimate = make_rational(hits, samples);
  double q = static_cast<double>(hits) / static_cast<double>(samples);
  out.halfwidth = 1.96 * std::sqrt(q * (1.0 - q) / static_cast<double>(samples));
  return out;
}

std::optional<Rational> conditional_stone_pairing(const Structure& a, const std::string& r_symbol,
                                                  const Formula& f, const Profile& pi,
                                                  std::uint64_t budget) {
  std::size_t r = a.language().require_relation(r_symbol);
  std::size_t arity = a.language().relations()[r].arity;
  std::size_t expected = pi.internal.size() + pi.external_count() * arity;
  if (f.free_count() != expected)
    throw Error(ErrorCode::invalid_argument,
                "formula has " + std::to_string(f.free_count()) + " free variables but profile " +
                    to_string(pi) + " needs " + std::to_string(expected));
  const auto& edges = a.relation(r);
  std::size_t m = edges.size();
  std::size_t t = pi.t();
  std::size_t n = a.size();
  if (t > m || (!pi.internal.empty() && n == 0)) return std::nullopt;

  // Variable offset of each position's block, and the group of each position.
  std::vector<std::size_t> offset(pi.p), group_of(pi.p, SIZE_MAX);
  std::vector<bool> is_internal(pi.p, false);
  for (auto i : pi.internal) is_internal[i] = true;
  for (std::size_t j = 0; j < t; ++j)
    for (auto i : pi.groups[j]) group_of[i] = j;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < pi.p; ++i) {
    offset[i] = cursor;
    cursor += is_internal[i] ? 1 : arity;
  }

  BigInt total = 1;
  for (std::size_t i = 0; i < pi.internal.size(); ++i) total *= n;
  for (std::size_t j = 0; j < t; ++j) total *= (m - j);
  if (total > budget)
    throw BudgetExceeded("conditional pairing needs " + total.str() + " sequences, budget " +
                         std::to_string(budget));

  CompiledFormula cf(f, a);
  std::vector<Vertex> assign(cf.variable_count(), 0);
  std::vector<std::size_t> edge_of(t, 0);
  std::vector<bool> used(m, false);
  std::uint64_t hits = 0;

  std::function<void(std::size_t)> choose_internal;
  std::function<void(std::size_t)> choose_edge = [&](std::size_t j) {
    if (j == t) {
      choose_internal(0);
      return;
    }
    for (std::size_t e = 0; e < m; ++e) {
      if (used[e]) continue;
      used[e] = true;
      edge_of[j] = e;
      choose_edge(j + 1);
      used[e] = false;
    }
  };
  choose_internal = [&](std::size_t k) {
    if (k == pi.internal.size()) {
      for (std::size_t i = 0; i < pi.p; ++i) {
        if (is_internal[i]) continue;
        const auto& e = edges[edge_of[group_of[i]]];
        for (std::size_t c = 0; c < arity; ++c) assign[offset[i] + c] = e[c];
      }
      if (cf.eval(assign)) ++hits;
      return;
    }
    std::size_t pos = pi.internal[k];
    for (Vertex v = 0; v < n; ++v) {
      assign[offset[pos]] = v;
      choose_internal(k + 1);
    }
  };
  choose_edge(0);
  return make_rational(BigInt(hits), total);
}

}  // namespace gadgetlab
