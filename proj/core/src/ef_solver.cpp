#include "gadgetlab/ef_solver.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

#include "gadgetlab/error.hpp"
#include "gadgetlab/isomorphism.hpp"

namespace gadgetlab {

namespace {

constexpr Vertex unmapped = std::numeric_limits<Vertex>::max();

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& key) const {
    return boost::hash_range(key.begin(), key.end());
  }
};

Structure aligned(const Structure& a, const Structure& b) {
  if (!a.language().same_symbols(b.language()))
    throw Error(ErrorCode::language_mismatch, "EF game between structures over different languages");
  return b.reordered_to(a.language());
}

void check_picks(const Structure& s, std::span<const Vertex> picks) {
  for (Vertex v : picks)
    if (v >= s.size()) throw Error(ErrorCode::out_of_range, "picked vertex " + std::to_string(v) + " out of range");
}

}  // namespace

struct EfSolver::Impl {
  Structure a;
  Structure b;
  std::uint64_t budget = 0;
  std::uint64_t nodes = 0;
  std::vector<Vertex> map_a, map_b;
  std::vector<std::uint32_t> count_a;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::unordered_map<std::vector<std::uint64_t>, bool, KeyHash> memo;

  void reset() {
    map_a.assign(a.size(), unmapped);
    map_b.assign(b.size(), unmapped);
    count_a.assign(a.size(), 0);
    pairs.clear();
  }

  // Both directions of every tuple through x (resp. y) that lies inside the
  // extended domain.
  bool preserves(Vertex x, Vertex y) const {
    const auto& rels = a.language().relations();
    Vertex buf[16];
    std::vector<Vertex> big;
    for (std::size_t r = 0; r < rels.size(); ++r) {
      std::size_t ar = rels[r].arity;
      Vertex* out = buf;
      if (ar > 16) {
        big.resize(ar);
        out = big.data();
      }
      for (int side = 0; side < 2; ++side) {
        const Structure& from = side == 0 ? a : b;
        const Structure& to = side == 0 ? b : a;
        const auto& fmap = side == 0 ? map_a : map_b;
        Vertex v = side == 0 ? x : y;
        const auto& tuples = from.relation(r);
        for (std::size_t pos = 0; pos < ar; ++pos) {
          for (auto id : from.tuples_at(r, pos, v)) {
            const Tuple& t = tuples[id];
            bool inside = true;
            for (std::size_t i = 0; i < ar && inside; ++i) {
              out[i] = fmap[t[i]];
              inside = out[i] != unmapped;
            }
            if (inside && !to.contains(r, std::span<const Vertex>(out, ar))) return false;
          }
        }
      }
    }
    return true;
  }

  bool add(Vertex x, Vertex y) {
    if (map_a[x] != unmapped) {
      if (map_a[x] != y) return false;
      ++count_a[x];
      return true;
    }
    if (map_b[y] != unmapped) return false;
    map_a[x] = y;
    map_b[y] = x;
    if (!preserves(x, y)) {
      map_a[x] = unmapped;
      map_b[y] = unmapped;
      return false;
    }
    count_a[x] = 1;
    pairs.emplace_back(x, y);
    return true;
  }

  void remove(Vertex x) {
    if (--count_a[x] > 0) return;
    map_b[map_a[x]] = unmapped;
    map_a[x] = unmapped;
    pairs.pop_back();
  }

  bool setup(std::span<const Vertex> ap, std::span<const Vertex> bp) {
    reset();
    for (std::size_t i = 0; i < a.constants().size(); ++i)
      if (!add(a.constant(i), b.constant(i))) return false;
    for (std::size_t i = 0; i < ap.size(); ++i)
      if (!add(ap[i], bp[i])) return false;
    return true;
  }

  std::vector<std::uint64_t> key(std::size_t rounds) const {
    std::vector<std::uint64_t> k;
    k.reserve(pairs.size() + 1);
    for (auto [x, y] : pairs) k.push_back((std::uint64_t{x} << 32) | y);
    std::sort(k.begin(), k.end());
    k.push_back(rounds);
    return k;
  }

  bool answer_exists(bool left_side, Vertex v, std::size_t rounds_after) {
    std::size_t other = left_side ? b.size() : a.size();
    for (Vertex w = 0; w < other; ++w) {
      Vertex x = left_side ? v : w;
      Vertex y = left_side ? w : v;
      if (!add(x, y)) continue;
      bool ok = win(rounds_after);
      remove(x);
      if (ok) return true;
    }
    return false;
  }

  bool win(std::size_t rounds) {
    if (rounds == 0) return true;
    if (++nodes > budget)
      throw BudgetExceeded("EF search expanded more than " + std::to_string(budget) + " positions");
    auto k = key(rounds);
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    bool result = true;
    for (Vertex x = 0; x < a.size() && result; ++x)
      if (map_a[x] == unmapped && !answer_exists(true, x, rounds - 1)) result = false;
    for (Vertex y = 0; y < b.size() && result; ++y)
      if (map_b[y] == unmapped && !answer_exists(false, y, rounds - 1)) result = false;
    memo.emplace(std::move(k), result);
    return result;
  }
};

EfSolver::EfSolver(const Structure& a, const Structure& b, std::uint64_t budget)
    : impl_(std::make_unique<Impl>()) {
  impl_->b = aligned(a, b);
  impl_->a = a;
  impl_->budget = budget;
}

EfSolver::~EfSolver() = default;
EfSolver::EfSolver(EfSolver&&) noexcept = default;
EfSolver& EfSolver::operator=(EfSolver&&) noexcept = default;

const Structure& EfSolver::left() const noexcept { return impl_->a; }
const Structure& EfSolver::right() const noexcept { return impl_->b; }
std::uint64_t EfSolver::nodes_expanded() const noexcept { return impl_->nodes; }

bool EfSolver::duplicator_wins(std::span<const Vertex> a_picks, std::span<const Vertex> b_picks,
                               std::size_t rounds) {
  if (a_picks.size() != b_picks.size())
    throw Error(ErrorCode::invalid_argument, "pick lists differ in length");
  check_picks(impl_->a, a_picks);
  check_picks(impl_->b, b_picks);
  if (!impl_->setup(a_picks, b_picks)) return false;
  return impl_->win(rounds);
}

std::optional<Vertex> EfSolver::best_response(std::span<const Vertex> a_picks,
                                              std::span<const Vertex> b_picks, bool left_side, Vertex v,
                                              std::size_t rounds_after) {
  if (a_picks.size() != b_picks.size())
    throw Error(ErrorCode::invalid_argument, "pick lists differ in length");
  check_picks(impl_->a, a_picks);
  check_picks(impl_->b, b_picks);
  if (v >= (left_side ? impl_->a.size() : impl_->b.size()))
    throw Error(ErrorCode::out_of_range, "picked vertex " + std::to_string(v) + " out of range");
  if (!impl_->setup(a_picks, b_picks)) return std::nullopt;
  std::size_t other = left_side ? impl_->b.size() : impl_->a.size();
  for (Vertex w = 0; w < other; ++w) {
    Vertex x = left_side ? v : w;
    Vertex y = left_side ? w : v;
    if (!impl_->add(x, y)) continue;
    bool ok = impl_->win(rounds_after);
    impl_->remove(x);
    if (ok) return w;
  }
  return std::nullopt;
}

bool is_partial_isomorphism(const Structure& a, std::span<const Vertex> a_picks, const Structure& b,
                            std::span<const Vertex> b_picks) {
  EfSolver solver(a, b, 1);
  return solver.duplicator_wins(a_picks, b_picks, 0);
}

bool duplicator_wins(const Structure& a, std::span<const Vertex> a_picks, const Structure& b,
                     std::span<const Vertex> b_picks, std::size_t rounds, std::uint64_t budget) {
  EfSolver solver(a, b, budget);
  return solver.duplicator_wins(a_picks, b_picks, rounds);
}

EquivalenceRank equivalence_rank(const Structure& a, const Structure& b, std::size_t kmax,
                                 std::uint64_t budget) {
  EfSolver solver(a, b, budget);
  for (std::size_t k = 0; k <= kmax; ++k)
    if (!solver.duplicator_wins(k)) return {static_cast<int>(k) - 1, false};
  return {static_cast<int>(kmax), true};
}

RhoDistance rho_distance(const Structure& a, const Structure& b, std::size_t kmax, std::uint64_t budget) {
  auto r = equivalence_rank(a, b, kmax, budget);
  if (r.rank < 0) return {Rational(2), false};
  return {Rational(1) / pow(Rational(2), static_cast<unsigned>(r.rank)), r.truncated};
}

Certificate certify_equivalent(const Structure& a, const Structure& b, std::size_t k, std::uint64_t budget) {
  aligned(a, b);
  if (a.size() == b.size() && isomorphic(a, b)) return {Verdict::equivalent, CertificateMethod::isomorphism};
  try {
    EfSolver solver(a, b, budget);
    bool eq = solver.duplicator_wins(k);
    return {eq ? Verdict::equivalent : Verdict::not_equivalent, CertificateMethod::game};
  } catch (const BudgetExceeded&) {
    return {Verdict::budget_exceeded, CertificateMethod::none};
  }
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::equivalent: return "equivalent";
    case Verdict::not_equivalent: return "not_equivalent";
    case Verdict::budget_exceeded: return "budget_exceeded";
  }
  return "?";
}

const char* to_string(CertificateMethod m) noexcept {
  switch (m) {
    case CertificateMethod::isomorphism: return "isomorphism";
    case CertificateMethod::game: return "game";
    case CertificateMethod::none: return "none";
  }
  return "?";
}

}  // namespace gadgetlab
