#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "gadgetlab/rational.hpp"
#include "gadgetlab/structure.hpp"

namespace gadgetlab {

inline constexpr std::uint64_t default_ef_budget = 20'000'000;

/// The map a_i -> b_i together with c^A -> c^B is a well-defined injective
/// partial map preserving every relation in both directions.
bool is_partial_isomorphism(const Structure& a, std::span<const Vertex> a_picks, const Structure& b,
                            std::span<const Vertex> b_picks);

/// EF_k(A, a; B, b) as a memoized exhaustive search. The budget bounds the
/// number of positions expanded over the solver's lifetime; exceeding it
/// throws BudgetExceeded. Memo entries survive across queries.
class EfSolver {
 public:
  EfSolver(const Structure& a, const Structure& b, std::uint64_t budget = default_ef_budget);
  ~EfSolver();
  EfSolver(EfSolver&&) noexcept;
  EfSolver& operator=(EfSolver&&) noexcept;

  const Structure& left() const noexcept;
  /// The right structure, reordered to the left language.
  const Structure& right() const noexcept;

  bool duplicator_wins(std::span<const Vertex> a_picks, std::span<const Vertex> b_picks,
                       std::size_t rounds);
  bool duplicator_wins(std::size_t rounds) { return duplicator_wins({}, {}, rounds); }

  /// Smallest w such that Duplicator still wins `rounds_after` rounds after
  /// Spoiler's pick `v` on `left_side` is answered by w; nullopt if none.
  std::optional<Vertex> best_response(std::span<const Vertex> a_picks, std::span<const Vertex> b_picks,
                                      bool left_side, Vertex v, std::size_t rounds_after);

  std::uint64_t nodes_expanded() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool duplicator_wins(const Structure& a, std::span<const Vertex> a_picks, const Structure& b,
                     std::span<const Vertex> b_picks, std::size_t rounds,
                     std::uint64_t budget = default_ef_budget);

struct EquivalenceRank {
  /// Largest k <= kmax with A ==_k B; -1 when even the constant
  /// configurations disagree.
  int rank = 0;
  /// Equivalence held through kmax, so rank is only a lower bound.
  bool truncated = false;
};

EquivalenceRank equivalence_rank(const Structure& a, const Structure& b, std::size_t kmax,
                                 std::uint64_t budget = default_ef_budget);

struct RhoDistance {
  Rational value;
  /// value is an upper bound (equivalence held through kmax).
  bool truncated = false;
};

/// 2^{-rank}; 2 when rank is -1.
RhoDistance rho_distance(const Structure& a, const Structure& b, std::size_t kmax,
                         std::uint64_t budget = default_ef_budget);

enum class Verdict { equivalent, not_equivalent, budget_exceeded };
enum class CertificateMethod { isomorphism, game, none };

struct Certificate {
  Verdict verdict = Verdict::budget_exceeded;
  CertificateMethod method = CertificateMethod::none;
};

/// A ==_k B, via an isomorphism when one exists and the game otherwise.
/// Never throws BudgetExceeded.
Certificate certify_equivalent(const Structure& a, const Structure& b, std::size_t k,
                               std::uint64_t budget = default_ef_budget);

const char* to_string(Verdict v) noexcept;
const char* to_string(CertificateMethod m) noexcept;

}  // namespace gadgetlab
