#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gadgetlab/formula.hpp"
#include "gadgetlab/profile.hpp"
#include "gadgetlab/rational.hpp"
#include "gadgetlab/structure.hpp"

namespace gadgetlab {

struct PairingOptions {
  /// Largest n^p the exact enumeration may visit.
  std::uint64_t tuple_budget = 50'000'000;
  /// Threads splitting the tuple space; the result does not depend on it.
  unsigned workers = 1;
};

/// <f, s>: the fraction of the n^p assignments (repeats allowed) satisfying f;
/// for sentences 1 or 0.
Rational stone_pairing_exact(const Structure& s, const Formula& f, const PairingOptions& options = {});

/// Number of satisfying assignments, for callers that combine counts.
std::uint64_t count_satisfying(const Structure& s, const Formula& f, const PairingOptions& options = {});

struct SampledPairing {
  Rational estimate;  // hits / samples
  double halfwidth = 0;  // 1.96 * sqrt(q (1 - q) / samples)
  std::uint64_t samples = 0;
};

SampledPairing stone_pairing_sampled(const Structure& s, const Formula& f, std::uint64_t samples,
                                     std::uint64_t seed);

/// <f|pi, a>: f has one block of free variables per profile position, a
/// single variable for internal positions and arity(R) variables for external
/// ones, in position order. Internal blocks range over V(a); external blocks
/// range over R-edges, equal within a group and distinct across groups.
/// nullopt when no admissible sequence exists.
std::optional<Rational> conditional_stone_pairing(const Structure& a, const std::string& r_symbol,
                                                  const Formula& f, const Profile& pi,
                                                  std::uint64_t budget = 50'000'000);

}  // namespace gadgetlab
