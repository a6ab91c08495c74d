#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gadgetlab/ef_solver.hpp"
#include "gadgetlab/formula.hpp"
#include "gadgetlab/gadget.hpp"
#include "gadgetlab/profile.hpp"
#include "gadgetlab/rational.hpp"

namespace gadgetlab {

/// Groups follow the copy (slot, edge) of each external entry.
Profile profile_of(const ConstructedStructure& c, std::span<const Vertex> tuple);
MultiProfile multi_profile_of(const ConstructedStructure& c, std::span<const Vertex> tuple);

/// Fraction of all p-tuples of the result having profile `pi`, by
/// enumeration of at most `budget` tuples.
Rational profile_probability_exact(const ConstructedStructure& c, const Profile& pi,
                                   std::uint64_t budget = 50'000'000);

/// |Int| / |V|.
Rational internal_proportion(const ConstructedStructure& c);

struct Representation {
  Profile profile;
  /// (A, b_1, ..., b_p)^r: internal entries root themselves, external ones
  /// root their whole R-edge.
  RootedStructure base_side;
  /// (G, c_j)^r per group, G carrying its roots as constants z1..zr.
  std::vector<RootedStructure> gadget_sides;
};

Representation representation_at(const ConstructedStructure& c, std::span<const Vertex> tuple, std::size_t r);

/// arity(R)^{p+1} (r * maxarity + k).
std::uint64_t representation_depth(std::size_t k, std::size_t r, std::size_t p, std::size_t arity,
                                   std::size_t max_arity);

struct RepresentationVerdict {
  bool equivalent = false;
  std::uint64_t depth = 0;
};

/// (k,r,p)-representation equivalence. Different profiles give false without
/// any game. maxarity is taken over the base and gadget languages. Throws
/// BudgetExceeded when a game does not fit the budget.
RepresentationVerdict representation_equivalent(const ConstructedStructure& c1, std::span<const Vertex> t1,
                                                const ConstructedStructure& c2, std::span<const Vertex> t2,
                                                std::size_t k, std::size_t r,
                                                std::uint64_t budget = default_ef_budget);

/// psi over L_*: x_1..x_p have profile `pi` and their representation in A
/// satisfies phi, with phi's quantifiers relativized to Int. phi's free
/// variables are read in blocks: one per internal position, arity(R) per
/// external position.
Formula lift_profile_formula(const Formula& phi, const Profile& pi, std::size_t arity,
                             const ConstructionOptions& names = {});

}  // namespace gadgetlab
