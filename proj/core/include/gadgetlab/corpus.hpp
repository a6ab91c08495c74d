#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gadgetlab/gadget.hpp"
#include "gadgetlab/structure.hpp"
#include "gadgetlab/theorem_checks.hpp"

namespace gadgetlab {

/// Strict linear order 0 < 1 < ... < n-1 as a binary relation.
Structure linear_order(std::size_t n, const std::string& symbol = "R");

/// Disjoint union of directed cycles (a length-1 cycle is a loop).
Structure directed_cycles(const std::vector<std::size_t>& lengths, const std::string& symbol = "R");

/// An isomorphic copy under a seeded random permutation.
Structure relabel(const Structure& s, std::uint64_t seed);
Gadget relabel(const Gadget& g, std::uint64_t seed);

/// Tiny quadruples for the continuity check at depth k (1 or 2): linear
/// orders and directed cycles as bases, paths between the two roots as
/// gadgets, plus relabelled copies.
std::vector<ContinuityInstance> continuity_corpus(std::size_t k);

/// Unions of directed cycles with equal vertex counts against long path
/// gadgets under the discrete sigma, plus a few premise-failing cases.
std::vector<FragmentationInstance> fragmentation_corpus();

}  // namespace gadgetlab
