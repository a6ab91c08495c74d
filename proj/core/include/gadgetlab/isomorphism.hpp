#pragma once

#include <optional>
#include <vector>

#include "gadgetlab/structure.hpp"

namespace gadgetlab {

/// Backtracking isomorphism search respecting constants. Returns the map
/// V(a) -> V(b) when one exists. Languages must share their symbols.
std::optional<std::vector<Vertex>> find_isomorphism(const Structure& a, const Structure& b);

bool isomorphic(const Structure& a, const Structure& b);

}  // namespace gadgetlab
