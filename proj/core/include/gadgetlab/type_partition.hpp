#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "gadgetlab/structure.hpp"

namespace gadgetlab {

/// Canonical ids for type fingerprints. Partitions computed with one interner
/// are comparable across structures over the same language.
class TypeInterner {
 public:
  std::uint32_t intern(const std::vector<std::uint64_t>& fingerprint);
  std::size_t size() const noexcept { return ids_.size(); }

 private:
  std::map<std::vector<std::uint64_t>, std::uint32_t> ids_;
};

/// Rank-k types of all p-tuples of a structure.
struct TypePartition {
  std::size_t k = 0;
  std::size_t p = 0;
  std::size_t n = 0;
  /// Indexed by the tuple read as a base-n number, first entry most significant.
  std::vector<std::uint32_t> ids;
  std::size_t type_count = 0;

  std::uint32_t id(std::span<const Vertex> tuple) const;
};

/// Level 0 is the atomic type of the tuple extended by the constants; level
/// i+1 pairs the level-i type with the set of level-i types of its one-vertex
/// extensions. The language order of `s` must match across compared calls.
TypePartition rank_k_type_partition(const Structure& s, std::size_t k, std::size_t p,
                                     TypeInterner& interner);
TypePartition rank_k_type_partition(const Structure& s, std::size_t k, std::size_t p);

/// Same rank-k type of a in A and b in B (languages aligned internally).
bool same_type(const Structure& a, std::span<const Vertex> a_tuple, const Structure& b,
               std::span<const Vertex> b_tuple, std::size_t k);

}  // namespace gadgetlab
