#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gadgetlab/rational.hpp"

namespace gadgetlab {

/// Vertices are dense ids 0..n-1.
using Vertex = std::uint32_t;
using Tuple = std::vector<Vertex>;

struct RelationSymbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const RelationSymbol&, const RelationSymbol&) = default;
};

/// A relational vocabulary with constants. Names are unique across relations
/// and constants; arities are positive.
class Language {
 public:
  Language() = default;
  Language(std::vector<RelationSymbol> relations, std::vector<std::string> constants = {});

  const std::vector<RelationSymbol>& relations() const noexcept { return relations_; }
  const std::vector<std::string>& constants() const noexcept { return constants_; }

  std::optional<std::size_t> relation_index(std::string_view name) const;
  std::optional<std::size_t> constant_index(std::string_view name) const;
  bool has_symbol(std::string_view name) const;

  /// Throws if the relation is unknown.
  std::size_t require_relation(std::string_view name) const;

  /// Largest relation arity (0 for a language without relations).
  std::size_t max_arity() const noexcept;

  Language with_relation(RelationSymbol symbol) const;
  Language with_constant(std::string name) const;
  Language without_relation(std::string_view name) const;
  Language without_constants() const;

  /// Same symbols with the same arities, regardless of declaration order.
  bool same_symbols(const Language& other) const;

  friend bool operator==(const Language&, const Language&) = default;

 private:
  std::vector<RelationSymbol> relations_;
  std::vector<std::string> constants_;
};

/// Finite relational structure. Immutable after construction; copies share
/// storage, so passing by value is cheap and thread-safe.
class Structure {
 public:
  /// Empty structure over the empty language.
  Structure();

  /// Validates every tuple and constant. Relation tuples are sorted and
  /// deduplicated. `relations` is indexed like `language.relations()`.
  Structure(Language language, std::size_t size, std::vector<std::vector<Tuple>> relations,
            std::vector<Vertex> constants = {});

  const Language& language() const noexcept;
  std::size_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }

  const std::vector<Tuple>& relation(std::size_t index) const;
  const std::vector<Tuple>& relation(std::string_view name) const;
  const std::vector<std::vector<Tuple>>& relations() const noexcept;

  Vertex constant(std::size_t index) const;
  const std::vector<Vertex>& constants() const noexcept;

  bool contains(std::size_t relation_index, std::span<const Vertex> tuple) const;

  /// Gaifman graph as sorted adjacency lists (no self loops).
  const std::vector<std::vector<Vertex>>& gaifman_adjacency() const;

  /// Indices (into `relation(rel)`) of the tuples whose entry at `position`
  /// equals `v`.
  std::span<const std::uint32_t> tuples_at(std::size_t rel, std::size_t position, Vertex v) const;

  /// Same structure with relations and constants reordered to `target`, which
  /// must have the same symbols.
  Structure reordered_to(const Language& target) const;

  /// Tuple-set equality under identical vertex ids (not isomorphism).
  bool identical(const Structure& other) const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// Structure with an ordered list of extra roots, read as fresh constants
/// appended after the base language's constants.
struct RootedStructure {
  Structure base;
  std::vector<Vertex> roots;

  /// Base structure lifted by constants for the roots.
  Structure as_structure() const;
};

/// Shortest-path length in the Gaifman graph; nullopt when unreachable.
using Distance = std::optional<std::size_t>;

struct RelationData {
  std::string symbol;
  std::vector<Tuple> tuples;
};

struct ConstantData {
  std::string symbol;
  Vertex vertex = 0;
};

/// Name-based constructor with full validation.
Structure build_structure(const Language& language, std::size_t size,
                          const std::vector<RelationData>& relations,
                          const std::vector<ConstantData>& constants = {});

/// Adds the reversed tuple of every binary relation listed in `symbols`.
Structure symmetric_closure(const Structure& s, const std::vector<std::string>& symbols);
bool is_symmetric(const Structure& s, std::size_t relation_index);

Distance gaifman_distance(const Structure& s, Vertex u, Vertex v);

/// Distances from a vertex set (multi-source BFS), capped at `limit`.
std::vector<Distance> distances_from(const Structure& s, std::span<const Vertex> sources,
                                     std::size_t limit = std::numeric_limits<std::size_t>::max());

/// {v : dist(v, X) <= r}, sorted.
std::vector<Vertex> r_neighborhood(const Structure& s, std::span<const Vertex> set, std::size_t r);

/// N^1(X) \ X, sorted.
std::vector<Vertex> boundary(const Structure& s, std::span<const Vertex> set);

struct InducedSubstructure {
  Structure structure;
  /// new id -> old id
  std::vector<Vertex> to_original;
};

/// Vertices are re-indexed in ascending order of their original ids. Throws if
/// `set` omits the vertex of an interpreted constant.
InducedSubstructure induced_substructure(const Structure& s, std::span<const Vertex> set);

/// Ids of `b` shift by |V(a)|. Both operands must share their relation
/// symbols; the result interprets the constants of both, so a constant name
/// may occur in at most one operand.
Structure disjoint_union(const Structure& a, const Structure& b);

/// Forgets the symbols outside `sub`. Constants not in `sub` are dropped too.
Structure shadow_to(const Structure& s, const Language& sub);

/// |X| / |V(s)|. Duplicates in `set` count once.
Rational relative_measure(const Structure& s, std::span<const Vertex> set);

/// Induced substructure on the r-neighborhood of the roots and of every
/// constant of the base; roots are re-indexed into the ball.
RootedStructure ball_of_roots(const RootedStructure& rs, std::size_t r);

/// Undirected convenience: one binary symbol `E`, both orientations stored.
Structure undirected_graph(std::size_t size, const std::vector<std::pair<Vertex, Vertex>>& edges,
                           const std::string& symbol = "E");

}  // namespace gadgetlab
