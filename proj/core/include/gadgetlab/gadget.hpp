#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gadgetlab/structure.hpp"

namespace gadgetlab {

/// Structure over L with pairwise distinct roots z_1..z_r.
class Gadget {
 public:
  Gadget() = default;
  /// `body` must not interpret constants.
  Gadget(Structure body, std::vector<Vertex> roots);

  /// Reads roots from the constants `z1`..`zr` of `s`; no other constants
  /// are allowed.
  static Gadget from_structure(const Structure& s);

  const Structure& body() const noexcept { return body_; }
  const std::vector<Vertex>& roots() const noexcept { return roots_; }
  std::size_t arity() const noexcept { return roots_.size(); }
  std::size_t size() const noexcept { return body_.size(); }

  /// Ascending; their rank in this list numbers the copies' external vertices.
  const std::vector<Vertex>& non_roots() const noexcept { return non_roots_; }
  /// Index of `v` in `non_roots()`, or nullopt for a root.
  std::optional<std::size_t> non_root_rank(Vertex v) const;
  /// i with roots()[i] == v.
  std::optional<std::size_t> root_index(Vertex v) const;

  /// The body with the roots as constants z1..zr.
  Structure as_structure() const;
  RootedStructure rooted() const { return {body_, roots_}; }

 private:
  Structure body_;
  std::vector<Vertex> roots_;
  std::vector<Vertex> non_roots_;
  std::vector<std::size_t> rank_;  // per vertex: non-root rank or SIZE_MAX
};

/// Where an external vertex of A*G comes from.
struct ExternalOrigin {
  std::size_t slot = 0;  // which gadget symbol (0 for single-gadget constructions)
  std::size_t edge = 0;  // index into `edges[slot]`
  Vertex gadget_vertex = 0;

  friend bool operator==(const ExternalOrigin&, const ExternalOrigin&) = default;
};

struct ConstructionOptions {
  /// Adds R, Int, Ext and rho (single gadget only).
  bool lifted = false;
  /// rho only on external vertices adjacent to a root of their own copy,
  /// measured in the unlifted result.
  bool restricted_rho = false;
  /// Binary R read as undirected: one copy per unordered pair, with the
  /// gadget required to admit a root-swapping automorphism.
  bool undirected = false;
  std::string int_symbol = "Int";
  std::string ext_symbol = "Ext";
  std::string rho_symbol = "rho";
};

/// Result of A * G^(1) * ... * G^(l) with provenance.
///
/// Internal vertices keep their base ids 0..n_A-1. External vertices follow,
/// ordered by (slot, edge index, rank of the gadget vertex among non-roots).
struct ConstructedStructure {
  Structure result;
  Structure base;
  std::vector<std::string> symbols;        // R symbol per slot
  std::vector<Gadget> gadgets;             // per slot
  std::vector<std::vector<Tuple>> edges;   // per slot, the replaced R-edges
  std::vector<std::vector<Vertex>> first_external;  // per slot and edge
  std::vector<ExternalOrigin> origins;     // indexed by v - internal_count()
  bool lifted = false;

  std::size_t internal_count() const noexcept { return base.size(); }
  std::size_t slot_count() const noexcept { return symbols.size(); }
  bool is_internal(Vertex v) const noexcept { return v < base.size(); }
  /// Throws for internal or out-of-range vertices.
  const ExternalOrigin& origin(Vertex v) const;
  /// rho(v): the R-edge whose copy contains the external vertex v.
  const Tuple& rho(Vertex v) const;
  /// iota_e^{-1}: the result vertex of gadget vertex `gv` in the copy for
  /// edge `edge` of `slot`. Roots map to the edge's entries.
  Vertex copy_vertex(std::size_t slot, std::size_t edge, Vertex gv) const;
  /// Index of `tuple` among `edges[slot]`.
  std::optional<std::size_t> edge_index(std::size_t slot, const Tuple& tuple) const;
};

/// A over L u {R}; G over L. The result is over L (R dropped), or over
/// L_* = L u {R, Int, Ext, rho} when lifted.
ConstructedStructure gadget_construct(const Structure& base, const std::string& r_symbol,
                                      const Gadget& gadget, const ConstructionOptions& options = {});

/// Replaces the R_j-edges by copies of the j-th gadget for every j at once,
/// which agrees with the left-to-right iteration since gadgets carry no R_k.
ConstructedStructure multi_gadget_construct(const Structure& base,
                                            const std::vector<std::string>& r_symbols,
                                            const std::vector<Gadget>& gadgets,
                                            const ConstructionOptions& options = {});

/// Path z1 - w_1 - ... - w_{length-1} - z2 with symmetric `symbol` edges.
Gadget path_gadget(std::size_t length, const std::string& symbol = "E");

/// Undirected 1-subdivision of a symmetric graph: one new vertex per edge.
ConstructedStructure subdivide(const Structure& graph, const std::string& symbol = "E");

}  // namespace gadgetlab
