#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gadgetlab/gadget.hpp"
#include "gadgetlab/structure.hpp"

namespace gadgetlab {

/// Partition of the root indices 0..r-1 into classes X_1..X_l, each sorted,
/// ordered by smallest element. The empty class X_0 is implicit.
class SigmaEquivalence {
 public:
  SigmaEquivalence() = default;
  SigmaEquivalence(std::size_t arity, std::vector<std::vector<std::size_t>> classes);

  static SigmaEquivalence discrete(std::size_t arity);
  static SigmaEquivalence full(std::size_t arity);
  /// Classes from a label per index (equal labels share a class).
  static SigmaEquivalence from_labels(const std::vector<std::size_t>& labels);

  std::size_t arity() const noexcept { return arity_; }
  /// l, not counting X_0.
  std::size_t class_count() const noexcept { return classes_.size(); }
  const std::vector<std::vector<std::size_t>>& classes() const noexcept { return classes_; }
  /// 1-based class number of index i (X_1..X_l).
  std::size_t class_of(std::size_t i) const;
  bool related(std::size_t i, std::size_t j) const { return class_of(i) == class_of(j); }
  std::size_t max_class_size() const noexcept;

  /// "{1,2}{3}", 1-based.
  std::string to_string() const;

  friend bool operator==(const SigmaEquivalence&, const SigmaEquivalence&) = default;

 private:
  std::size_t arity_ = 0;
  std::vector<std::vector<std::size_t>> classes_;
};

/// Symbol names R0..Rl (the prefix is configurable to avoid clashes).
std::vector<std::string> sigma_symbols(const SigmaEquivalence& sigma, const std::string& prefix = "R");

/// Gad(sigma): roots z_1..z_r are vertices 0..r-1, auxiliaries x_0..x_l are
/// r..r+l. One R_i-edge per class: the roots of X_i ascending, then x_i.
Gadget gad_sigma(const SigmaEquivalence& sigma, const std::string& prefix = "R");

/// A^sigma = A * Gad(sigma), with subedge access.
struct Fragmented {
  ConstructedStructure construction;
  SigmaEquivalence sigma;
  std::vector<std::string> symbols;

  const Structure& structure() const { return construction.result; }
  /// e_{X_i} for i in 0..l: the R_i-subedge of edge `edge`.
  Tuple subedge(std::size_t edge, std::size_t class_index) const;
  /// The auxiliary vertex x_i in the copy for `edge`.
  Vertex auxiliary(std::size_t edge, std::size_t class_index) const;
  /// Superedge index of an auxiliary vertex.
  std::size_t superedge(Vertex auxiliary) const;
};

Fragmented fragment(const Structure& base, const std::string& r_symbol, const SigmaEquivalence& sigma,
                    const std::string& prefix = "R");

struct SigmaEstimate {
  SigmaEquivalence sigma;
  /// For each pair i < j (row-major), the root distance along the prefix.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::vector<Distance>> trajectories;
};

/// Finite-horizon guess at Eq(G): i ~ j when dist(z_i, z_j) <= threshold in
/// the last gadget of the prefix (closed transitively).
SigmaEstimate estimate_eq_sigma(const std::vector<Gadget>& prefix, std::size_t threshold);

}  // namespace gadgetlab
