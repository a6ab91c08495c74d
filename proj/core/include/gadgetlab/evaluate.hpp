#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>

#include "gadgetlab/formula.hpp"
#include "gadgetlab/structure.hpp"

namespace gadgetlab {

using Valuation = std::map<std::string, Vertex>;

/// A formula bound to one structure: symbols resolved to indices, constants to
/// vertices, and quantifiers annotated with guards. A guard is an atom or
/// equality in the quantifier body that restricts the witnesses worth trying,
/// so `exists y. (E(x,y) and ...)` only visits the out-neighbours of x.
///
/// Immutable once built; `eval` only writes to the caller's assignment buffer,
/// so one instance can serve several threads.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& formula, const Structure& structure);
  ~CompiledFormula();
  CompiledFormula(CompiledFormula&&) noexcept;
  CompiledFormula& operator=(CompiledFormula&&) noexcept;

  std::size_t free_count() const noexcept;
  std::size_t variable_count() const noexcept;
  const Structure& structure() const noexcept;

  /// `assignment` holds at least `variable_count()` slots; the first
  /// `free_count()` carry the free variables, the rest are scratch.
  bool eval(std::span<Vertex> assignment) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool evaluate(const Structure& s, const Formula& f, const Valuation& valuation);

/// Free variables given positionally, in `f.free_variables()` order.
bool evaluate(const Structure& s, const Formula& f, std::span<const Vertex> free_values);

}  // namespace gadgetlab
