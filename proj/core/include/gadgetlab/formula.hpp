#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gadgetlab/structure.hpp"

namespace gadgetlab {

enum class NodeKind { Atom, Equal, Not, And, Or, Exists, Forall };

/// A term is a variable (index into the formula's variable table) or a
/// constant symbol.
struct Term {
  bool is_constant = false;
  std::size_t variable = 0;
  std::string constant;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Resolved AST node. `And`/`Or` with no children mean true/false.
struct Node {
  NodeKind kind = NodeKind::And;
  std::string relation;          // Atom
  std::vector<Term> terms;       // Atom (any length), Equal (two)
  std::vector<Node> children;    // Not (one), And/Or (any), quantifiers (one)
  std::size_t variable = 0;      // quantifiers

  friend bool operator==(const Node&, const Node&) = default;
};

/// Syntax tree with names still attached, used by the parser and by code that
/// builds formulas programmatically. Resolution turns it into a `Formula`.
struct Expr {
  struct RawTerm {
    bool is_constant = false;
    std::string name;
  };

  NodeKind kind = NodeKind::And;
  std::string name;  // relation for Atom, bound variable for quantifiers
  std::vector<RawTerm> terms;
  std::vector<Expr> children;
};

namespace fo {

Expr::RawTerm var(std::string name);
Expr::RawTerm constant(std::string name);

Expr atom(std::string relation, std::vector<Expr::RawTerm> terms);
Expr eq(Expr::RawTerm lhs, Expr::RawTerm rhs);
Expr neg(Expr e);
Expr conj(std::vector<Expr> parts);
Expr disj(std::vector<Expr> parts);
Expr implies(Expr lhs, Expr rhs);
Expr exists(std::string variable, Expr body);
Expr forall(std::string variable, Expr body);
Expr truth();
Expr falsity();

}  // namespace fo

/// First-order formula with equality and constants. Free variables come first
/// in the variable table; every quantifier binds its own fresh slot, named
/// `_b0`, `_b1`, ... in binding order (skipping names taken by free variables).
class Formula {
 public:
  Formula();

  /// Resolves scoping. Free variables are ordered by first use unless
  /// `free_order` is given, in which case it must list every free variable
  /// (extra names are allowed and become vacuous free variables).
  static Formula from_expr(const Expr& expr,
                           const std::optional<std::vector<std::string>>& free_order = std::nullopt);

  const Node& root() const noexcept { return *root_; }
  std::size_t free_count() const noexcept { return free_count_; }
  std::size_t variable_count() const noexcept { return names_.size(); }
  const std::vector<std::string>& variable_names() const noexcept { return names_; }
  std::vector<std::string> free_variables() const;
  bool is_sentence() const noexcept { return free_count_ == 0; }

  /// Checks symbols and arities against `language`; throws on mismatch.
  void check_language(const Language& language) const;

  /// Relation symbols used, with the arities at which they are used.
  std::vector<RelationSymbol> relations_used() const;
  std::vector<std::string> constants_used() const;

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.free_count_ == b.free_count_ && a.names_ == b.names_ && *a.root_ == *b.root_;
  }

 private:
  std::shared_ptr<const Node> root_;
  std::size_t free_count_ = 0;
  std::vector<std::string> names_;
};

/// Parses the formula DSL:
///
///   formula := quant | disj
///   quant   := ("exists" | "forall") var "." formula
///   disj    := conj {"or" conj}
///   conj    := lit {"and" lit}
///   lit     := ["not"] (atom | quant)
///   atom    := name "(" term {"," term} ")" | term "=" term | "(" formula ")"
///   term    := var | "@" constname
///
/// A quantifier in literal position extends as far right as possible.
Formula parse_formula(std::string_view text,
                      const std::optional<std::vector<std::string>>& free_order = std::nullopt);

/// As above, additionally validating symbols and arities.
Formula parse_formula(std::string_view text, const Language& language,
                      const std::optional<std::vector<std::string>>& free_order = std::nullopt);

std::size_t quantifier_rank(const Formula& f);

/// Fully parenthesized DSL text. Parsing it with `free_variables()` as the
/// free order yields an equal formula, except that single-operand `And`/`Or`
/// nodes collapse into their operand.
std::string to_string(const Formula& f);

/// Negation normal form: negations pushed down to atoms and equalities.
Formula negation_normal_form(const Formula& f);

/// Back to named syntax; bound variables keep their canonical names.
Expr to_expr(const Formula& f);

}  // namespace gadgetlab
