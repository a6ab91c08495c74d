#include "gadgetlab/formula.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "gadgetlab/error.hpp"

namespace gadgetlab {

namespace fo {

Expr::RawTerm var(std::string name) { return {false, std::move(name)}; }
Expr::RawTerm constant(std::string name) { return {true, std::move(name)}; }

Expr atom(std::string relation, std::vector<Expr::RawTerm> terms) {
  Expr e;
  e.kind = NodeKind::Atom;
  e.name = std::move(relation);
  e.terms = std::move(terms);
  return e;
}

Expr eq(Expr::RawTerm lhs, Expr::RawTerm rhs) {
  Expr e;
  e.kind = NodeKind::Equal;
  e.terms = {std::move(lhs), std::move(rhs)};
  return e;
}

Expr neg(Expr inner) {
  Expr e;
  e.kind = NodeKind::Not;
  e.children.push_back(std::move(inner));
  return e;
}

Expr conj(std::vector<Expr> parts) {
  Expr e;
  e.kind = NodeKind::And;
  e.children = std::move(parts);
  return e;
}

Expr disj(std::vector<Expr> parts) {
  Expr e;
  e.kind = NodeKind::Or;
  e.children = std::move(parts);
  return e;
}

Expr implies(Expr lhs, Expr rhs) { return disj({neg(std::move(lhs)), std::move(rhs)}); }

Expr exists(std::string variable, Expr body) {
  Expr e;
  e.kind = NodeKind::Exists;
  e.name = std::move(variable);
  e.children.push_back(std::move(body));
  return e;
}

Expr forall(std::string variable, Expr body) {
  Expr e;
  e.kind = NodeKind::Forall;
  e.name = std::move(variable);
  e.children.push_back(std::move(body));
  return e;
}

Expr truth() { return conj({}); }
Expr falsity() { return disj({}); }

}  // namespace fo

namespace {

bool is_quantifier(NodeKind k) { return k == NodeKind::Exists || k == NodeKind::Forall; }

void validate_shape(const Expr& e) {
  switch (e.kind) {
    case NodeKind::Atom:
      if (e.name.empty()) throw Error(ErrorCode::invalid_argument, "atom without relation name");
      if (e.terms.empty()) throw Error(ErrorCode::invalid_argument, "atom " + e.name + " without terms");
      break;
    case NodeKind::Equal:
      if (e.terms.size() != 2) throw Error(ErrorCode::invalid_argument, "equality needs two terms");
      break;
    case NodeKind::Not:
      if (e.children.size() != 1) throw Error(ErrorCode::invalid_argument, "negation needs one operand");
      break;
    case NodeKind::And:
    case NodeKind::Or:
      break;
    case NodeKind::Exists:
    case NodeKind::Forall:
      if (e.children.size() != 1 || e.name.empty())
        throw Error(ErrorCode::invalid_argument, "malformed quantifier");
      break;
  }
  for (const auto& t : e.terms)
    if (t.name.empty()) throw Error(ErrorCode::invalid_argument, "empty term name");
  for (const auto& c : e.children) validate_shape(c);
}

void collect_free(const Expr& e, std::vector<std::string>& bound, std::vector<std::string>& free) {
  for (const auto& t : e.terms) {
    if (t.is_constant) continue;
    if (std::find(bound.begin(), bound.end(), t.name) != bound.end()) continue;
    if (std::find(free.begin(), free.end(), t.name) == free.end()) free.push_back(t.name);
  }
  if (is_quantifier(e.kind)) bound.push_back(e.name);
  for (const auto& c : e.children) collect_free(c, bound, free);
  if (is_quantifier(e.kind)) bound.pop_back();
}

class Resolver {
 public:
  explicit Resolver(std::vector<std::string> free) : names_(std::move(free)) {
    free_count_ = names_.size();
    for (std::size_t i = 0; i < names_.size(); ++i) scope_[names_[i]].push_back(i);
  }

  Node resolve(const Expr& e) {
    Node n;
    n.kind = e.kind;
    if (e.kind == NodeKind::Atom) n.relation = e.name;
    for (const auto& t : e.terms) {
      Term term;
      if (t.is_constant) {
        term.is_constant = true;
        term.constant = t.name;
      } else {
        term.variable = scope_.at(t.name).back();
      }
      n.terms.push_back(std::move(term));
    }
    if (is_quantifier(e.kind)) {
      n.variable = names_.size();
      names_.push_back(e.name);
      scope_[e.name].push_back(n.variable);
      n.children.push_back(resolve(e.children[0]));
      scope_[e.name].pop_back();
    } else {
      for (const auto& c : e.children) n.children.push_back(resolve(c));
    }
    return n;
  }

  std::vector<std::string> finish_names() {
    std::set<std::string> taken(names_.begin(), names_.begin() + free_count_);
    std::size_t counter = 0;
    for (std::size_t i = free_count_; i < names_.size(); ++i) {
      std::string candidate;
      do {
        candidate = "_b" + std::to_string(counter++);
      } while (taken.count(candidate));
      names_[i] = candidate;
    }
    return names_;
  }

 private:
  std::vector<std::string> names_;
  std::size_t free_count_ = 0;
  std::map<std::string, std::vector<std::size_t>> scope_;
};

std::size_t rank_of(const Node& n) {
  std::size_t best = 0;
  for (const auto& c : n.children) best = std::max(best, rank_of(c));
  return is_quantifier(n.kind) ? best + 1 : best;
}

void collect_relations(const Node& n, std::map<std::string, std::size_t>& out) {
  if (n.kind == NodeKind::Atom) {
    auto [it, inserted] = out.emplace(n.relation, n.terms.size());
    if (!inserted && it->second != n.terms.size())
      throw Error(ErrorCode::invalid_argument,
                  "relation " + n.relation + " used with arities " + std::to_string(it->second) +
                      " and " + std::to_string(n.terms.size()));
  }
  for (const auto& c : n.children) collect_relations(c, out);
}

void collect_constants(const Node& n, std::set<std::string>& out) {
  for (const auto& t : n.terms)
    if (t.is_constant) out.insert(t.constant);
  for (const auto& c : n.children) collect_constants(c, out);
}

void print_term(std::ostream& out, const Term& t, const std::vector<std::string>& names) {
  if (t.is_constant)
    out << '@' << t.constant;
  else
    out << names[t.variable];
}

void print(std::ostream& out, const Node& n, const std::vector<std::string>& names) {
  switch (n.kind) {
    case NodeKind::Atom:
      out << n.relation << '(';
      for (std::size_t i = 0; i < n.terms.size(); ++i) {
        if (i) out << ',';
        print_term(out, n.terms[i], names);
      }
      out << ')';
      return;
    case NodeKind::Equal:
      print_term(out, n.terms[0], names);
      out << " = ";
      print_term(out, n.terms[1], names);
      return;
    case NodeKind::Not:
      out << "not (";
      print(out, n.children[0], names);
      out << ')';
      return;
    case NodeKind::And:
    case NodeKind::Or: {
      if (n.children.empty()) {
        out << (n.kind == NodeKind::And ? "true" : "false");
        return;
      }
      const char* op = n.kind == NodeKind::And ? " and " : " or ";
      out << '(';
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out << op;
        print(out, n.children[i], names);
      }
      out << ')';
      return;
    }
    case NodeKind::Exists:
    case NodeKind::Forall:
      out << '(' << (n.kind == NodeKind::Exists ? "exists " : "forall ") << names[n.variable] << ". ";
      print(out, n.children[0], names);
      out << ')';
      return;
  }
}

Node nnf(const Node& n, bool negate) {
  Node out;
  switch (n.kind) {
    case NodeKind::Atom:
    case NodeKind::Equal:
      if (!negate) return n;
      out.kind = NodeKind::Not;
      out.children.push_back(n);
      return out;
    case NodeKind::Not:
      return nnf(n.children[0], !negate);
    case NodeKind::And:
    case NodeKind::Or: {
      bool is_and = (n.kind == NodeKind::And) != negate;
      out.kind = is_and ? NodeKind::And : NodeKind::Or;
      for (const auto& c : n.children) out.children.push_back(nnf(c, negate));
      return out;
    }
    case NodeKind::Exists:
    case NodeKind::Forall: {
      bool is_exists = (n.kind == NodeKind::Exists) != negate;
      out.kind = is_exists ? NodeKind::Exists : NodeKind::Forall;
      out.variable = n.variable;
      out.children.push_back(nnf(n.children[0], negate));
      return out;
    }
  }
  return out;
}

}  // namespace

Formula::Formula() : root_(std::make_shared<Node>()) {}

Formula Formula::from_expr(const Expr& expr, const std::optional<std::vector<std::string>>& free_order) {
  validate_shape(expr);
  std::vector<std::string> bound, free;
  collect_free(expr, bound, free);
  if (free_order) {
    std::set<std::string> declared;
    for (const auto& name : *free_order) {
      if (!declared.insert(name).second)
        throw Error(ErrorCode::invalid_argument, "free variable " + name + " declared twice");
    }
    for (const auto& name : free)
      if (!declared.count(name))
        throw Error(ErrorCode::invalid_argument, "undeclared free variable " + name);
    free = *free_order;
  }
  Resolver resolver(free);
  Formula f;
  f.root_ = std::make_shared<Node>(resolver.resolve(expr));
  f.free_count_ = free.size();
  f.names_ = resolver.finish_names();
  return f;
}

std::vector<std::string> Formula::free_variables() const {
  return {names_.begin(), names_.begin() + static_cast<std::ptrdiff_t>(free_count_)};
}

std::vector<RelationSymbol> Formula::relations_used() const {
  std::map<std::string, std::size_t> rels;
  collect_relations(*root_, rels);
  std::vector<RelationSymbol> out;
  for (const auto& [name, arity] : rels) out.push_back({name, arity});
  return out;
}

std::vector<std::string> Formula::constants_used() const {
  std::set<std::string> consts;
  collect_constants(*root_, consts);
  return {consts.begin(), consts.end()};
}

void Formula::check_language(const Language& language) const {
  for (const auto& sym : relations_used()) {
    auto idx = language.relation_index(sym.name);
    if (!idx) throw Error(ErrorCode::language_mismatch, "unknown relation symbol " + sym.name);
    std::size_t arity = language.relations()[*idx].arity;
    if (arity != sym.arity)
      throw Error(ErrorCode::invalid_argument, "arity mismatch for " + sym.name + ": expected " +
                                                   std::to_string(arity) + ", got " +
                                                   std::to_string(sym.arity));
  }
  for (const auto& c : constants_used())
    if (!language.constant_index(c))
      throw Error(ErrorCode::language_mismatch, "unknown constant symbol " + c);
}

std::size_t quantifier_rank(const Formula& f) { return rank_of(f.root()); }

std::string to_string(const Formula& f) {
  std::ostringstream out;
  print(out, f.root(), f.variable_names());
  return out.str();
}

namespace {

Expr node_to_expr(const Node& n, const std::vector<std::string>& names) {
  Expr e;
  e.kind = n.kind;
  if (n.kind == NodeKind::Atom) e.name = n.relation;
  if (n.kind == NodeKind::Exists || n.kind == NodeKind::Forall) e.name = names[n.variable];
  for (const auto& t : n.terms)
    e.terms.push_back(t.is_constant ? fo::constant(t.constant) : fo::var(names[t.variable]));
  for (const auto& c : n.children) e.children.push_back(node_to_expr(c, names));
  return e;
}

}  // namespace

Expr to_expr(const Formula& f) { return node_to_expr(f.root(), f.variable_names()); }

Formula negation_normal_form(const Formula& f) {
  return Formula::from_expr(node_to_expr(nnf(f.root(), false), f.variable_names()), f.free_variables());
}

}  // namespace gadgetlab
