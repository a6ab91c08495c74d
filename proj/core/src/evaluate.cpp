#include "gadgetlab/evaluate.hpp"

#include <algorithm>

#include "gadgetlab/error.hpp"

namespace gadgetlab {

namespace {

struct CTerm {
  bool is_constant = false;
  std::size_t index = 0;  // variable slot, or constant vertex
};

enum class GuardKind { None, Equal, Indexed, Scan };

struct Guard {
  GuardKind kind = GuardKind::None;
  std::size_t relation = 0;
  std::size_t position = 0;  // position of the quantified variable
  std::size_t key_position = 0;
  CTerm key;
};

struct CNode {
  NodeKind kind = NodeKind::And;
  std::size_t relation = 0;
  std::vector<CTerm> terms;
  std::vector<CNode> children;
  std::size_t variable = 0;
  Guard guard;
};

}  // namespace

struct CompiledFormula::Impl {
  Structure structure;
  std::size_t free_count = 0;
  std::size_t variable_count = 0;
  CNode root;

  Vertex value(const CTerm& t, std::span<const Vertex> a) const {
    return t.is_constant ? static_cast<Vertex>(t.index) : a[t.index];
  }

  CNode compile(const Node& n, std::vector<bool>& in_scope) {
    CNode c;
    c.kind = n.kind;
    for (const auto& t : n.terms) {
      CTerm ct;
      if (t.is_constant) {
        auto idx = structure.language().constant_index(t.constant);
        if (!idx) throw Error(ErrorCode::language_mismatch, "unknown constant symbol " + t.constant);
        ct.is_constant = true;
        ct.index = structure.constant(*idx);
      } else {
        ct.index = t.variable;
      }
      c.terms.push_back(ct);
    }
    if (n.kind == NodeKind::Atom) {
      auto idx = structure.language().relation_index(n.relation);
      if (!idx) throw Error(ErrorCode::language_mismatch, "unknown relation symbol " + n.relation);
      std::size_t arity = structure.language().relations()[*idx].arity;
      if (arity != n.terms.size())
        throw Error(ErrorCode::invalid_argument, "arity mismatch for " + n.relation);
      c.relation = *idx;
    }
    if (n.kind == NodeKind::Exists || n.kind == NodeKind::Forall) {
      c.variable = n.variable;
      in_scope[n.variable] = true;
      c.children.push_back(compile(n.children[0], in_scope));
      in_scope[n.variable] = false;
      c.guard = find_guard(c, in_scope);
    } else {
      for (const auto& child : n.children) c.children.push_back(compile(child, in_scope));
    }
    return c;
  }

  // Candidates come from conjuncts (exists) or negated disjuncts (forall) of
  // the body; any witness outside them falsifies (resp. satisfies) the body.
  Guard find_guard(const CNode& q, const std::vector<bool>& in_scope) const {
    const CNode& body = q.children[0];
    bool want_and = q.kind == NodeKind::Exists;
    std::vector<const CNode*> parts;
    if (body.kind == (want_and ? NodeKind::And : NodeKind::Or)) {
      for (const auto& ch : body.children) parts.push_back(&ch);
    } else {
      parts.push_back(&body);
    }
    auto known = [&](const CTerm& t) { return t.is_constant || in_scope[t.index]; };
    auto is_var = [&](const CTerm& t) { return !t.is_constant && t.index == q.variable; };

    Guard best;
    auto rank = [](GuardKind k) {
      switch (k) {
        case GuardKind::Equal: return 3;
        case GuardKind::Indexed: return 2;
        case GuardKind::Scan: return 1;
        case GuardKind::None: return 0;
      }
      return 0;
    };
    for (const CNode* part : parts) {
      const CNode* lit = part;
      if (!want_and) {
        if (part->kind != NodeKind::Not) continue;
        lit = &part->children[0];
      }
      Guard g;
      if (lit->kind == NodeKind::Equal) {
        const CTerm& l = lit->terms[0];
        const CTerm& r = lit->terms[1];
        if (is_var(l) && !is_var(r) && known(r)) {
          g.kind = GuardKind::Equal;
          g.key = r;
        } else if (is_var(r) && !is_var(l) && known(l)) {
          g.kind = GuardKind::Equal;
          g.key = l;
        }
      } else if (lit->kind == NodeKind::Atom) {
        for (std::size_t pos = 0; pos < lit->terms.size() && g.kind != GuardKind::Indexed; ++pos) {
          if (!is_var(lit->terms[pos])) continue;
          for (std::size_t kp = 0; kp < lit->terms.size(); ++kp) {
            const CTerm& t = lit->terms[kp];
            if (is_var(t) || !known(t)) continue;
            g.kind = GuardKind::Indexed;
            g.relation = lit->relation;
            g.position = pos;
            g.key_position = kp;
            g.key = t;
            break;
          }
          if (g.kind == GuardKind::None) {
            g.kind = GuardKind::Scan;
            g.relation = lit->relation;
            g.position = pos;
          }
        }
      }
      if (rank(g.kind) > rank(best.kind)) best = g;
    }
    if (best.kind == GuardKind::Scan && structure.relation(best.relation).size() >= structure.size())
      best.kind = GuardKind::None;
    return best;
  }

  bool eval(const CNode& n, std::span<Vertex> a) const {
    switch (n.kind) {
      case NodeKind::Atom: {
        std::size_t k = n.terms.size();
        Vertex small[8];
        std::vector<Vertex> large;
        Vertex* buf = small;
        if (k > 8) {
          large.resize(k);
          buf = large.data();
        }
        for (std::size_t i = 0; i < k; ++i) buf[i] = value(n.terms[i], a);
        return structure.contains(n.relation, std::span<const Vertex>(buf, k));
      }
      case NodeKind::Equal:
        return value(n.terms[0], a) == value(n.terms[1], a);
      case NodeKind::Not:
        return !eval(n.children[0], a);
      case NodeKind::And:
        for (const auto& c : n.children)
          if (!eval(c, a)) return false;
        return true;
      case NodeKind::Or:
        for (const auto& c : n.children)
          if (eval(c, a)) return true;
        return false;
      case NodeKind::Exists:
      case NodeKind::Forall:
        return eval_quantifier(n, a);
    }
    return false;
  }

  bool eval_quantifier(const CNode& n, std::span<Vertex> a) const {
    bool exists = n.kind == NodeKind::Exists;
    const CNode& body = n.children[0];
    Vertex& slot = a[n.variable];
    auto visit = [&](Vertex v) {
      slot = v;
      return eval(body, a) == exists;  // true means "stop: decided"
    };
    const Guard& g = n.guard;
    switch (g.kind) {
      case GuardKind::Equal:
        if (visit(value(g.key, a))) return exists;
        return !exists;
      case GuardKind::Indexed: {
        const auto& rel = structure.relation(g.relation);
        for (auto id : structure.tuples_at(g.relation, g.key_position, value(g.key, a)))
          if (visit(rel[id][g.position])) return exists;
        return !exists;
      }
      case GuardKind::Scan:
        for (const auto& t : structure.relation(g.relation))
          if (visit(t[g.position])) return exists;
        return !exists;
      case GuardKind::None:
        break;
    }
    for (Vertex v = 0; v < structure.size(); ++v)
      if (visit(v)) return exists;
    return !exists;
  }
};

CompiledFormula::CompiledFormula(const Formula& formula, const Structure& structure)
    : impl_(std::make_unique<Impl>()) {
  formula.check_language(structure.language());
  impl_->structure = structure;
  impl_->free_count = formula.free_count();
  impl_->variable_count = formula.variable_count();
  std::vector<bool> in_scope(formula.variable_count(), false);
  for (std::size_t i = 0; i < formula.free_count(); ++i) in_scope[i] = true;
  impl_->root = impl_->compile(formula.root(), in_scope);
}

CompiledFormula::~CompiledFormula() = default;
CompiledFormula::CompiledFormula(CompiledFormula&&) noexcept = default;
CompiledFormula& CompiledFormula::operator=(CompiledFormula&&) noexcept = default;

std::size_t CompiledFormula::free_count() const noexcept { return impl_->free_count; }
std::size_t CompiledFormula::variable_count() const noexcept { return impl_->variable_count; }
const Structure& CompiledFormula::structure() const noexcept { return impl_->structure; }

bool CompiledFormula::eval(std::span<Vertex> assignment) const {
  if (assignment.size() < impl_->variable_count)
    throw Error(ErrorCode::invalid_argument, "assignment buffer too small");
  return impl_->eval(impl_->root, assignment);
}

bool evaluate(const Structure& s, const Formula& f, std::span<const Vertex> free_values) {
  if (free_values.size() != f.free_count())
    throw Error(ErrorCode::invalid_argument,
                "expected " + std::to_string(f.free_count()) + " free values, got " +
                    std::to_string(free_values.size()));
  for (Vertex v : free_values)
    if (v >= s.size())
      throw Error(ErrorCode::out_of_range, "vertex " + std::to_string(v) + " out of range");
  CompiledFormula cf(f, s);
  std::vector<Vertex> a(f.variable_count(), 0);
  std::copy(free_values.begin(), free_values.end(), a.begin());
  return cf.eval(a);
}

bool evaluate(const Structure& s, const Formula& f, const Valuation& valuation) {
  std::vector<Vertex> values;
  for (const auto& name : f.free_variables()) {
    auto it = valuation.find(name);
    if (it == valuation.end())
      throw Error(ErrorCode::invalid_argument, "no value for free variable " + name);
    values.push_back(it->second);
  }
  return evaluate(s, f, values);
}

}  // namespace gadgetlab
