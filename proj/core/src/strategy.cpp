#include "gadgetlab/strategy.hpp"

#include <algorithm>
#include <limits>

#include "gadgetlab/error.hpp"

namespace gadgetlab {

SolverStrategy::SolverStrategy(std::shared_ptr<EfSolver> solver, std::size_t rounds)
    : solver_(std::move(solver)), rounds_(rounds) {
  if (!solver_) throw Error(ErrorCode::invalid_argument, "solver strategy without a solver");
}

Vertex SolverStrategy::respond(Side side, Vertex v) {
  if (rounds_ == 0) throw Error(ErrorCode::horizon_exhausted, "solver strategy has no rounds left");
  bool left_side = side == Side::left;
  auto w = solver_->best_response(left_, right_, left_side, v, rounds_ - 1);
  if (!w) throw Error(ErrorCode::check_failed, "Duplicator has no winning answer in this position");
  left_.push_back(left_side ? v : *w);
  right_.push_back(left_side ? *w : v);
  --rounds_;
  return *w;
}

std::unique_ptr<StrategyResponder> SolverStrategy::clone() const {
  return std::make_unique<SolverStrategy>(*this);
}

CopyStrategy::CopyStrategy(std::vector<Vertex> isomorphism) : forward_(std::move(isomorphism)) {
  backward_.assign(forward_.size(), std::numeric_limits<Vertex>::max());
  for (std::size_t v = 0; v < forward_.size(); ++v) {
    if (forward_[v] >= forward_.size() || backward_[forward_[v]] != std::numeric_limits<Vertex>::max())
      throw Error(ErrorCode::invalid_argument, "copy strategy needs a bijection");
    backward_[forward_[v]] = static_cast<Vertex>(v);
  }
}

Vertex CopyStrategy::respond(Side side, Vertex v) {
  const auto& m = side == Side::left ? forward_ : backward_;
  if (v >= m.size()) throw Error(ErrorCode::out_of_range, "picked vertex " + std::to_string(v) + " out of range");
  return m[v];
}

std::size_t CopyStrategy::horizon() const { return std::numeric_limits<std::size_t>::max(); }

std::unique_ptr<StrategyResponder> CopyStrategy::clone() const { return std::make_unique<CopyStrategy>(*this); }

ComposedStrategy::ComposedStrategy(std::unique_ptr<StrategyResponder> base,
                                   std::unique_ptr<StrategyResponder> gadget,
                                   std::shared_ptr<const ConstructedStructure> left,
                                   std::shared_ptr<const ConstructedStructure> right)
    : base_(std::move(base)), gadget_(std::move(gadget)), left_(std::move(left)), right_(std::move(right)) {
  if (!base_ || !gadget_ || !left_ || !right_)
    throw Error(ErrorCode::invalid_argument, "composed strategy needs both sub-strategies and constructions");
  if (left_->slot_count() != 1 || right_->slot_count() != 1)
    throw Error(ErrorCode::invalid_argument, "composed strategy needs single-gadget constructions");
  arity_ = left_->gadgets[0].arity();
  if (right_->gadgets[0].arity() != arity_)
    throw Error(ErrorCode::invalid_argument, "gadget arities differ");
}

std::size_t ComposedStrategy::horizon() const {
  std::size_t from_base = arity_ == 0 ? base_->horizon() : base_->horizon() / arity_;
  return std::min(from_base, gadget_->horizon());
}

Vertex ComposedStrategy::respond(Side side, Vertex u) {
  if (horizon() == 0) throw Error(ErrorCode::horizon_exhausted, "composed strategy has no rounds left");
  const ConstructedStructure& s = side == Side::left ? *left_ : *right_;
  const ConstructedStructure& d = side == Side::left ? *right_ : *left_;
  if (u >= s.result.size()) throw Error(ErrorCode::out_of_range, "picked vertex " + std::to_string(u) + " out of range");
  if (s.is_internal(u)) {
    Vertex v = base_->respond(side, u);
    if (!d.is_internal(v)) throw Error(ErrorCode::check_failed, "base strategy left the base structure");
    return v;
  }
  const ExternalOrigin& o = s.origin(u);
  const Tuple& e = s.edges[0][o.edge];
  Tuple f;
  for (Vertex x : e) f.push_back(base_->respond(side, x));
  auto f_index = d.edge_index(0, f);
  if (!f_index) throw Error(ErrorCode::check_failed, "base strategy answered an R-edge with a non-edge");
  Vertex answer = gadget_->respond(side, o.gadget_vertex);
  return d.copy_vertex(0, *f_index, answer);
}

std::unique_ptr<StrategyResponder> ComposedStrategy::clone() const {
  return std::make_unique<ComposedStrategy>(base_->clone(), gadget_->clone(), left_, right_);
}

std::unique_ptr<StrategyResponder> compose_strategy(std::unique_ptr<StrategyResponder> base,
                                                    std::unique_ptr<StrategyResponder> gadget,
                                                    std::shared_ptr<const ConstructedStructure> left,
                                                    std::shared_ptr<const ConstructedStructure> right) {
  return std::make_unique<ComposedStrategy>(std::move(base), std::move(gadget), std::move(left), std::move(right));
}

namespace {

struct SpoilerSearch {
  const Structure& left;
  const Structure& right;
  std::size_t rounds;
  SpoilerCheck result;
  std::vector<Vertex> lp, rp;
  std::vector<Move> play;

  void run(const StrategyResponder& state, std::size_t depth) {
    if (depth == rounds) {
      ++result.plays;
      return;
    }
    for (int s = 0; s < 2 && result.survived; ++s) {
      Side side = s == 0 ? Side::left : Side::right;
      std::size_t n = side == Side::left ? left.size() : right.size();
      for (Vertex v = 0; v < n && result.survived; ++v) {
        auto next = state.clone();
        Vertex w = next->respond(side, v);
        lp.push_back(side == Side::left ? v : w);
        rp.push_back(side == Side::left ? w : v);
        play.push_back({side, v});
        if (!is_partial_isomorphism(left, lp, right, rp)) {
          result.survived = false;
          result.losing_play = play;
          ++result.plays;
        } else {
          run(*next, depth + 1);
        }
        lp.pop_back();
        rp.pop_back();
        play.pop_back();
      }
    }
  }
};

}  // namespace

SpoilerCheck exhaustive_spoiler_check(const Structure& left, const Structure& right,
                                      const StrategyResponder& responder, std::size_t rounds) {
  SpoilerSearch search{left, right, rounds, {}, {}, {}, {}};
  if (!is_partial_isomorphism(left, {}, right, {})) {
    search.result.survived = false;
    return search.result;
  }
  search.run(responder, 0);
  return search.result;
}

}  // namespace gadgetlab
