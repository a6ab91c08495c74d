#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "gadgetlab/ef_solver.hpp"
#include "gadgetlab/gadget.hpp"
#include "gadgetlab/structure.hpp"

namespace gadgetlab {

enum class Side { left, right };

struct Move {
  Side side = Side::left;
  Vertex vertex = 0;
};

/// A stateful Duplicator: each call answers one Spoiler move with a vertex
/// of the opposite structure and consumes one round.
class StrategyResponder {
 public:
  virtual ~StrategyResponder() = default;
  /// Throws Error(horizon_exhausted) when no guaranteed round is left.
  virtual Vertex respond(Side side, Vertex v) = 0;
  /// Rounds still guaranteed.
  virtual std::size_t horizon() const = 0;
  virtual std::unique_ptr<StrategyResponder> clone() const = 0;
};

/// Plays optimal moves read off the solver. Valid for `rounds` rounds from
/// the empty position when Duplicator wins EF_rounds.
class SolverStrategy : public StrategyResponder {
 public:
  SolverStrategy(std::shared_ptr<EfSolver> solver, std::size_t rounds);
  Vertex respond(Side side, Vertex v) override;
  std::size_t horizon() const override { return rounds_; }
  std::unique_ptr<StrategyResponder> clone() const override;

 private:
  std::shared_ptr<EfSolver> solver_;
  std::size_t rounds_;
  std::vector<Vertex> left_, right_;
};

/// Answers through a fixed isomorphism, forever.
class CopyStrategy : public StrategyResponder {
 public:
  explicit CopyStrategy(std::vector<Vertex> isomorphism);
  Vertex respond(Side side, Vertex v) override;
  std::size_t horizon() const override;
  std::unique_ptr<StrategyResponder> clone() const override;

 private:
  std::vector<Vertex> forward_, backward_;
};

/// Duplicator in EF(A1*G1; A2*G2) compiled from a strategy on (A1, A2) and
/// one on the gadgets with their roots as constants. Internal picks go to the
/// base game; an external pick u in the copy of e replays all of e in the base
/// game, reads off the answering R-edge f, plays iota_e(u) in the gadget game
/// and maps the answer back through the copy of f.
class ComposedStrategy : public StrategyResponder {
 public:
  ComposedStrategy(std::unique_ptr<StrategyResponder> base, std::unique_ptr<StrategyResponder> gadget,
                   std::shared_ptr<const ConstructedStructure> left,
                   std::shared_ptr<const ConstructedStructure> right);
  Vertex respond(Side side, Vertex v) override;
  std::size_t horizon() const override;
  std::unique_ptr<StrategyResponder> clone() const override;

 private:
  std::unique_ptr<StrategyResponder> base_, gadget_;
  std::shared_ptr<const ConstructedStructure> left_, right_;
  std::size_t arity_;
};

std::unique_ptr<StrategyResponder> compose_strategy(std::unique_ptr<StrategyResponder> base,
                                                    std::unique_ptr<StrategyResponder> gadget,
                                                    std::shared_ptr<const ConstructedStructure> left,
                                                    std::shared_ptr<const ConstructedStructure> right);

struct SpoilerCheck {
  bool survived = true;
  std::uint64_t plays = 0;
  /// First play (in search order) after which the picks are not a partial
  /// isomorphism; empty when survived.
  std::vector<Move> losing_play;
};

/// Plays every Spoiler sequence of length `rounds` against clones of
/// `responder` and checks the partial isomorphism after each round.
SpoilerCheck exhaustive_spoiler_check(const Structure& left, const Structure& right,
                                      const StrategyResponder& responder, std::size_t rounds);

}  // namespace gadgetlab
