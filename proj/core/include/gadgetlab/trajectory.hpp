#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gadgetlab/formula.hpp"
#include "gadgetlab/rational.hpp"
#include "gadgetlab/sequences.hpp"

namespace gadgetlab {

struct NamedFormula {
  std::string id;
  Formula formula;
};

enum class PairingMode { exact, sampled };

struct TrajectoryOptions {
  PairingMode mode = PairingMode::exact;
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  std::uint64_t tuple_budget = 50'000'000;
  std::size_t workers = 1;
  std::string r_symbol = "R";
};

struct TrajectoryRow {
  std::size_t n = 0;
  std::string formula_id;
  /// Exact pairing, or hits/samples in sampled mode; unset when the index
  /// exceeded the budget.
  std::optional<Rational> value;
  bool exact = false;
  std::uint64_t samples = 0;

  bool budget_exceeded() const noexcept { return !value.has_value(); }
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;  // by index, then formula order
};

/// Builds base(n), or base(n) * gadget(n) when a gadget family is given, and
/// records each formula's Stone pairing. Sampled rows at index n use the
/// seed derive_seed(seed, n).
Trajectory trajectory_compute(const SequenceSpec& base, const std::optional<SequenceSpec>& gadget,
                              const std::vector<NamedFormula>& formulas, const std::vector<std::size_t>& indices,
                              const TrajectoryOptions& options = {});

/// "n,formula_id,value_num,value_den,exact,samples" plus one line per row;
/// budget rows carry NA values.
std::string trajectory_csv(const Trajectory& t);

enum class ConvergenceVerdict { stable, fluctuating, inconclusive };

const char* to_string(ConvergenceVerdict v) noexcept;

struct FormulaReport {
  std::string formula_id;
  std::size_t window = 0;
  double oscillation = 0;
  double odd_mean = 0;
  double even_mean = 0;
  ConvergenceVerdict verdict = ConvergenceVerdict::inconclusive;
};

struct ConvergenceReport {
  std::vector<FormulaReport> formulas;
};

inline constexpr std::size_t default_window = 4;
inline constexpr double default_tolerance = 0.02;

/// Over the last `window` valued rows of each formula: stable iff
/// max - min <= tol; otherwise fluctuating iff the means of the odd-index and
/// even-index rows differ by more than 2 tol; otherwise inconclusive.
ConvergenceReport convergence_verdict(const Trajectory& t, std::size_t window = default_window,
                                      double tol = default_tolerance);

}  // namespace gadgetlab
