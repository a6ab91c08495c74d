#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gadgetlab/fragmentation.hpp"
#include "gadgetlab/rational.hpp"
#include "gadgetlab/sequences.hpp"

namespace gadgetlab {

struct MassRow {
  std::size_t n = 0;
  std::size_t r = 0;
  Rational mass;  // nu(N^r(X)) in the n-th gadget
};

enum class TipClass { light, heavy };

const char* to_string(TipClass c) noexcept;

struct TipReport {
  /// 0-based root indices of the sigma-class.
  std::vector<std::size_t> roots;
  std::vector<MassRow> masses;
  /// Light iff, for every r, the mass at the last index is at most half its
  /// value at the first index. A finite-horizon reading only.
  TipClass classification = TipClass::heavy;
};

struct DiagnosticsReport {
  std::vector<std::size_t> indices;
  std::vector<std::size_t> radii;
  std::vector<MassRow> root_masses;
  SigmaEstimate sigma;
  std::vector<TipReport> tips;
};

DiagnosticsReport sequence_diagnostics(const SequenceSpec& gadget, const std::vector<std::size_t>& indices,
                                       const std::vector<std::size_t>& radii, std::size_t threshold);

/// Line-oriented key: value rendering, floats with 12 significant digits.
std::string format_report(const DiagnosticsReport& report);

}  // namespace gadgetlab
