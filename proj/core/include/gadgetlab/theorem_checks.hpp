#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gadgetlab/ef_solver.hpp"
#include "gadgetlab/fragmentation.hpp"
#include "gadgetlab/gadget.hpp"

namespace gadgetlab {

struct ContinuityInstance {
  std::string label;
  Structure a1, a2;
  Gadget g1, g2;
  std::string r_symbol = "R";
};

struct FragmentationInstance {
  std::string label;
  Structure a1, a2;
  Gadget g1, g2;
  SigmaEquivalence sigma;
  std::string r_symbol = "R";
};

enum class CheckStatus { pass, fail, skip };

const char* to_string(CheckStatus s) noexcept;

struct InstanceOutcome {
  std::string label;
  CheckStatus status = CheckStatus::skip;
  std::string detail;
};

struct CheckReport {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skip = 0;
  std::vector<InstanceOutcome> instances;

  void add(InstanceOutcome outcome);
};

struct CheckOptions {
  std::uint64_t budget = default_ef_budget;
  /// Treat the premises as certified without checking them.
  bool assume_premises = false;
};

/// Premises A1 ==_{k arity(R)} A2 and G1 ==_k G2 (roots as constants);
/// conclusion A1*G1 ==_k A2*G2. Uncertified premises and budget overruns skip.
CheckReport verify_continuity_bound(const std::vector<ContinuityInstance>& corpus, std::size_t k,
                                    const CheckOptions& options = {});

/// Premises A1^sigma ==_{(m+1)k} A2^sigma, G1 ==_{2^{k+1} maxarity(L_G)} G2,
/// and dist(z_i, z_j) <= 2^{k+1} in G1 only for sigma-related i, j.
CheckReport verify_fragmentation_bound(const std::vector<FragmentationInstance>& corpus, std::size_t k,
                                       const CheckOptions& options = {});

std::string format_report(const CheckReport& report);

}  // namespace gadgetlab
