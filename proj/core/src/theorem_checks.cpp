#include "gadgetlab/theorem_checks.hpp"

#include <sstream>

#include "gadgetlab/error.hpp"

namespace gadgetlab {

namespace {

// Empty when certified, otherwise the reason.
std::string premise(const char* name, const Structure& a, const Structure& b, std::size_t depth,
                    std::uint64_t budget) {
  auto c = certify_equivalent(a, b, depth, budget);
  if (c.verdict == Verdict::equivalent) return {};
  return std::string(name) + " at depth " + std::to_string(depth) + ": " + to_string(c.verdict);
}

InstanceOutcome conclude(const std::string& label, const Structure& left, const Structure& right, std::size_t k,
                         std::uint64_t budget) {
  auto c = certify_equivalent(left, right, k, budget);
  switch (c.verdict) {
    case Verdict::equivalent:
      return {label, CheckStatus::pass, std::string("conclusion certified by ") + to_string(c.method)};
    case Verdict::not_equivalent:
      return {label, CheckStatus::fail, "conclusion refuted by the game"};
    case Verdict::budget_exceeded:
      break;
  }
  return {label, CheckStatus::skip, "conclusion: budget exceeded"};
}

}  // namespace

const char* to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
  }
  return "?";
}

void CheckReport::add(InstanceOutcome outcome) {
  switch (outcome.status) {
    case CheckStatus::pass: ++pass; break;
    case CheckStatus::fail: ++fail; break;
    case CheckStatus::skip: ++skip; break;
  }
  instances.push_back(std::move(outcome));
}

CheckReport verify_continuity_bound(const std::vector<ContinuityInstance>& corpus, std::size_t k,
                                    const CheckOptions& options) {
  CheckReport report;
  for (const auto& inst : corpus) {
    std::size_t arity = inst.g1.arity();
    if (!options.assume_premises) {
      std::string why = premise("bases", inst.a1, inst.a2, k * arity, options.budget);
      if (why.empty()) why = premise("gadgets", inst.g1.as_structure(), inst.g2.as_structure(), k, options.budget);
      if (!why.empty()) {
        report.add({inst.label, CheckStatus::skip, "premise not certified: " + why});
        continue;
      }
    }
    auto c1 = gadget_construct(inst.a1, inst.r_symbol, inst.g1);
    auto c2 = gadget_construct(inst.a2, inst.r_symbol, inst.g2);
    report.add(conclude(inst.label, c1.result, c2.result, k, options.budget));
  }
  return report;
}

CheckReport verify_fragmentation_bound(const std::vector<FragmentationInstance>& corpus, std::size_t k,
                                       const CheckOptions& options) {
  if (k > 4) throw Error(ErrorCode::invalid_argument, "fragmentation checks beyond k = 4 are out of reach");
  CheckReport report;
  std::size_t reach = std::size_t{1} << (k + 1);
  for (const auto& inst : corpus) {
    if (!options.assume_premises) {
      std::string why;
      const Gadget& g = inst.g1;
      for (std::size_t i = 0; i < g.arity() && why.empty(); ++i) {
        for (std::size_t j = i + 1; j < g.arity() && why.empty(); ++j) {
          auto d = gaifman_distance(g.body(), g.roots()[i], g.roots()[j]);
          if (d && *d <= reach && !inst.sigma.related(i, j))
            why = "roots z" + std::to_string(i + 1) + ", z" + std::to_string(j + 1) + " at distance " +
                  std::to_string(*d) + " but not sigma-related";
        }
      }
      if (why.empty()) {
        auto f1 = fragment(inst.a1, inst.r_symbol, inst.sigma);
        auto f2 = fragment(inst.a2, inst.r_symbol, inst.sigma);
        why = premise("fragmented bases", f1.structure(), f2.structure(), (inst.sigma.max_class_size() + 1) * k,
                      options.budget);
      }
      if (why.empty()) {
        std::size_t depth = reach * inst.g1.body().language().max_arity();
        why = premise("gadgets", inst.g1.as_structure(), inst.g2.as_structure(), depth, options.budget);
      }
      if (!why.empty()) {
        report.add({inst.label, CheckStatus::skip, "premise not certified: " + why});
        continue;
      }
    }
    auto c1 = gadget_construct(inst.a1, inst.r_symbol, inst.g1);
    auto c2 = gadget_construct(inst.a2, inst.r_symbol, inst.g2);
    report.add(conclude(inst.label, c1.result, c2.result, k, options.budget));
  }
  return report;
}

std::string format_report(const CheckReport& report) {
  std::ostringstream out;
  out << "pass: " << report.pass << '\n' << "fail: " << report.fail << '\n' << "skip: " << report.skip << '\n';
  for (const auto& i : report.instances) out << "instance " << i.label << ": " << to_string(i.status) << ": " << i.detail << '\n';
  return out.str();
}

}  // namespace gadgetlab
