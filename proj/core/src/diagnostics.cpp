#include "gadgetlab/diagnostics.hpp"

#include <sstream>

#include "gadgetlab/error.hpp"

namespace gadgetlab {

namespace {

Rational mass_of(const Gadget& g, const std::vector<Vertex>& set, std::size_t r) {
  return relative_measure(g.body(), r_neighborhood(g.body(), set, r));
}

}  // namespace

const char* to_string(TipClass c) noexcept { return c == TipClass::light ? "light" : "heavy"; }

DiagnosticsReport sequence_diagnostics(const SequenceSpec& gadget, const std::vector<std::size_t>& indices,
                                       const std::vector<std::size_t>& radii, std::size_t threshold) {
  if (indices.empty()) throw Error(ErrorCode::invalid_argument, "diagnostics need at least one index");
  if (radii.empty()) throw Error(ErrorCode::invalid_argument, "diagnostics need at least one radius");
  for (std::size_t i = 1; i < indices.size(); ++i)
    if (indices[i] <= indices[i - 1]) throw Error(ErrorCode::invalid_argument, "indices must be strictly increasing");
  DiagnosticsReport report;
  report.indices = indices;
  report.radii = radii;
  std::vector<Gadget> prefix;
  for (auto n : indices) prefix.push_back(generate_gadget(gadget, n));
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (auto r : radii) report.root_masses.push_back({indices[i], r, mass_of(prefix[i], prefix[i].roots(), r)});
  report.sigma = estimate_eq_sigma(prefix, threshold);
  for (const auto& cls : report.sigma.sigma.classes()) {
    TipReport tip;
    tip.roots = cls;
    bool light = true;
    for (auto r : radii) {
      Rational first, last;
      for (std::size_t i = 0; i < indices.size(); ++i) {
        std::vector<Vertex> set;
        for (auto j : cls) set.push_back(prefix[i].roots()[j]);
        Rational m = mass_of(prefix[i], set, r);
        if (i == 0) first = m;
        last = m;
        tip.masses.push_back({indices[i], r, m});
      }
      if (last * 2 > first) light = false;
    }
    tip.classification = light ? TipClass::light : TipClass::heavy;
    report.tips.push_back(std::move(tip));
  }
  return report;
}

std::string format_report(const DiagnosticsReport& report) {
  std::ostringstream out;
  for (const auto& row : report.root_masses)
    out << "root_mass n=" << row.n << " r=" << row.r << ": " << to_string(row.mass) << ' '
        << format_double(to_double(row.mass)) << '\n';
  out << "sigma: " << report.sigma.sigma.to_string() << '\n';
  for (std::size_t p = 0; p < report.sigma.pairs.size(); ++p) {
    out << "distance z" << report.sigma.pairs[p].first + 1 << " z" << report.sigma.pairs[p].second + 1 << ':';
    for (const auto& d : report.sigma.trajectories[p]) out << ' ' << (d ? std::to_string(*d) : std::string("inf"));
    out << '\n';
  }
  for (const auto& tip : report.tips) {
    out << "tip {";
    for (std::size_t i = 0; i < tip.roots.size(); ++i) out << (i ? "," : "") << tip.roots[i] + 1;
    out << "}: " << to_string(tip.classification) << '\n';
    for (const auto& row : tip.masses)
      out << "tip_mass n=" << row.n << " r=" << row.r << ": " << to_string(row.mass) << ' '
          << format_double(to_double(row.mass)) << '\n';
  }
  return out.str();
}

}  // namespace gadgetlab
