#include "gadgetlab/trajectory.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "gadgetlab/error.hpp"
#include "gadgetlab/gadget.hpp"
#include "gadgetlab/random.hpp"
#include "gadgetlab/stone_pairing.hpp"

namespace gadgetlab {

namespace {

std::vector<TrajectoryRow> rows_at(const SequenceSpec& base, const std::optional<SequenceSpec>& gadget,
                                   const std::vector<NamedFormula>& formulas, std::size_t n,
                                   const TrajectoryOptions& options) {
  Structure s = generate(base, n);
  if (gadget) s = gadget_construct(s, options.r_symbol, generate_gadget(*gadget, n)).result;
  std::vector<TrajectoryRow> rows;
  for (const auto& f : formulas) {
    TrajectoryRow row;
    row.n = n;
    row.formula_id = f.id;
    if (options.mode == PairingMode::exact || f.formula.free_count() == 0) {
      try {
        row.value = stone_pairing_exact(s, f.formula, {options.tuple_budget, 1});
        row.exact = true;
      } catch (const BudgetExceeded&) {
      }
    } else {
      auto sp = stone_pairing_sampled(s, f.formula, options.samples, derive_seed(options.seed, n));
      row.value = sp.estimate;
      row.samples = sp.samples;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Trajectory trajectory_compute(const SequenceSpec& base, const std::optional<SequenceSpec>& gadget,
                              const std::vector<NamedFormula>& formulas, const std::vector<std::size_t>& indices,
                              const TrajectoryOptions& options) {
  validate(base);
  if (gadget) validate(*gadget);
  for (std::size_t i = 1; i < indices.size(); ++i)
    if (indices[i] <= indices[i - 1]) throw Error(ErrorCode::invalid_argument, "indices must be strictly increasing");
  if (options.mode == PairingMode::sampled && options.samples == 0)
    throw Error(ErrorCode::invalid_argument, "sampled mode needs samples > 0");
  std::vector<std::vector<TrajectoryRow>> per_index(indices.size());
  std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, indices.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i; (i = next++) < indices.size();) {
      try {
        per_index[i] = rows_at(base, gadget, formulas, indices[i], options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  Trajectory out;
  for (auto& rows : per_index)
    for (auto& r : rows) out.rows.push_back(std::move(r));
  return out;
}

std::string trajectory_csv(const Trajectory& t) {
  std::ostringstream out;
  out << "n,formula_id,value_num,value_den,exact,samples\n";
  for (const auto& r : t.rows) {
    out << r.n << ',' << r.formula_id << ',';
    if (r.value)
      out << numerator_string(*r.value) << ',' << denominator_string(*r.value);
    else
      out << "NA,NA";
    out << ',' << (r.exact ? 1 : 0) << ',' << r.samples << '\n';
  }
  return out.str();
}

const char* to_string(ConvergenceVerdict v) noexcept {
  switch (v) {
    case ConvergenceVerdict::stable: return "stable";
    case ConvergenceVerdict::fluctuating: return "fluctuating";
    case ConvergenceVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

ConvergenceReport convergence_verdict(const Trajectory& t, std::size_t window, double tol) {
  if (window == 0) throw Error(ErrorCode::invalid_argument, "window must be positive");
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<std::size_t, double>>> series;
  for (const auto& r : t.rows) {
    if (!series.count(r.formula_id)) order.push_back(r.formula_id);
    auto& s = series[r.formula_id];
    if (r.value) s.emplace_back(r.n, to_double(*r.value));
  }
  ConvergenceReport report;
  for (const auto& id : order) {
    const auto& s = series[id];
    if (window > s.size())
      throw Error(ErrorCode::invalid_argument, "window " + std::to_string(window) + " exceeds the " +
                                                   std::to_string(s.size()) + " valued rows of " + id);
    FormulaReport fr;
    fr.formula_id = id;
    fr.window = window;
    double lo = INFINITY, hi = -INFINITY, odd = 0, even = 0;
    std::size_t odd_count = 0, even_count = 0;
    for (std::size_t i = s.size() - window; i < s.size(); ++i) {
      auto [n, v] = s[i];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      if (n % 2 == 1) {
        odd += v;
        ++odd_count;
      } else {
        even += v;
        ++even_count;
      }
    }
    fr.oscillation = hi - lo;
    fr.odd_mean = odd_count ? odd / static_cast<double>(odd_count) : 0.0;
    fr.even_mean = even_count ? even / static_cast<double>(even_count) : 0.0;
    if (fr.oscillation <= tol)
      fr.verdict = ConvergenceVerdict::stable;
    else if (odd_count && even_count && std::fabs(fr.odd_mean - fr.even_mean) > 2 * tol)
      fr.verdict = ConvergenceVerdict::fluctuating;
    else
      fr.verdict = ConvergenceVerdict::inconclusive;
    report.formulas.push_back(fr);
  }
  return report;
}

}  // namespace gadgetlab
