#include "driver.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "gadgetlab/corpus.hpp"
#include "gadgetlab/diagnostics.hpp"
#include "gadgetlab/error.hpp"
#include "gadgetlab/formula.hpp"
#include "gadgetlab/rational.hpp"
#include "gadgetlab/stone_pairing.hpp"
#include "gadgetlab/text_format.hpp"
#include "gadgetlab/theorem_checks.hpp"
#include "gadgetlab/trajectory.hpp"

namespace gadgetlab::driver {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorCode::invalid_argument, message); }

const std::map<std::string, std::set<std::string>>& task_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"construct",
       {"kind", "name", "base", "gadget", "r_symbol", "lifted", "restricted_rho", "undirected", "output",
        "provenance"}},
      {"ef", {"kind", "name", "left", "right", "k", "rank", "budget", "output"}},
      {"pairing",
       {"kind", "name", "structure", "formula", "formula_file", "free", "mode", "samples", "seed",
        "tuple_budget", "output"}},
      {"trajectory",
       {"kind", "name", "base", "gadget", "formulas", "indices", "mode", "samples", "seed", "tuple_budget",
        "r_symbol", "window", "tolerance", "output", "report"}},
      {"verify",
       {"kind", "name", "theorem", "k", "corpus", "instances", "budget", "assume_premises", "output"}},
      {"diagnostics", {"kind", "name", "gadget", "indices", "radii", "threshold", "output"}},
  };
  return keys;
}

const std::set<std::string> sequence_keys = {"family", "params", "options", "seed", "role", "of"};
const std::set<std::string> instance_keys = {"label", "a1", "a2", "g1", "g2", "sigma", "r_symbol"};
const std::set<std::string> formula_keys = {"id", "text", "free"};

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) fail(where + ": expected an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) fail(where + ": unknown key \"" + key + "\"");
}

void require(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) fail(where + ": missing key \"" + key + "\"");
}

std::string get_string(const json& j, const std::string& key, const std::string& where,
                       const std::optional<std::string>& fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    fail(where + ": missing key \"" + key + "\"");
  }
  if (!j.at(key).is_string()) fail(where + ": \"" + key + "\" must be a string");
  return j.at(key).get<std::string>();
}

std::uint64_t get_uint(const json& j, const std::string& key, const std::string& where,
                       const std::optional<std::uint64_t>& fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    fail(where + ": missing key \"" + key + "\"");
  }
  const json& v = j.at(key);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    fail(where + ": \"" + key + "\" must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

bool get_bool(const json& j, const std::string& key, const std::string& where, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) fail(where + ": \"" + key + "\" must be a boolean");
  return j.at(key).get<bool>();
}

double get_double(const json& j, const std::string& key, const std::string& where, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) fail(where + ": \"" + key + "\" must be a number");
  return j.at(key).get<double>();
}

std::vector<std::string> get_strings(const json& j, const std::string& key, const std::string& where) {
  if (!j.at(key).is_array()) fail(where + ": \"" + key + "\" must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_string()) fail(where + ": \"" + key + "\" must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::vector<std::size_t> get_indices(const json& j, const std::string& key, const std::string& where) {
  require(j, key, where);
  const json& v = j.at(key);
  std::vector<std::size_t> out;
  if (v.is_object()) {
    check_keys(v, {"from", "to"}, where + "." + key);
    auto from = get_uint(v, "from", where + "." + key);
    auto to = get_uint(v, "to", where + "." + key);
    if (from == 0 || to < from) fail(where + ": \"" + key + "\" needs 1 <= from <= to");
    for (auto n = from; n <= to; ++n) out.push_back(static_cast<std::size_t>(n));
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (!x.is_number_integer() || x.get<std::int64_t>() < 0) fail(where + ": \"" + key + "\" entries must be nonnegative integers");
      out.push_back(x.get<std::size_t>());
    }
  } else {
    fail(where + ": \"" + key + "\" must be {from, to} or a list");
  }
  if (out.empty()) fail(where + ": \"" + key + "\" is empty");
  return out;
}

fs::path resolve(const fs::path& base_dir, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base_dir / path;
}

void require_file(const json& j, const std::string& key, const std::string& where, const fs::path& base_dir) {
  auto p = resolve(base_dir, get_string(j, key, where));
  if (!fs::is_regular_file(p)) throw Error(ErrorCode::io_error, where + ": no such file " + p.string());
}

bool is_random_family(const std::string& family) { return family.rfind("random-", 0) == 0; }

Structure read_structure(const fs::path& base_dir, const std::string& p) {
  return read_structure_file(resolve(base_dir, p).string());
}

Gadget read_gadget(const fs::path& base_dir, const std::string& p) {
  return Gadget::from_structure(read_structure(base_dir, p));
}

double round12(double x) { return std::stod(format_double(x)); }

json rational_json(const Rational& q) {
  return {{"num", numerator_string(q)}, {"den", denominator_string(q)}, {"value", round12(to_double(q))}};
}

bool wants_json(const std::string& path) { return fs::path(path).extension() == ".json"; }

std::string task_name(const json& task, std::size_t index) {
  if (task.contains("name") && task.at("name").is_string()) return task.at("name").get<std::string>();
  return "task" + std::to_string(index + 1);
}

std::vector<std::string> output_keys(const std::string& kind) {
  if (kind == "construct") return {"output", "provenance"};
  if (kind == "trajectory") return {"output", "report"};
  return {"output"};
}

// Per-kind structural validation; returns the declared output paths.
std::vector<fs::path> validate_task(const json& task, const std::string& where, const fs::path& base_dir) {
  if (!task.is_object()) fail(where + ": expected an object");
  std::string kind = get_string(task, "kind", where);
  auto it = task_keys().find(kind);
  if (it == task_keys().end()) fail(where + ": unknown task kind \"" + kind + "\"");
  check_keys(task, it->second, where);
  if (task.contains("name")) get_string(task, "name", where);

  if (kind == "construct") {
    require_file(task, "base", where, base_dir);
    require_file(task, "gadget", where, base_dir);
    get_string(task, "output", where);
    get_string(task, "r_symbol", where, "R");
    get_bool(task, "lifted", where, false);
    get_bool(task, "restricted_rho", where, false);
    get_bool(task, "undirected", where, false);
  } else if (kind == "ef") {
    require_file(task, "left", where, base_dir);
    require_file(task, "right", where, base_dir);
    get_uint(task, "k", where);
    get_bool(task, "rank", where, false);
    get_uint(task, "budget", where, default_ef_budget);
  } else if (kind == "pairing") {
    require_file(task, "structure", where, base_dir);
    if (task.contains("formula") == task.contains("formula_file"))
      fail(where + ": give exactly one of \"formula\" and \"formula_file\"");
    if (task.contains("formula_file")) require_file(task, "formula_file", where, base_dir);
    else get_string(task, "formula", where);
    if (task.contains("free")) get_strings(task, "free", where);
    std::string mode = get_string(task, "mode", where, "exact");
    if (mode != "exact" && mode != "sampled") fail(where + ": mode must be exact or sampled");
    if (mode == "sampled") {
      get_uint(task, "seed", where);
      get_uint(task, "samples", where);
    } else if (task.contains("seed") || task.contains("samples")) {
      fail(where + ": \"seed\" and \"samples\" only apply to sampled mode");
    }
    get_uint(task, "tuple_budget", where, PairingOptions{}.tuple_budget);
  } else if (kind == "trajectory") {
    require(task, "base", where);
    auto base = parse_sequence_spec(task.at("base"));
    if (task.contains("gadget")) parse_sequence_spec(task.at("gadget"));
    require(task, "formulas", where);
    const json& formulas = task.at("formulas");
    if (!formulas.is_array() || formulas.empty()) fail(where + ": \"formulas\" must be a nonempty array");
    std::set<std::string> ids;
    for (const auto& f : formulas) {
      check_keys(f, formula_keys, where + ".formulas");
      if (!ids.insert(get_string(f, "id", where + ".formulas")).second)
        fail(where + ": duplicate formula id " + f.at("id").get<std::string>());
      get_string(f, "text", where + ".formulas");
      if (f.contains("free")) get_strings(f, "free", where + ".formulas");
    }
    get_indices(task, "indices", where);
    std::string mode = get_string(task, "mode", where, "exact");
    if (mode != "exact" && mode != "sampled") fail(where + ": mode must be exact or sampled");
    if (mode == "sampled") get_uint(task, "seed", where);
    get_uint(task, "samples", where, TrajectoryOptions{}.samples);
    get_uint(task, "tuple_budget", where, TrajectoryOptions{}.tuple_budget);
    get_string(task, "r_symbol", where, "R");
    get_uint(task, "window", where, default_window);
    get_double(task, "tolerance", where, default_tolerance);
    get_string(task, "output", where);
    (void)base;
  } else if (kind == "verify") {
    std::string theorem = get_string(task, "theorem", where);
    if (theorem != "continuity" && theorem != "fragmentation")
      fail(where + ": theorem must be continuity or fragmentation");
    get_uint(task, "k", where);
    get_uint(task, "budget", where, default_ef_budget);
    get_bool(task, "assume_premises", where, false);
    std::string corpus = get_string(task, "corpus", where, task.contains("instances") ? "file" : "builtin");
    if (corpus != "builtin" && corpus != "file") fail(where + ": corpus must be builtin or file");
    if ((corpus == "file") != task.contains("instances"))
      fail(where + ": \"instances\" is required exactly when corpus is file");
    if (task.contains("instances")) {
      const json& instances = task.at("instances");
      if (!instances.is_array()) fail(where + ": \"instances\" must be an array");
      for (const auto& inst : instances) {
        std::string w = where + ".instances";
        check_keys(inst, instance_keys, w);
        get_string(inst, "label", w);
        for (const char* k : {"a1", "a2", "g1", "g2"}) require_file(inst, k, w, base_dir);
        get_string(inst, "r_symbol", w, "R");
        if (theorem == "fragmentation") require(inst, "sigma", w);
        else if (inst.contains("sigma")) fail(w + ": \"sigma\" only applies to fragmentation");
      }
    }
    get_string(task, "output", where);
  } else if (kind == "diagnostics") {
    require(task, "gadget", where);
    parse_sequence_spec(task.at("gadget"));
    get_indices(task, "indices", where);
    get_indices(task, "radii", where);
    get_uint(task, "threshold", where);
    get_string(task, "output", where);
  }

  std::vector<fs::path> outputs;
  for (const auto& key : output_keys(kind))
    if (task.contains(key)) outputs.push_back(resolve(base_dir, get_string(task, key, where)));
  if (kind == "construct" && !task.contains("provenance"))
    outputs.push_back(resolve(base_dir, get_string(task, "output", where) + ".prov"));
  return outputs;
}

SigmaEquivalence parse_sigma(const json& j, std::size_t arity, const std::string& where) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "discrete") return SigmaEquivalence::discrete(arity);
    if (s == "full") return SigmaEquivalence::full(arity);
    fail(where + ": sigma must be discrete, full or a list of classes");
  }
  if (!j.is_array()) fail(where + ": sigma must be discrete, full or a list of classes");
  std::vector<std::vector<std::size_t>> classes;
  for (const auto& cls : j) {
    if (!cls.is_array()) fail(where + ": sigma classes must be arrays of 1-based root indices");
    std::vector<std::size_t> c;
    for (const auto& i : cls) {
      if (!i.is_number_integer() || i.get<std::int64_t>() <= 0)
        fail(where + ": sigma classes must be arrays of 1-based root indices");
      c.push_back(i.get<std::size_t>() - 1);
    }
    classes.push_back(std::move(c));
  }
  return SigmaEquivalence(arity, std::move(classes));
}

std::size_t r_arity(const Structure& a, const std::string& r_symbol) {
  return a.language().relations()[a.language().require_relation(r_symbol)].arity;
}

Formula parse_task_formula(const std::string& text, const json& holder, const std::string& where) {
  std::optional<std::vector<std::string>> free;
  if (holder.contains("free")) free = get_strings(holder, "free", where);
  return parse_formula(text, free);
}

std::string run_construct(const json& task, const fs::path& base_dir) {
  const std::string where = "construct";
  auto base = read_structure(base_dir, get_string(task, "base", where));
  auto gadget = read_gadget(base_dir, get_string(task, "gadget", where));
  ConstructionOptions options;
  options.lifted = get_bool(task, "lifted", where, false);
  options.restricted_rho = get_bool(task, "restricted_rho", where, false);
  options.undirected = get_bool(task, "undirected", where, false);
  auto c = gadget_construct(base, get_string(task, "r_symbol", where, "R"), gadget, options);
  std::string out = get_string(task, "output", where);
  std::string prov = get_string(task, "provenance", where, out + ".prov");
  write_structure_file(resolve(base_dir, out).string(), c.result);
  write_file_atomic(resolve(base_dir, prov).string(), format_provenance(c));
  return "vertices=" + std::to_string(c.result.size()) + " copies=" + std::to_string(c.edges[0].size());
}

TaskResult run_ef(const json& task, const fs::path& base_dir) {
  const std::string where = "ef";
  TaskResult result;
  auto left = read_structure(base_dir, get_string(task, "left", where));
  auto right = read_structure(base_dir, get_string(task, "right", where));
  auto k = static_cast<std::size_t>(get_uint(task, "k", where));
  auto budget = get_uint(task, "budget", where, default_ef_budget);
  json report = {{"k", k}, {"budget", budget}};
  if (get_bool(task, "rank", where, false)) {
    EquivalenceRank r{};
    try {
      r = equivalence_rank(left, right, k, budget);
    } catch (const BudgetExceeded&) {
      r.rank = -1;
      r.truncated = true;
    }
    report["rank"] = r.rank;
    report["truncated"] = r.truncated;
    if (r.rank >= static_cast<int>(k)) result.verdict = Verdict::equivalent;
    else if (r.truncated) result.verdict = Verdict::budget_exceeded;
    else result.verdict = Verdict::not_equivalent;
    report["method"] = "game";
  } else {
    auto cert = certify_equivalent(left, right, k, budget);
    result.verdict = cert.verdict;
    report["method"] = to_string(cert.method);
  }
  report["verdict"] = to_string(*result.verdict);
  result.message = std::string(to_string(*result.verdict)) + " k=" + std::to_string(k);
  if (report.contains("rank")) {
    result.message += " rank=" + std::to_string(report["rank"].get<int>());
    if (report["truncated"].get<bool>()) result.message += " truncated";
  }
  if (task.contains("output"))
    write_file_atomic(resolve(base_dir, get_string(task, "output", where)).string(), dump(report));
  return result;
}

std::string run_pairing(const json& task, const fs::path& base_dir) {
  const std::string where = "pairing";
  auto s = read_structure(base_dir, get_string(task, "structure", where));
  std::string text = task.contains("formula")
                         ? get_string(task, "formula", where)
                         : read_file(resolve(base_dir, get_string(task, "formula_file", where)).string());
  auto f = parse_task_formula(text, task, where);
  json report = {{"free", f.free_variables()}, {"formula", to_string(f)}};
  std::string summary;
  if (get_string(task, "mode", where, "exact") == "sampled") {
    auto sp = stone_pairing_sampled(s, f, get_uint(task, "samples", where), get_uint(task, "seed", where));
    report["mode"] = "sampled";
    report["value"] = rational_json(sp.estimate);
    report["samples"] = sp.samples;
    report["halfwidth"] = round12(sp.halfwidth);
    summary = to_string(sp.estimate) + " +- " + format_double(sp.halfwidth);
  } else {
    PairingOptions options;
    options.tuple_budget = get_uint(task, "tuple_budget", where, options.tuple_budget);
    auto value = stone_pairing_exact(s, f, options);
    report["mode"] = "exact";
    report["value"] = rational_json(value);
    summary = to_string(value);
  }
  if (task.contains("output"))
    write_file_atomic(resolve(base_dir, get_string(task, "output", where)).string(), dump(report));
  return summary;
}

std::string convergence_text(const ConvergenceReport& report) {
  std::ostringstream out;
  for (const auto& f : report.formulas) {
    out << f.formula_id << ".verdict: " << to_string(f.verdict) << '\n';
    out << f.formula_id << ".window: " << f.window << '\n';
    out << f.formula_id << ".oscillation: " << format_double(f.oscillation) << '\n';
    out << f.formula_id << ".odd_mean: " << format_double(f.odd_mean) << '\n';
    out << f.formula_id << ".even_mean: " << format_double(f.even_mean) << '\n';
  }
  return out.str();
}

json convergence_json(const ConvergenceReport& report) {
  json formulas = json::object();
  for (const auto& f : report.formulas)
    formulas[f.formula_id] = {{"verdict", to_string(f.verdict)},
                              {"window", f.window},
                              {"oscillation", round12(f.oscillation)},
                              {"odd_mean", round12(f.odd_mean)},
                              {"even_mean", round12(f.even_mean)}};
  return {{"formulas", formulas}};
}

std::string run_trajectory(const json& task, const fs::path& base_dir) {
  const std::string where = "trajectory";
  auto base = parse_sequence_spec(task.at("base"));
  std::optional<SequenceSpec> gadget;
  if (task.contains("gadget")) gadget = parse_sequence_spec(task.at("gadget"));
  std::vector<NamedFormula> formulas;
  for (const auto& f : task.at("formulas"))
    formulas.push_back({f.at("id").get<std::string>(),
                        parse_task_formula(f.at("text").get<std::string>(), f, where)});
  TrajectoryOptions options;
  options.mode = get_string(task, "mode", where, "exact") == "sampled" ? PairingMode::sampled : PairingMode::exact;
  options.samples = get_uint(task, "samples", where, options.samples);
  options.seed = get_uint(task, "seed", where, 0);
  options.tuple_budget = get_uint(task, "tuple_budget", where, options.tuple_budget);
  options.r_symbol = get_string(task, "r_symbol", where, "R");
  auto indices = get_indices(task, "indices", where);
  auto t = trajectory_compute(base, gadget, formulas, indices, options);
  auto report = convergence_verdict(t, get_uint(task, "window", where, default_window),
                                    get_double(task, "tolerance", where, default_tolerance));
  write_file_atomic(resolve(base_dir, get_string(task, "output", where)).string(), trajectory_csv(t));
  if (task.contains("report")) {
    std::string path = get_string(task, "report", where);
    write_file_atomic(resolve(base_dir, path).string(),
                      wants_json(path) ? dump(convergence_json(report)) : convergence_text(report));
  }
  std::string summary;
  for (const auto& f : report.formulas) {
    if (!summary.empty()) summary += ' ';
    summary += f.formula_id + "=" + to_string(f.verdict);
  }
  return summary;
}

json check_json(const CheckReport& report) {
  json instances = json::array();
  for (const auto& i : report.instances)
    instances.push_back({{"label", i.label}, {"status", to_string(i.status)}, {"detail", i.detail}});
  return {{"pass", report.pass}, {"fail", report.fail}, {"skip", report.skip}, {"instances", instances}};
}

TaskResult run_verify(const json& task, const fs::path& base_dir) {
  const std::string where = "verify";
  TaskResult result;
  std::string theorem = get_string(task, "theorem", where);
  auto k = static_cast<std::size_t>(get_uint(task, "k", where));
  CheckOptions options;
  options.budget = get_uint(task, "budget", where, default_ef_budget);
  options.assume_premises = get_bool(task, "assume_premises", where, false);
  bool from_file = task.contains("instances");
  CheckReport report;
  if (theorem == "continuity") {
    std::vector<ContinuityInstance> corpus;
    if (from_file) {
      for (const auto& inst : task.at("instances")) {
        ContinuityInstance c;
        c.label = inst.at("label").get<std::string>();
        c.a1 = read_structure(base_dir, inst.at("a1").get<std::string>());
        c.a2 = read_structure(base_dir, inst.at("a2").get<std::string>());
        c.g1 = read_gadget(base_dir, inst.at("g1").get<std::string>());
        c.g2 = read_gadget(base_dir, inst.at("g2").get<std::string>());
        c.r_symbol = get_string(inst, "r_symbol", where, "R");
        corpus.push_back(std::move(c));
      }
    } else {
      corpus = continuity_corpus(k);
    }
    report = verify_continuity_bound(corpus, k, options);
  } else {
    std::vector<FragmentationInstance> corpus;
    if (from_file) {
      for (const auto& inst : task.at("instances")) {
        FragmentationInstance c;
        c.label = inst.at("label").get<std::string>();
        c.a1 = read_structure(base_dir, inst.at("a1").get<std::string>());
        c.a2 = read_structure(base_dir, inst.at("a2").get<std::string>());
        c.g1 = read_gadget(base_dir, inst.at("g1").get<std::string>());
        c.g2 = read_gadget(base_dir, inst.at("g2").get<std::string>());
        c.r_symbol = get_string(inst, "r_symbol", where, "R");
        c.sigma = parse_sigma(inst.at("sigma"), r_arity(c.a1, c.r_symbol), where + ".instances");
        corpus.push_back(std::move(c));
      }
    } else {
      corpus = fragmentation_corpus();
    }
    report = verify_fragmentation_bound(corpus, k, options);
  }
  std::string path = get_string(task, "output", where);
  write_file_atomic(resolve(base_dir, path).string(),
                    wants_json(path) ? dump(check_json(report)) : format_report(report));
  result.message = "pass=" + std::to_string(report.pass) + " fail=" + std::to_string(report.fail) +
                   " skip=" + std::to_string(report.skip);
  if (report.fail > 0) result.status = TaskStatus::check_failed;
  return result;
}

json mass_json(const MassRow& row) {
  return {{"n", row.n}, {"r", row.r}, {"mass", rational_json(row.mass)}};
}

json diagnostics_json(const DiagnosticsReport& report) {
  json root_masses = json::array();
  for (const auto& row : report.root_masses) root_masses.push_back(mass_json(row));
  json tips = json::array();
  for (const auto& tip : report.tips) {
    json masses = json::array();
    for (const auto& row : tip.masses) masses.push_back(mass_json(row));
    std::vector<std::size_t> roots;
    for (auto r : tip.roots) roots.push_back(r + 1);
    tips.push_back({{"roots", roots}, {"masses", masses}, {"classification", to_string(tip.classification)}});
  }
  json distances = json::array();
  for (std::size_t i = 0; i < report.sigma.pairs.size(); ++i) {
    json traj = json::array();
    for (const auto& d : report.sigma.trajectories[i]) traj.push_back(d ? json(*d) : json(nullptr));
    distances.push_back(
        {{"pair", {report.sigma.pairs[i].first + 1, report.sigma.pairs[i].second + 1}}, {"distances", traj}});
  }
  return {{"indices", report.indices},
          {"radii", report.radii},
          {"root_masses", root_masses},
          {"sigma", report.sigma.sigma.to_string()},
          {"root_distances", distances},
          {"tips", tips}};
}

std::string run_diagnostics(const json& task, const fs::path& base_dir) {
  const std::string where = "diagnostics";
  auto gadget = parse_sequence_spec(task.at("gadget"));
  auto report = sequence_diagnostics(gadget, get_indices(task, "indices", where), get_indices(task, "radii", where),
                                     static_cast<std::size_t>(get_uint(task, "threshold", where)));
  std::string path = get_string(task, "output", where);
  write_file_atomic(resolve(base_dir, path).string(),
                    wants_json(path) ? dump(diagnostics_json(report)) : format_report(report));
  std::string summary = "sigma=" + report.sigma.sigma.to_string();
  for (const auto& tip : report.tips) summary += std::string(" ") + to_string(tip.classification);
  return summary;
}

}  // namespace

std::size_t workers_from_env() {
  const char* raw = std::getenv("GADGETLAB_WORKERS");
  if (!raw || !*raw) return 1;
  char* end = nullptr;
  unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0) throw Error(ErrorCode::invalid_argument, "GADGETLAB_WORKERS must be a positive integer");
  return static_cast<std::size_t>(v);
}

std::string error_line(const std::exception& e) {
  std::string code = "invalid_argument";
  if (const auto* err = dynamic_cast<const Error*>(&e)) code = std::string(to_string(err->code()));
  else if (dynamic_cast<const json::exception*>(&e)) code = "parse_error";
  else if (dynamic_cast<const fs::filesystem_error*>(&e)) code = "io_error";
  std::string message = e.what();
  std::replace(message.begin(), message.end(), '\n', ' ');
  return "error: " + code + ": " + message;
}

SequenceSpec parse_sequence_spec(const json& j) {
  const std::string where = "sequence";
  check_keys(j, sequence_keys, where);
  SequenceSpec spec;
  spec.family = get_string(j, "family", where);
  if (j.contains("params")) {
    check_keys(j.at("params"), {"k", "l", "p", "q", "leaves"}, where + ".params");
    for (const auto& [key, value] : j.at("params").items()) {
      if (!value.is_number()) fail(where + ".params: \"" + key + "\" must be a number");
      spec.params[key] = value.get<double>();
    }
  }
  if (j.contains("options")) {
    check_keys(j.at("options"), {"mark", "root_mode", "symmetric", "transform"}, where + ".options");
    for (const auto& [key, value] : j.at("options").items()) {
      if (!value.is_string()) fail(where + ".options: \"" + key + "\" must be a string");
      spec.options[key] = value.get<std::string>();
    }
  }
  if (j.contains("seed")) spec.seed = get_uint(j, "seed", where);
  else if (is_random_family(spec.family)) fail(where + ": family " + spec.family + " needs an explicit seed");
  if (j.contains("role")) spec.role = role_from_string(get_string(j, "role", where));
  if (j.contains("of")) spec.of = std::make_shared<const SequenceSpec>(parse_sequence_spec(j.at("of")));
  validate(spec);
  return spec;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string format_provenance(const ConstructedStructure& c) {
  std::ostringstream out;
  for (Vertex v = 0; v < c.result.size(); ++v) {
    if (c.is_internal(v)) {
      out << v << " internal\n";
    } else {
      const auto& o = c.origin(v);
      out << v << " external " << o.slot << ' ' << o.edge << ' ' << o.gadget_vertex << '\n';
    }
  }
  return out.str();
}

void validate_config(const json& config, const fs::path& base_dir) {
  check_keys(config, {"tasks"}, "config");
  require(config, "tasks", "config");
  if (!config.at("tasks").is_array()) fail("config: \"tasks\" must be an array");
  std::map<std::string, std::string> claimed;
  std::set<std::string> names;
  const auto& tasks = config.at("tasks");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    std::string name = task_name(tasks[i], i);
    std::string where = "tasks[" + std::to_string(i) + "]";
    if (!names.insert(name).second) fail(where + ": duplicate task name " + name);
    for (const auto& out : validate_task(tasks[i], where, base_dir)) {
      auto key = fs::weakly_canonical(out).string();
      auto [it, inserted] = claimed.emplace(key, name);
      if (!inserted) fail(where + ": output " + out.string() + " already written by " + it->second);
    }
  }
}

TaskResult run_task(const json& task, const fs::path& base_dir) {
  TaskResult result;
  try {
    result.kind = task.at("kind").get<std::string>();
    if (result.kind == "ef") {
      result = run_ef(task, base_dir);
      result.kind = "ef";
    } else if (result.kind == "verify") {
      result = run_verify(task, base_dir);
      result.kind = "verify";
    } else if (result.kind == "construct") {
      result.message = run_construct(task, base_dir);
    } else if (result.kind == "pairing") {
      result.message = run_pairing(task, base_dir);
    } else if (result.kind == "trajectory") {
      result.message = run_trajectory(task, base_dir);
    } else if (result.kind == "diagnostics") {
      result.message = run_diagnostics(task, base_dir);
    } else {
      fail("unknown task kind " + result.kind);
    }
  } catch (const std::exception& e) {
    result.status = TaskStatus::error;
    result.message = error_line(e);
  }
  return result;
}

int RunResult::exit_code() const {
  int code = exit_ok;
  for (const auto& t : tasks) {
    if (t.status == TaskStatus::error) return exit_error;
    if (t.status == TaskStatus::check_failed) code = exit_negative;
  }
  return code;
}

RunResult run_config(const json& config, const fs::path& base_dir, std::size_t workers) {
  validate_config(config, base_dir);
  const auto& tasks = config.at("tasks");
  RunResult out;
  out.tasks.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      out.tasks[i] = run_task(tasks[i], base_dir);
      out.tasks[i].name = task_name(tasks[i], i);
    }
  };
  std::size_t threads = std::max<std::size_t>(1, std::min(workers, tasks.size()));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return out;
}

RunResult run_config_file(const fs::path& path, std::size_t workers) {
  json config;
  try {
    config = json::parse(read_file(path.string()));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse_error, path.string() + ": " + e.what());
  }
  return run_config(config, path.parent_path(), workers);
}

}  // namespace gadgetlab::driver
