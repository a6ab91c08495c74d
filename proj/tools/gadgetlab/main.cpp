#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "driver.hpp"
#include "gadgetlab/error.hpp"
#include "gadgetlab/stone_pairing.hpp"
#include "gadgetlab/text_format.hpp"
#include "gadgetlab/trajectory.hpp"

namespace {

using gadgetlab::driver::json;
namespace drv = gadgetlab::driver;

json parse_inline(const std::string& text, const std::string& flag) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw gadgetlab::Error(gadgetlab::ErrorCode::parse_error, flag + ": " + e.what());
  }
}

// Runs a single task block built from flags through the config path.
int run_single(const json& task) {
  auto base_dir = std::filesystem::current_path();
  drv::validate_config(json{{"tasks", json::array({task})}}, base_dir);
  auto result = drv::run_task(task, base_dir);
  if (result.status == drv::TaskStatus::error) {
    std::cerr << result.message << '\n';
    return drv::exit_error;
  }
  std::cout << result.message << '\n';
  if (result.verdict) {
    switch (*result.verdict) {
      case gadgetlab::Verdict::equivalent: return drv::exit_ok;
      case gadgetlab::Verdict::not_equivalent: return drv::exit_negative;
      case gadgetlab::Verdict::budget_exceeded: return drv::exit_budget;
    }
  }
  return result.status == drv::TaskStatus::check_failed ? drv::exit_negative : drv::exit_ok;
}

json indices_json(std::size_t from, std::size_t to) { return {{"from", from}, {"to", to}}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gadgetlab: gadget constructions and convergence experiments on finite structures"};
  app.require_subcommand(1);

  json task;

  auto* construct = app.add_subcommand("construct", "Replace every R-edge of a base by a gadget copy");
  std::string base, gadget, out, provenance, r_symbol = "R";
  bool lifted = false, restricted_rho = false, undirected = false;
  construct->add_option("--base", base, "Base structure file")->required();
  construct->add_option("--gadget", gadget, "Gadget structure file with roots z1..zr")->required();
  construct->add_option("--out", out, "Result structure file")->required();
  construct->add_option("--provenance", provenance, "Provenance sidecar (default <out>.prov)");
  construct->add_option("--r-symbol", r_symbol, "Replaced relation symbol");
  construct->add_flag("--lifted", lifted, "Add R, Int, Ext and rho");
  construct->add_flag("--restricted-rho", restricted_rho, "rho only next to roots");
  construct->add_flag("--undirected", undirected, "Read binary R as undirected");

  auto* ef = app.add_subcommand("ef", "Decide k-round EF equivalence (exit 0 equivalent, 1 not, 2 budget)");
  std::string left, right, ef_out;
  std::size_t k = 0;
  bool rank = false;
  std::uint64_t budget = gadgetlab::default_ef_budget;
  ef->add_option("--left", left, "Left structure file")->required();
  ef->add_option("--right", right, "Right structure file")->required();
  ef->add_option("--k", k, "Rounds")->required();
  ef->add_flag("--rank", rank, "Report the largest equivalent depth up to k");
  ef->add_option("--budget", budget, "Node budget");
  ef->add_option("--out", ef_out, "JSON report");

  auto* pairing = app.add_subcommand("pairing", "Stone pairing of a formula");
  std::string structure, formula, pairing_out;
  std::vector<std::string> free;
  std::uint64_t samples = 0, seed = 0, tuple_budget = gadgetlab::PairingOptions{}.tuple_budget;
  pairing->add_option("--structure", structure, "Structure file")->required();
  pairing->add_option("--formula", formula, "Formula text")->required();
  pairing->add_option("--free", free, "Free variable order")->delimiter(',');
  auto* samples_opt = pairing->add_option("--samples", samples, "Sample count (sampled mode)");
  auto* seed_opt = pairing->add_option("--seed", seed, "Sampling seed");
  samples_opt->needs(seed_opt);
  seed_opt->needs(samples_opt);
  pairing->add_option("--tuple-budget", tuple_budget, "Exact enumeration budget");
  pairing->add_option("--out", pairing_out, "JSON report");

  auto* trajectory = app.add_subcommand("trajectory", "Stone pairings along a sequence");
  std::string base_spec, gadget_spec, mode = "exact", traj_out, report;
  std::vector<std::string> formulas;
  std::size_t from = 1, to = 1, window = gadgetlab::default_window;
  double tolerance = gadgetlab::default_tolerance;
  std::uint64_t traj_samples = gadgetlab::TrajectoryOptions{}.samples;
  trajectory->add_option("--base", base_spec, "Base sequence block (JSON)")->required();
  trajectory->add_option("--gadget", gadget_spec, "Gadget sequence block (JSON)");
  trajectory->add_option("--formula", formulas, "id=formula, repeatable")->required();
  trajectory->add_option("--from", from, "First index")->required();
  trajectory->add_option("--to", to, "Last index")->required();
  trajectory->add_option("--mode", mode, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
  trajectory->add_option("--samples", traj_samples, "Samples per row in sampled mode");
  auto* traj_seed = trajectory->add_option("--seed", seed, "Sampling seed");
  trajectory->add_option("--tuple-budget", tuple_budget, "Exact enumeration budget");
  trajectory->add_option("--window", window, "Verdict window");
  trajectory->add_option("--tolerance", tolerance, "Verdict tolerance");
  trajectory->add_option("--out", traj_out, "CSV output")->required();
  trajectory->add_option("--report", report, "Verdict report (.json for JSON)");

  auto* verify = app.add_subcommand("verify", "Check continuity or fragmentation bounds on a corpus");
  std::string theorem, instances_file, verify_out;
  bool assume_premises = false;
  verify->add_option("theorem", theorem, "continuity or fragmentation")
      ->required()
      ->check(CLI::IsMember({"continuity", "fragmentation"}));
  verify->add_option("--k", k, "Depth")->required();
  verify->add_option("--budget", budget, "Node budget per game");
  verify->add_flag("--assume-premises", assume_premises, "Skip premise certification");
  verify->add_option("--instances", instances_file, "JSON array of instances (default: builtin corpus)");
  verify->add_option("--out", verify_out, "Report (.json for JSON)")->required();

  auto* diagnostics = app.add_subcommand("diagnostics", "Root masses, sigma estimate and tip classes");
  std::string diag_spec, diag_out;
  std::vector<std::size_t> radii;
  std::size_t threshold = 0;
  diagnostics->add_option("--gadget", diag_spec, "Gadget sequence block (JSON)")->required();
  diagnostics->add_option("--from", from, "First index")->required();
  diagnostics->add_option("--to", to, "Last index")->required();
  diagnostics->add_option("--radii", radii, "Radii")->delimiter(',')->required();
  diagnostics->add_option("--threshold", threshold, "Root distance threshold for sigma")->required();
  diagnostics->add_option("--out", diag_out, "Report (.json for JSON)")->required();

  auto* run = app.add_subcommand("run", "Run every task of a config file");
  std::string config;
  run->add_option("--config", config, "Config file (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    std::cerr << "error: usage: " << message << '\n';
    return drv::exit_error;
  }

  try {
    if (construct->parsed()) {
      task = {{"kind", "construct"}, {"base", base}, {"gadget", gadget}, {"output", out},
              {"r_symbol", r_symbol}, {"lifted", lifted}, {"restricted_rho", restricted_rho},
              {"undirected", undirected}};
      if (!provenance.empty()) task["provenance"] = provenance;
    } else if (ef->parsed()) {
      task = {{"kind", "ef"}, {"left", left}, {"right", right}, {"k", k}, {"rank", rank}, {"budget", budget}};
      if (!ef_out.empty()) task["output"] = ef_out;
    } else if (pairing->parsed()) {
      task = {{"kind", "pairing"}, {"structure", structure}, {"formula", formula}};
      if (!free.empty()) task["free"] = free;
      if (*samples_opt) {
        task["mode"] = "sampled";
        task["samples"] = samples;
        task["seed"] = seed;
      } else {
        task["tuple_budget"] = tuple_budget;
      }
      if (!pairing_out.empty()) task["output"] = pairing_out;
    } else if (trajectory->parsed()) {
      json list = json::array();
      for (const auto& entry : formulas) {
        auto eq = entry.find('=');
        if (eq == std::string::npos || eq == 0)
          throw gadgetlab::Error(gadgetlab::ErrorCode::invalid_argument, "--formula expects id=text: " + entry);
        list.push_back({{"id", entry.substr(0, eq)}, {"text", entry.substr(eq + 1)}});
      }
      task = {{"kind", "trajectory"}, {"base", parse_inline(base_spec, "--base")}, {"formulas", list},
              {"indices", indices_json(from, to)}, {"mode", mode}, {"samples", traj_samples},
              {"tuple_budget", tuple_budget}, {"window", window}, {"tolerance", tolerance},
              {"output", traj_out}};
      if (!gadget_spec.empty()) task["gadget"] = parse_inline(gadget_spec, "--gadget");
      if (*traj_seed) task["seed"] = seed;
      if (!report.empty()) task["report"] = report;
    } else if (verify->parsed()) {
      task = {{"kind", "verify"}, {"theorem", theorem}, {"k", k}, {"budget", budget},
              {"assume_premises", assume_premises}, {"output", verify_out}};
      if (!instances_file.empty()) {
        task["corpus"] = "file";
        auto path = std::filesystem::absolute(instances_file);
        auto instances = parse_inline(gadgetlab::read_file(path.string()), "--instances");
        // Instance paths are relative to the instances file.
        for (auto& inst : instances)
          if (inst.is_object())
            for (const char* key : {"a1", "a2", "g1", "g2"})
              if (inst.contains(key) && inst[key].is_string())
                inst[key] = (path.parent_path() / inst[key].get<std::string>()).lexically_normal().string();
        task["instances"] = instances;
      }
    } else if (diagnostics->parsed()) {
      task = {{"kind", "diagnostics"}, {"gadget", parse_inline(diag_spec, "--gadget")},
              {"indices", indices_json(from, to)}, {"radii", radii}, {"threshold", threshold},
              {"output", diag_out}};
    } else if (run->parsed()) {
      auto result = drv::run_config_file(config, drv::workers_from_env());
      for (const auto& t : result.tasks) {
        auto& stream = t.status == drv::TaskStatus::error ? std::cerr : std::cout;
        stream << t.name << " (" << t.kind << "): " << t.message << '\n';
      }
      return result.exit_code();
    }
    return run_single(task);
  } catch (const std::exception& e) {
    std::cerr << drv::error_line(e) << '\n';
    return drv::exit_error;
  }
}
