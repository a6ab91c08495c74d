#pragma once

#include <cstddef>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gadgetlab/ef_solver.hpp"
#include "gadgetlab/gadget.hpp"
#include "gadgetlab/sequences.hpp"

namespace gadgetlab::driver {

using json = nlohmann::json;

inline constexpr int exit_ok = 0;
inline constexpr int exit_negative = 1;
inline constexpr int exit_budget = 2;
inline constexpr int exit_error = 3;

/// Task concurrency cap from GADGETLAB_WORKERS (default 1).
std::size_t workers_from_env();

/// "error: <code>: <message>" on one line.
std::string error_line(const std::exception& e);

/// Reads a sequence block {family, params, options, seed, role, of}. Random
/// families must carry an explicit seed.
SequenceSpec parse_sequence_spec(const json& j);

/// Sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

/// One line per result vertex: "v internal" or "v external slot edge gv".
std::string format_provenance(const ConstructedStructure& c);

enum class TaskStatus { ok, check_failed, error };

struct TaskResult {
  std::string name;
  std::string kind;
  TaskStatus status = TaskStatus::ok;
  /// One-line summary, or the error line.
  std::string message;
  /// Set for ef tasks.
  std::optional<Verdict> verdict;
};

/// Throws invalid_argument on unknown keys, wrong types, missing inputs,
/// implicit seeds or clashing output paths. Relative paths resolve against
/// `base_dir`.
void validate_config(const json& config, const std::filesystem::path& base_dir);

/// Runs one validated task block; never throws.
TaskResult run_task(const json& task, const std::filesystem::path& base_dir);

struct RunResult {
  std::vector<TaskResult> tasks;
  /// 0 when every task succeeded, 1 when a check failed, 3 on any error.
  int exit_code() const;
};

/// Validates, then runs the tasks on up to `workers` threads. Results keep
/// config order.
RunResult run_config(const json& config, const std::filesystem::path& base_dir, std::size_t workers);
RunResult run_config_file(const std::filesystem::path& path, std::size_t workers);

}  // namespace gadgetlab::driver
