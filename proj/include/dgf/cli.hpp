#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dgf/schedule.hpp"
#include "dgf/simplex.hpp"

namespace dgf::cli {

/// Initial self-weights: an explicit state or a seeded random interior point.
struct InitialSpec {
  bool random = true;
  Eigen::VectorXd explicit_values;
  std::uint64_t seed = 0;
};

struct ScheduleSpec {
  ScheduleKind kind = ScheduleKind::Constant;
  std::string constant_id;
  std::vector<std::string> periodic_ids;
  std::vector<std::string> sequence;
  std::vector<std::string> pool;
  std::uint64_t seed = 0;
  bool democratic_mode = false;
};

/// Parsed scenario file. Strict schema: unknown keys are rejected.
struct ScenarioConfig {
  std::filesystem::path config_dir;  // relative catalog paths resolve here
  std::vector<std::filesystem::path> catalog_paths;
  ScheduleSpec schedule;
  InitialSpec initial;
  int num_issues = 0;
  std::map<std::string, double> tolerances;
  std::filesystem::path outputs = "out";
};

ScenarioConfig load_scenario_config(const std::filesystem::path& path);

/// Command-line overrides applied on top of the config.
struct Overrides {
  std::optional<std::uint64_t> seed;  // replaces the initial-state seed
  std::optional<int> issues;
  std::optional<double> tol;  // the command's primary tolerance
  std::optional<std::filesystem::path> out;
};

struct ResolvedScenario {
  Schedule schedule;
  SimplexVector initial;
  int num_issues;
  std::map<std::string, double> tolerances;  // defaults merged in
  std::filesystem::path outputs;
  std::uint64_t initial_seed;
};

/// Loads catalogs, builds the schedule, resolves the initial state and
/// merges tolerance defaults. All config violations surface here, before
/// any computation.
ResolvedScenario resolve_scenario(const ScenarioConfig& config, const Overrides& overrides);

/// Named tolerances understood in scenario files, with their defaults.
const std::map<std::string, double>& default_tolerances();

/// Validation reports for matrix files, as a JSON array on `out`.
/// Returns 0 when every matrix is admissible for the dynamics, 1 otherwise.
int cmd_validate(const std::vector<std::filesystem::path>& files, std::ostream& out);

/// Runs the scheduled simulation; writes trajectory.csv and summary.json
/// into the output directory. Returns 1 when an armed democratic-limit
/// check fails, else 0.
int cmd_simulate(const std::filesystem::path& config_path, const Overrides& overrides,
                 std::ostream& diag);

/// Fixed point of the cycle map starting at `phase`; prints the orbit
/// report (all phase states) as JSON and writes orbit.json. Returns 1 on
/// non-convergence.
int cmd_fixed_point(const std::filesystem::path& config_path, int phase,
                    const Overrides& overrides, std::ostream& out);

/// Runs the full property suite against the configured catalog and
/// schedule; prints aggregated check results as JSON (also written to
/// verify.json). Returns 0 iff every check passed.
int cmd_verify(const std::filesystem::path& config_path, const Overrides& overrides,
               std::ostream& out);

}  // namespace dgf::cli
