#include "dgf/cli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "dgf/analysis.hpp"
#include "dgf/dynamics.hpp"
#include "dgf/errors.hpp"
#include "dgf/io.hpp"
#include "dgf/rng.hpp"
#include "dgf/switching.hpp"

namespace dgf::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json parse_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& err) {
    throw StructuralError(path.string() + ": " + err.what());
  }
}

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  std::initializer_list<const char*> required, const std::string& context) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) throw StructuralError(context + ": unknown key '" + key + "'");
  }
  for (const char* r : required) {
    if (!obj.contains(r)) throw StructuralError(context + ": missing key '" + std::string(r) + "'");
  }
}

std::uint64_t read_seed(const json& value, const std::string& context) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    throw StructuralError(context + ": seed must be a nonnegative integer");
  }
  return value.get<std::uint64_t>();
}

std::vector<std::string> read_id_list(const json& value, const std::string& context) {
  if (!value.is_array() || value.empty()) {
    throw StructuralError(context + ": expected a non-empty array of matrix ids");
  }
  std::vector<std::string> ids;
  for (const auto& item : value) {
    if (!item.is_string()) throw StructuralError(context + ": ids must be strings");
    ids.push_back(item.get<std::string>());
  }
  return ids;
}

ScheduleSpec parse_schedule(const json& node, const std::string& context) {
  if (!node.is_object()) throw StructuralError(context + ": schedule must be an object");
  require_keys(node, {"kind", "id", "ids", "sequence", "choose_from", "seed", "democratic_mode"},
               {"kind"}, context);
  if (!node["kind"].is_string()) throw StructuralError(context + ": schedule kind must be a string");
  const std::string kind = node["kind"].get<std::string>();

  ScheduleSpec spec;
  if (node.contains("democratic_mode")) {
    if (!node["democratic_mode"].is_boolean()) {
      throw StructuralError(context + ": democratic_mode must be a boolean");
    }
    spec.democratic_mode = node["democratic_mode"].get<bool>();
  }

  if (kind == "constant") {
    require_keys(node, {"kind", "id"}, {"kind", "id"}, context + " (constant schedule)");
    if (!node["id"].is_string()) throw StructuralError(context + ": constant id must be a string");
    spec.kind = ScheduleKind::Constant;
    spec.constant_id = node["id"].get<std::string>();
  } else if (kind == "periodic") {
    require_keys(node, {"kind", "ids"}, {"kind", "ids"}, context + " (periodic schedule)");
    spec.kind = ScheduleKind::Periodic;
    spec.periodic_ids = read_id_list(node["ids"], context);
  } else if (kind == "arbitrary") {
    spec.kind = ScheduleKind::Arbitrary;
    if (node.contains("sequence") == node.contains("choose_from")) {
      throw StructuralError(context +
                            ": arbitrary schedule needs exactly one of 'sequence' or 'choose_from'");
    }
    if (node.contains("sequence")) {
      require_keys(node, {"kind", "sequence", "democratic_mode"}, {"kind", "sequence"},
                   context + " (arbitrary schedule)");
      spec.sequence = read_id_list(node["sequence"], context);
    } else {
      require_keys(node, {"kind", "choose_from", "seed", "democratic_mode"},
                   {"kind", "choose_from", "seed"}, context + " (arbitrary schedule)");
      spec.pool = read_id_list(node["choose_from"], context);
      spec.seed = read_seed(node["seed"], context);
    }
  } else {
    throw StructuralError(context + ": unknown schedule kind '" + kind +
                          "' (expected constant, periodic, or arbitrary)");
  }
  return spec;
}

InitialSpec parse_initial(const json& node, const std::string& context) {
  InitialSpec spec;
  if (node.is_array()) {
    spec.random = false;
    spec.explicit_values.resize(static_cast<int>(node.size()));
    for (int i = 0; i < static_cast<int>(node.size()); ++i) {
      if (!node[i].is_number()) {
        throw StructuralError(context + ": initial state entries must be numbers");
      }
      spec.explicit_values(i) = node[i].get<double>();
    }
    return spec;
  }
  if (!node.is_object()) {
    throw StructuralError(context + ": initial must be an array or {kind, seed}");
  }
  require_keys(node, {"kind", "seed"}, {"kind", "seed"}, context + " (initial)");
  if (!node["kind"].is_string() || node["kind"].get<std::string>() != "random-interior") {
    throw StructuralError(context + ": initial kind must be \"random-interior\"");
  }
  spec.random = true;
  spec.seed = read_seed(node["seed"], context);
  return spec;
}

std::string bool_json(bool b) { return b ? "true" : "false"; }

double tolerance_of(const std::map<std::string, double>& tolerances, const std::string& name) {
  const auto it = tolerances.find(name);
  if (it == tolerances.end()) throw PreconditionError("unknown tolerance '" + name + "'");
  return it->second;
}

// 2*sqrt(2) / min_i c_i, composed across the cycle: the near-vertex
// Lipschitz constant of each per-issue map multiplies through the
// composition.
double composed_lipschitz_bound(const Schedule& schedule) {
  double bound = 1.0;
  for (const auto& id : schedule.cycle_ids()) {
    const SimplexVector c = dominant_left_eigenvector(schedule.catalog().at(id));
    bound *= 2.0 * std::sqrt(2.0) / c.values().minCoeff();
  }
  return bound;
}

std::string json_vector(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (int i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_sig17(v(i));
  }
  return out + "]";
}

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> defaults = {
      {"fixed_point", 1e-12}, {"orbit", 1e-9},          {"democratic", 1e-8},
      {"equivalence", 1e-10}, {"vertex", 0.0},          {"invariant_set_r", 0.05},
      {"simplex", 1e-12},     {"ordering", 1e-9},
  };
  return defaults;
}

ScenarioConfig load_scenario_config(const fs::path& path) {
  const json doc = parse_json_file(path);
  const std::string context = path.string();
  if (!doc.is_object()) throw StructuralError(context + ": expected a JSON object");
  require_keys(doc, {"catalog", "schedule", "initial", "num_issues", "tolerances", "outputs"},
               {"catalog", "schedule", "initial", "num_issues"}, context);

  ScenarioConfig config;
  config.config_dir = path.has_parent_path() ? path.parent_path() : fs::path(".");

  if (!doc["catalog"].is_array() || doc["catalog"].empty()) {
    throw StructuralError(context + ": catalog must be a non-empty array of file paths");
  }
  for (const auto& item : doc["catalog"]) {
    if (!item.is_string()) throw StructuralError(context + ": catalog entries must be strings");
    config.catalog_paths.emplace_back(item.get<std::string>());
  }

  config.schedule = parse_schedule(doc["schedule"], context);
  config.initial = parse_initial(doc["initial"], context);

  if (!doc["num_issues"].is_number_integer() || doc["num_issues"].get<int>() < 1) {
    throw StructuralError(context + ": num_issues must be a positive integer");
  }
  config.num_issues = doc["num_issues"].get<int>();

  if (doc.contains("tolerances")) {
    if (!doc["tolerances"].is_object()) {
      throw StructuralError(context + ": tolerances must be an object");
    }
    for (const auto& [key, value] : doc["tolerances"].items()) {
      if (default_tolerances().count(key) == 0) {
        throw StructuralError(context + ": unknown tolerance '" + key + "'");
      }
      if (!value.is_number()) throw StructuralError(context + ": tolerances must be numbers");
      config.tolerances[key] = value.get<double>();
    }
  }

  if (doc.contains("outputs")) {
    if (!doc["outputs"].is_string()) throw StructuralError(context + ": outputs must be a string");
    config.outputs = doc["outputs"].get<std::string>();
  }
  return config;
}

ResolvedScenario resolve_scenario(const ScenarioConfig& config, const Overrides& overrides) {
  MatrixCatalog catalog;
  for (const fs::path& p : config.catalog_paths) {
    const fs::path resolved = p.is_absolute() ? p : config.config_dir / p;
    catalog.add(load_interaction_matrix(resolved));
  }
  const int n = catalog.dimension();

  std::map<std::string, double> tolerances = default_tolerances();
  for (const auto& [key, value] : config.tolerances) tolerances[key] = value;

  const std::uint64_t initial_seed = overrides.seed.value_or(config.initial.seed);
  SimplexVector initial = [&]() -> SimplexVector {
    if (config.initial.random) {
      Rng rng(split_seed(initial_seed, 0x1417));
      return SimplexVector(rng.interior_simplex_point(n));
    }
    SimplexVector x(config.initial.explicit_values);
    if (x.is_vertex()) {
      throw PreconditionError("initial state must not be an autocratic vertex");
    }
    return x;
  }();
  if (initial.size() != n) {
    throw PreconditionError("initial state has n = " + std::to_string(initial.size()) +
                            ", catalog has n = " + std::to_string(n));
  }

  const ScheduleSpec& spec = config.schedule;
  Schedule schedule = [&]() -> Schedule {
    switch (spec.kind) {
      case ScheduleKind::Constant:
        return Schedule::constant(std::move(catalog), spec.constant_id);
      case ScheduleKind::Periodic:
        return Schedule::periodic(std::move(catalog), spec.periodic_ids);
      case ScheduleKind::Arbitrary:
        if (!spec.sequence.empty()) {
          return Schedule::arbitrary_sequence(std::move(catalog), spec.sequence,
                                              spec.democratic_mode);
        }
        return Schedule::arbitrary_random(std::move(catalog), spec.pool, spec.seed,
                                          spec.democratic_mode);
    }
    throw PreconditionError("unreachable schedule kind");
  }();

  return ResolvedScenario{std::move(schedule),
                          std::move(initial),
                          overrides.issues.value_or(config.num_issues),
                          std::move(tolerances),
                          overrides.out.value_or(config.outputs),
                          initial_seed};
}

int cmd_validate(const std::vector<fs::path>& files, std::ostream& out) {
  if (files.empty()) throw PreconditionError("no matrix files given");
  bool all_admissible = true;
  out << "[\n";
  for (std::size_t k = 0; k < files.size(); ++k) {
    const auto [entries, id] = load_raw_matrix(files[k]);
    const ValidationReport report = validate(entries);
    all_admissible = all_admissible && report.satisfies_assumption_1;
    out << "  {\"file\": \"" << files[k].string() << "\", \"id\": \"" << id
        << "\", \"n\": " << report.n
        << ", \"row_stochastic\": " << bool_json(report.row_stochastic)
        << ", \"zero_diagonal\": " << bool_json(report.zero_diagonal)
        << ", \"irreducible\": " << bool_json(report.irreducible)
        << ", \"doubly_stochastic\": " << bool_json(report.doubly_stochastic)
        << ", \"star_topology\": " << bool_json(report.star_topology)
        << ", \"satisfies_assumption_1\": " << bool_json(report.satisfies_assumption_1) << "}"
        << (k + 1 < files.size() ? ",\n" : "\n");
  }
  out << "]\n";
  return all_admissible ? 0 : 1;
}

int cmd_simulate(const fs::path& config_path, const Overrides& overrides, std::ostream& diag) {
  ResolvedScenario scenario = resolve_scenario(load_scenario_config(config_path), overrides);
  if (overrides.tol) scenario.tolerances["orbit"] = *overrides.tol;
  const double tol_orbit = tolerance_of(scenario.tolerances, "orbit");
  const double tol_democratic = tolerance_of(scenario.tolerances, "democratic");

  Trajectory traj = simulate(scenario.schedule, scenario.initial, scenario.num_issues);
  traj.tolerances = scenario.tolerances;

  fs::create_directories(scenario.outputs);
  {
    std::ofstream csv(scenario.outputs / "trajectory.csv", std::ios::binary);
    if (!csv) throw StructuralError("cannot write trajectory.csv in '" +
                                    scenario.outputs.string() + "'");
    write_trajectory_csv(csv, traj);
  }

  double min_state = 1.0;
  for (const TrajectoryRecord& record : traj.records) {
    min_state = std::min(min_state, record.state.values().minCoeff());
  }

  int rc = 0;
  std::string summary = "{\n";
  summary += "  \"schedule\": \"" + traj.schedule_description + "\",\n";
  summary += "  \"num_issues\": " + std::to_string(scenario.num_issues) + ",\n";
  summary += "  \"initial_seed\": " + std::to_string(scenario.initial_seed) + ",\n";
  summary += "  \"final_issue\": " + std::to_string(traj.issues()) + ",\n";
  summary += "  \"final_state\": " + json_vector(traj.records.back().state.values()) + ",\n";
  summary += "  \"min_state_value\": " + format_sig17(min_state) + ",\n";

  const int period = scenario.schedule.period();
  if (period >= 1 && traj.issues() >= orbit_detection_burn_in(period) + 2 * period) {
    const OrbitReport orbit = detect_periodic_orbit(traj, period, tol_orbit);
    summary += "  \"periodicity\": " ;
    std::istringstream lines(orbit_report_to_json(orbit));
    std::string line, block;
    while (std::getline(lines, line)) block += (block.empty() ? "" : "\n  ") + line;
    summary += block + ",\n";
  } else {
    summary += "  \"periodicity\": null,\n";
  }

  if (scenario.schedule.democratic_mode()) {
    const CheckResult check = democratic_limit_check(traj, tol_democratic);
    summary += "  \"democratic\": " + check_result_to_json(check) + "\n";
    if (!check.passed) rc = 1;
  } else {
    summary += "  \"democratic\": null\n";
  }
  summary += "}\n";

  write_text_file(scenario.outputs / "summary.json", summary);
  diag << "wrote " << (scenario.outputs / "trajectory.csv").string() << " and "
       << (scenario.outputs / "summary.json").string() << "\n";
  return rc;
}

int cmd_fixed_point(const fs::path& config_path, int phase, const Overrides& overrides,
                    std::ostream& out) {
  ResolvedScenario scenario = resolve_scenario(load_scenario_config(config_path), overrides);
  if (scenario.schedule.kind() == ScheduleKind::Arbitrary) {
    throw PreconditionError("fixed-point search needs a constant or periodic schedule");
  }
  if (overrides.tol) scenario.tolerances["fixed_point"] = *overrides.tol;
  const double tol = tolerance_of(scenario.tolerances, "fixed_point");

  const SimplexMap map = composed_cycle_map(scenario.schedule, phase);
  OrbitReport report = find_fixed_point(map, scenario.initial, tol);
  if (report.converged) {
    report.orbit = orbit_phase_points(scenario.schedule, phase, report.orbit.front());
  }
  const std::string text = orbit_report_to_json(report);
  out << text;
  write_text_file(scenario.outputs / "orbit.json", text);
  return report.converged ? 0 : 1;
}

int cmd_verify(const fs::path& config_path, const Overrides& overrides, std::ostream& out) {
  ResolvedScenario scenario = resolve_scenario(load_scenario_config(config_path), overrides);
  const Schedule& schedule = scenario.schedule;
  const MatrixCatalog& catalog = schedule.catalog();
  const int n = catalog.dimension();
  const double tol_vertex = tolerance_of(scenario.tolerances, "vertex");
  const double tol_simplex = tolerance_of(scenario.tolerances, "simplex");
  const double tol_equivalence = tolerance_of(scenario.tolerances, "equivalence");
  const double tol_ordering = tolerance_of(scenario.tolerances, "ordering");
  const double tol_fixed_point = tolerance_of(scenario.tolerances, "fixed_point");
  const double tol_democratic = tolerance_of(scenario.tolerances, "democratic");
  const double invariant_r = tolerance_of(scenario.tolerances, "invariant_set_r");

  // Catalog admissibility gates the whole suite.
  for (const auto& id : catalog.ids()) {
    const ValidationReport report = validate(catalog.at(id).entries());
    if (!report.satisfies_assumption_1) {
      throw PreconditionError("matrix '" + id + "' fails admissibility validation");
    }
  }

  std::vector<CheckResult> checks;
  std::uint64_t stream = 0;
  auto next_seed = [&] { return split_seed(scenario.initial_seed, ++stream); };

  for (const auto& id : catalog.ids()) {
    const InteractionMatrix& C = catalog.at(id);
    const SimplexVector c = dominant_left_eigenvector(C);
    const SimplexMap F = single_issue_map(C);

    CheckResult vertex_check = check_vertex_fixed_points(F, n, tol_vertex);
    vertex_check.name = "vertex_fixed_points(" + id + ")";
    checks.push_back(std::move(vertex_check));

    {
      Rng rng(next_seed());
      CheckResult preservation;
      preservation.name = "simplex_preservation(" + id + ")";
      preservation.tolerance = tol_simplex;
      for (int t = 0; t < 200; ++t) {
        const SimplexVector x(rng.simplex_point(n));
        const CheckResult one = check_simplex(F(x).values(), tol_simplex);
        if (one.worst_violation > preservation.worst_violation) {
          preservation.worst_violation = one.worst_violation;
          preservation.witness = x.values();
        }
      }
      preservation.passed = preservation.worst_violation <= tol_simplex;
      if (preservation.passed) preservation.witness.reset();
      checks.push_back(std::move(preservation));
    }

    {
      Rng rng(next_seed());
      CheckResult equivalence;
      equivalence.name = "update_route_equivalence(" + id + ")";
      equivalence.tolerance = tol_equivalence;
      for (int t = 0; t < 50; ++t) {
        const SimplexVector x(rng.interior_simplex_point(n));
        const double gap = linf_distance(issue_update_via_eigenvector(x, C), friedkin_map(x, c));
        if (gap > equivalence.worst_violation) {
          equivalence.worst_violation = gap;
          equivalence.witness = x.values();
        }
      }
      equivalence.passed = equivalence.worst_violation <= tol_equivalence;
      if (equivalence.passed) equivalence.witness.reset();
      checks.push_back(std::move(equivalence));
    }

    {
      const InvariantSetCheck inv = verify_invariant_set(F, n, invariant_r, 2000, next_seed());
      CheckResult invariant;
      invariant.name = "invariant_set(" + id + ")";
      invariant.tolerance = 0.0;
      invariant.worst_violation = inv.worst_component - (1.0 - invariant_r);
      invariant.passed = inv.holds;
      if (inv.counterexample) invariant.witness = inv.counterexample->values();
      checks.push_back(std::move(invariant));
    }

    {
      const OrbitReport fp = find_fixed_point(F, SimplexVector::uniform(n), tol_fixed_point);
      CheckResult ordering;
      if (fp.converged) {
        ordering = check_ordering(fp.orbit.front(), c, tol_ordering);
      } else {
        ordering.worst_violation = fp.residual;
        ordering.passed = false;
      }
      ordering.name = "fixed_point_ordering(" + id + ")";
      checks.push_back(std::move(ordering));
    }
  }

  if (schedule.kind() == ScheduleKind::Periodic) {
    const int period = schedule.period();
    for (int phase = 1; phase <= period; ++phase) {
      const SimplexMap cycle = composed_cycle_map(schedule, phase);
      CheckResult vertex_check = check_vertex_fixed_points(cycle, n, tol_vertex);
      vertex_check.name = "vertex_fixed_points(cycle_phase_" + std::to_string(phase) + ")";
      checks.push_back(std::move(vertex_check));

      const InvariantSetCheck inv = verify_invariant_set(cycle, n, invariant_r, 2000, next_seed());
      CheckResult invariant;
      invariant.name = "invariant_set(cycle_phase_" + std::to_string(phase) + ")";
      invariant.tolerance = 0.0;
      invariant.worst_violation = inv.worst_component - (1.0 - invariant_r);
      invariant.passed = inv.holds;
      if (inv.counterexample) invariant.witness = inv.counterexample->values();
      checks.push_back(std::move(invariant));
    }

    {
      CheckResult continuity = check_continuity_sampling(
          composed_cycle_map(schedule, 1), n, 400, 1e-4, composed_lipschitz_bound(schedule),
          next_seed());
      continuity.name = "continuity(cycle_phase_1)";
      checks.push_back(std::move(continuity));
    }

    if (period == 2) {
      const SimplexMap f1 = single_issue_map(catalog.at(schedule.cycle_ids()[0]));
      const SimplexMap f2 = single_issue_map(catalog.at(schedule.cycle_ids()[1]));
      const SimplexMap f3 = composed_cycle_map(schedule, 1);
      const OrbitReport fp = find_fixed_point(f3, scenario.initial, tol_fixed_point);
      CheckResult cross;
      cross.name = "cross_fixed_point_relation";
      cross.tolerance = tol_equivalence;
      if (fp.converged) {
        const SimplexVector& y1 = fp.orbit.front();
        const SimplexVector companion = f1(y1);
        const double d1 = linf_distance(f1(f2(companion)), companion);
        const double d2 = linf_distance(f2(companion), y1);
        cross.worst_violation = std::max(d1, d2);
        cross.passed = cross.worst_violation <= tol_equivalence;
        if (!cross.passed) cross.witness = y1.values();
      } else {
        cross.worst_violation = fp.residual;
        cross.passed = false;
      }
      checks.push_back(std::move(cross));
    }
  }

  {
    const Trajectory traj = simulate(schedule, scenario.initial, scenario.num_issues);
    CheckResult positivity;
    positivity.name = "trajectory_positivity";
    positivity.tolerance = 0.0;
    double min_state = 1.0;
    for (const TrajectoryRecord& record : traj.records) {
      min_state = std::min(min_state, record.state.values().minCoeff());
    }
    positivity.worst_violation = -min_state;
    positivity.passed = min_state > 0.0;
    if (!positivity.passed) positivity.witness = traj.records.back().state.values();
    checks.push_back(std::move(positivity));

    if (schedule.democratic_mode()) {
      checks.push_back(democratic_limit_check(traj, tol_democratic));
    }
  }

  const std::string text = check_results_to_json(checks);
  out << text;
  write_text_file(scenario.outputs / "verify.json", text);
  for (const CheckResult& check : checks) {
    if (!check.passed) return 1;
  }
  return 0;
}

}  // namespace dgf::cli
