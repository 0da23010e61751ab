#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "dgf/analysis.hpp"
#include "dgf/interaction_matrix.hpp"
#include "dgf/switching.hpp"

namespace dgf {

/// Shortest of %.17g: round-trips the exact double.
std::string format_sig17(double v);

/// Raw matrix and id from a .json file ({"id", "n", "rows"}) or a headerless
/// .csv file (id is the filename stem). No stochasticity requirements;
/// parse errors name the file and offending row.
std::pair<Eigen::MatrixXd, std::string> load_raw_matrix(const std::filesystem::path& path);

/// load_raw_matrix plus construction of a validated InteractionMatrix.
InteractionMatrix load_interaction_matrix(const std::filesystem::path& path);

/// JSON text {"id", "n", "rows"} with 17 significant digits per entry.
std::string interaction_matrix_to_json(const InteractionMatrix& matrix);
void save_interaction_matrix(const InteractionMatrix& matrix, const std::filesystem::path& path);

/// CSV with header issue,matrix_id,x_1,...,x_n, one row per recorded issue,
/// 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

std::string orbit_report_to_json(const OrbitReport& report);

std::string check_result_to_json(const CheckResult& check);
std::string check_results_to_json(std::span<const CheckResult> checks);

/// Writes text to a file, creating parent directories as needed.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace dgf
