#include "dgf/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "dgf/errors.hpp"

namespace dgf {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string number_or_null(double v) { return std::isfinite(v) ? format_sig17(v) : "null"; }

std::string vector_to_json(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (int i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_sig17(v(i));
  }
  return out + "]";
}

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& context) {
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
}

std::pair<Eigen::MatrixXd, std::string> parse_matrix_json(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& err) {
    throw StructuralError(path.string() + ": " + err.what());
  }
  if (!doc.is_object()) throw StructuralError(path.string() + ": expected a JSON object");
  require_keys(doc, {"id", "n", "rows"}, path.string());
  for (const char* key : {"id", "n", "rows"}) {
    if (!doc.contains(key)) {
      throw StructuralError(path.string() + ": missing key '" + std::string(key) + "'");
    }
  }
  if (!doc["id"].is_string()) throw StructuralError(path.string() + ": 'id' must be a string");
  if (!doc["n"].is_number_integer()) {
    throw StructuralError(path.string() + ": 'n' must be an integer");
  }
  const int n = doc["n"].get<int>();
  if (n < 1) throw StructuralError(path.string() + ": 'n' must be at least 1");
  if (!doc["rows"].is_array() || static_cast<int>(doc["rows"].size()) != n) {
    throw StructuralError(path.string() + ": 'rows' must be an array of " + std::to_string(n) +
                          " rows");
  }
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = doc["rows"][i];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw StructuralError(path.string() + ": row " + std::to_string(i + 1) + " must have " +
                            std::to_string(n) + " entries");
    }
    for (int j = 0; j < n; ++j) {
      if (!row[j].is_number()) {
        throw StructuralError(path.string() + ": row " + std::to_string(i + 1) +
                              " has a non-numeric entry");
      }
      m(i, j) = row[j].get<double>();
    }
  }
  return {std::move(m), doc["id"].get<std::string>()};
}

std::pair<Eigen::MatrixXd, std::string> parse_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot open '" + path.string() + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      std::size_t first = start;
      std::size_t last = end;
      while (first < last && std::isspace(static_cast<unsigned char>(line[first]))) ++first;
      while (last > first && std::isspace(static_cast<unsigned char>(line[last - 1]))) --last;
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(line.data() + first, line.data() + last, value);
      if (ec != std::errc{} || ptr != line.data() + last) {
        throw StructuralError(path.string() + ":" + std::to_string(line_number) +
                              ": cannot parse '" + line.substr(first, last - first) +
                              "' as a number");
      }
      row.push_back(value);
      start = end + 1;
      if (end == line.size()) break;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw StructuralError(path.string() + ": no data rows");
  const std::size_t n = rows.size();
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw StructuralError(path.string() + ":" + std::to_string(i + 1) + ": expected " +
                            std::to_string(n) + " values, got " + std::to_string(rows[i].size()));
    }
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return {std::move(m), path.stem().string()};
}

std::string lowercase(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

}  // namespace

std::string format_sig17(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

std::pair<Eigen::MatrixXd, std::string> load_raw_matrix(const std::filesystem::path& path) {
  const std::string ext = lowercase(path.extension().string());
  if (ext == ".json") return parse_matrix_json(path);
  if (ext == ".csv") return parse_matrix_csv(path);
  throw StructuralError("unsupported matrix file '" + path.string() +
                        "': expected a .json or .csv extension");
}

InteractionMatrix load_interaction_matrix(const std::filesystem::path& path) {
  auto [entries, id] = load_raw_matrix(path);
  try {
    return InteractionMatrix(std::move(entries), std::move(id));
  } catch (const StructuralError& err) {
    throw StructuralError(path.string() + ": " + err.what());
  }
}

std::string interaction_matrix_to_json(const InteractionMatrix& matrix) {
  std::string out = "{\n  \"id\": \"" + json_escape(matrix.id()) + "\",\n  \"n\": " +
                    std::to_string(matrix.size()) + ",\n  \"rows\": [\n";
  for (int i = 0; i < matrix.size(); ++i) {
    out += "    " + vector_to_json(matrix.entries().row(i).transpose());
    out += i + 1 < matrix.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

void save_interaction_matrix(const InteractionMatrix& matrix, const std::filesystem::path& path) {
  write_text_file(path, interaction_matrix_to_json(matrix));
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  if (traj.records.empty()) throw PreconditionError("trajectory is empty");
  const int n = traj.records.front().state.size();
  out << "issue,matrix_id";
  for (int i = 1; i <= n; ++i) out << ",x_" << i;
  out << "\n";
  for (const TrajectoryRecord& record : traj.records) {
    out << record.issue << "," << record.matrix_id;
    for (int i = 0; i < n; ++i) out << "," << format_sig17(record.state[i]);
    out << "\n";
  }
}

std::string orbit_report_to_json(const OrbitReport& report) {
  std::string out = "{\n";
  out += "  \"converged\": " + std::string(report.converged ? "true" : "false") + ",\n";
  out += "  \"residual\": " + number_or_null(report.residual) + ",\n";
  out += "  \"iterations\": " + std::to_string(report.iterations) + ",\n";
  out += "  \"orbit\": [\n";
  for (std::size_t i = 0; i < report.orbit.size(); ++i) {
    out += "    " + vector_to_json(report.orbit[i].values());
    out += i + 1 < report.orbit.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string check_result_to_json(const CheckResult& check) {
  std::string out = "{\"name\": \"" + json_escape(check.name) + "\", \"passed\": " +
                    (check.passed ? "true" : "false") +
                    ", \"worst_violation\": " + number_or_null(check.worst_violation) +
                    ", \"tolerance\": " + number_or_null(check.tolerance);
  if (check.witness) out += ", \"witness\": " + vector_to_json(*check.witness);
  return out + "}";
}

std::string check_results_to_json(std::span<const CheckResult> checks) {
  bool all_passed = true;
  for (const CheckResult& check : checks) all_passed = all_passed && check.passed;
  std::string out = "{\n  \"all_passed\": " + std::string(all_passed ? "true" : "false") +
                    ",\n  \"checks\": [\n";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    out += "    " + check_result_to_json(checks[i]);
    out += i + 1 < checks.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StructuralError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw StructuralError("failed while writing '" + path.string() + "'");
}

}  // namespace dgf
