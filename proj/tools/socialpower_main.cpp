#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dgf/cli.hpp"
#include "dgf/errors.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::string out;
  std::int64_t seed = -1;
  int issues = -1;
  double tol = -1.0;
};

dgf::cli::Overrides to_overrides(const CommonFlags& flags) {
  dgf::cli::Overrides overrides;
  if (flags.seed >= 0) overrides.seed = static_cast<std::uint64_t>(flags.seed);
  if (flags.issues > 0) overrides.issues = flags.issues;
  if (flags.tol > 0.0) overrides.tol = flags.tol;
  if (!flags.out.empty()) overrides.out = flags.out;
  return overrides;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Social power dynamics under constant, periodic, and arbitrary switching "
               "interaction topologies"};
  app.require_subcommand(1);

  std::vector<std::string> matrix_files;
  CLI::App* validate = app.add_subcommand("validate", "Structural validation of matrix files");
  validate->add_option("files", matrix_files, "matrix files (.json or .csv)")->required();

  CommonFlags sim_flags;
  CLI::App* simulate = app.add_subcommand("simulate", "Run a scenario and emit trajectory data");
  simulate->add_option("--config", sim_flags.config, "scenario config path")->required();
  simulate->add_option("--out", sim_flags.out, "output directory (overrides config)");
  simulate->add_option("--seed", sim_flags.seed, "initial-state seed (overrides config)");
  simulate->add_option("--issues", sim_flags.issues, "number of issues (overrides config)");
  simulate->add_option("--tol", sim_flags.tol, "orbit detection tolerance");

  CommonFlags fp_flags;
  int phase = 1;
  CLI::App* fixed_point =
      app.add_subcommand("fixed-point", "Fixed point of the composed cycle map");
  fixed_point->add_option("--config", fp_flags.config, "scenario config path")->required();
  fixed_point->add_option("--phase", phase, "cycle phase to solve (1-based)");
  fixed_point->add_option("--out", fp_flags.out, "output directory (overrides config)");
  fixed_point->add_option("--seed", fp_flags.seed, "initial-state seed (overrides config)");
  fixed_point->add_option("--tol", fp_flags.tol, "fixed-point iteration tolerance");

  CommonFlags verify_flags;
  CLI::App* verify = app.add_subcommand("verify", "Run the property suite for a scenario");
  verify->add_option("--config", verify_flags.config, "scenario config path")->required();
  verify->add_option("--out", verify_flags.out, "output directory (overrides config)");
  verify->add_option("--seed", verify_flags.seed, "check-sampling seed (overrides config)");
  verify->add_option("--issues", verify_flags.issues, "number of issues (overrides config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate->parsed()) {
      std::vector<std::filesystem::path> files(matrix_files.begin(), matrix_files.end());
      return dgf::cli::cmd_validate(files, std::cout);
    }
    if (simulate->parsed()) {
      return dgf::cli::cmd_simulate(sim_flags.config, to_overrides(sim_flags), std::cout);
    }
    if (fixed_point->parsed()) {
      return dgf::cli::cmd_fixed_point(fp_flags.config, phase, to_overrides(fp_flags), std::cout);
    }
    if (verify->parsed()) {
      return dgf::cli::cmd_verify(verify_flags.config, to_overrides(verify_flags), std::cout);
    }
  } catch (const dgf::StructuralError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const dgf::PreconditionError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const dgf::NumericalError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 2;
}
