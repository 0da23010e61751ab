// Regenerates the seeded matrix catalog shipped under data/catalog/.
// C1..C3 are general admissible topologies; C4 and C5 are doubly stochastic
// for the democratic-limit scenarios. Deterministic: same seeds, same files.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dgf/interaction_matrix.hpp"
#include "dgf/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Regenerate the shipped interaction-matrix catalog"};
  std::string out_dir = "data/catalog";
  int n = 8;
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--n", n, "number of individuals");
  CLI11_PARSE(app, argc, argv);

  struct Spec {
    const char* id;
    double density;
    std::uint64_t seed;
    bool doubly_stochastic;
  };
  const std::vector<Spec> specs = {
      {"C1", 0.55, 101, false}, {"C2", 0.45, 202, false}, {"C3", 0.65, 303, false},
      {"C4", 0.50, 404, true},  {"C5", 0.60, 505, true},
  };

  std::filesystem::create_directories(out_dir);
  for (const Spec& spec : specs) {
    const dgf::InteractionMatrix m =
        dgf::random_interaction_matrix(n, spec.density, spec.seed, spec.doubly_stochastic)
            .with_id(spec.id);
    const dgf::ValidationReport report = dgf::validate(m.entries());
    const dgf::SimplexVector c = dgf::dominant_left_eigenvector(m);
    const std::filesystem::path path = std::filesystem::path(out_dir) / (std::string(spec.id) + ".json");
    dgf::save_interaction_matrix(m, path);
    std::cout << spec.id << ": n=" << report.n << " irreducible=" << report.irreducible
              << " star=" << report.star_topology
              << " doubly_stochastic=" << report.doubly_stochastic
              << " admissible=" << report.satisfies_assumption_1
              << " c_min=" << c.values().minCoeff() << " c_max=" << c.values().maxCoeff()
              << " -> " << path.string() << "\n";
  }
  return 0;
}
