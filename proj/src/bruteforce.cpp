#include <chrono>
#include <cmath>
#include <string>

#include "imvs/solvers.hpp"

namespace imvs {

SolveResult SolveBruteForce(const ScenarioSpec& spec,
                            const DistortionOracle& oracle,
                            const SolverOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const int views = spec.view_count();
  const int layers = spec.layer_count();
  const std::vector<Rate> levels = spec.grid.NonzeroLevels();
  const int choices = layers * static_cast<int>(levels.size()) + 1;
  const double total = std::pow(static_cast<double>(choices), views);
  if (total > options.bruteforce_cap) {
    throw SizeGuardExceeded("brute force needs " + std::to_string(total) +
                                " assignments, cap is " +
                                std::to_string(options.bruteforce_cap),
                            total, options.bruteforce_cap);
  }

  // code 0: absent; code 1 + c * |levels| + k: layer c at level k.
  std::vector<int> code(views, 0);
  LayerAssignment best;
  double best_value = 0.0;
  bool found = false;
  std::int64_t evaluated = 0;
  while (true) {
    LayerAssignment a;
    a.layers.resize(layers);
    for (int v = 0; v < views; ++v) {
      if (code[v] == 0) continue;
      const int c = (code[v] - 1) / static_cast<int>(levels.size());
      const int k = (code[v] - 1) % static_cast<int>(levels.size());
      a.layers[c][v] = levels[k];
    }
    if (CheckFeasible(spec, a)) {
      ++evaluated;
      const double value = Objective(oracle, spec, a);
      if (!found || value < best_value - kTieEpsilon) {
        found = true;
        best_value = value;
        best = std::move(a);
      }
    }
    int v = views - 1;
    while (v >= 0 && code[v] == choices - 1) code[v--] = 0;
    if (v < 0) break;
    ++code[v];
  }
  if (!found) throw InfeasibleError("no feasible assignment");
  return internal::Finalize(spec, oracle, std::move(best),
                            SolverId::kBruteForce, evaluated, start);
}

}  // namespace imvs
