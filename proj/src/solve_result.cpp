#include <stdexcept>

#include "imvs/solvers.hpp"

namespace imvs {

const char* SolverName(SolverId id) {
  switch (id) {
    case SolverId::kOptimal:
      return "optimal";
    case SolverId::kGreedy:
      return "greedy";
    case SolverId::kBaseline:
      return "baseline";
    case SolverId::kBruteForce:
      return "bruteforce";
  }
  return "?";
}

std::optional<SolverId> ParseSolverId(const std::string& name) {
  for (SolverId id : {SolverId::kOptimal, SolverId::kGreedy,
                      SolverId::kBaseline, SolverId::kBruteForce}) {
    if (name == SolverName(id)) return id;
  }
  return std::nullopt;
}

SolveResult Solve(SolverId id, const ScenarioSpec& spec,
                  const DistortionOracle& oracle,
                  const SolverOptions& options) {
  switch (id) {
    case SolverId::kOptimal:
      return SolveOptimal(spec, oracle, options);
    case SolverId::kGreedy:
      return SolveGreedy(spec, oracle);
    case SolverId::kBaseline:
      return SolveBaseline(spec, oracle);
    case SolverId::kBruteForce:
      return SolveBruteForce(spec, oracle, options);
  }
  throw std::invalid_argument("unknown solver");
}

namespace internal {

SolveResult Finalize(const ScenarioSpec& spec, const DistortionOracle& oracle,
                     LayerAssignment assignment, SolverId id,
                     std::int64_t states,
                     std::chrono::steady_clock::time_point start) {
  SolveResult result;
  result.layer_distortion = LayerDistortions(oracle, spec, assignment);
  for (std::size_t c = 0; c < result.layer_distortion.size(); ++c) {
    result.objective +=
        spec.clients.proportions[c] * result.layer_distortion[c];
  }
  result.assignment = std::move(assignment);
  result.solver = id;
  result.states_expanded = states;
  result.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return result;
}

}  // namespace internal

}  // namespace imvs
