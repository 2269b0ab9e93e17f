#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "imvs/distortion.hpp"
#include "imvs/model.hpp"

namespace imvs {

enum class SolverId { kOptimal, kGreedy, kBaseline, kBruteForce };

const char* SolverName(SolverId id);
std::optional<SolverId> ParseSolverId(const std::string& name);

struct SolveResult {
  LayerAssignment assignment;
  std::vector<double> layer_distortion;  // D_1..D_C, MSE
  double objective = 0.0;                // sum_c p(c) D_c, MSE
  SolverId solver = SolverId::kOptimal;
  std::int64_t states_expanded = 0;
  double wall_ms = 0.0;
};

struct SolverOptions {
  /// Refuse the optimal DP when V^2 * B_max^(C+2) exceeds this.
  double optimal_state_cap = 1e8;
  /// Refuse brute force when (C * (|levels| - 1) + 1)^V exceeds this.
  double bruteforce_cap = 2e6;
};

/// Improvement threshold shared by every solver's tie-breaking.
inline constexpr double kTieEpsilon = 1e-12;

/// Globally optimal joint view/layer/rate assignment.
SolveResult SolveOptimal(const ScenarioSpec& spec,
                         const DistortionOracle& oracle,
                         const SolverOptions& options = {});

/// Layer-by-layer DP: each layer minimizes its own D_c given the references
/// frozen by earlier layers.
SolveResult SolveGreedy(const ScenarioSpec& spec,
                        const DistortionOracle& oracle);

/// Distance-based selection with a uniform rate per layer.
SolveResult SolveBaseline(const ScenarioSpec& spec,
                          const DistortionOracle& oracle);

/// Exhaustive enumeration of every (layer, rate) choice per view.
SolveResult SolveBruteForce(const ScenarioSpec& spec,
                            const DistortionOracle& oracle,
                            const SolverOptions& options = {});

SolveResult Solve(SolverId id, const ScenarioSpec& spec,
                  const DistortionOracle& oracle,
                  const SolverOptions& options = {});

/// V^2 * B_max^(C+2), the optimal DP's table-size estimate.
double OptimalStateEstimate(const ScenarioSpec& spec);

namespace internal {

/// Fills distortions, objective and timing for a solver's assignment.
SolveResult Finalize(const ScenarioSpec& spec, const DistortionOracle& oracle,
                     LayerAssignment assignment, SolverId id,
                     std::int64_t states,
                     std::chrono::steady_clock::time_point start);

}  // namespace internal

}  // namespace imvs
