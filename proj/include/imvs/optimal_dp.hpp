#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "imvs/distortion.hpp"
#include "imvs/model.hpp"

namespace imvs {

/// Subproblem of the joint DP: the best expected distortion of layers
/// `layer`..C-1 between transmitted references left < right, when views
/// strictly between them may use at most `residual` (one entry per layer
/// from `layer` on).
struct DpState {
  int layer = 0;
  ViewIndex left = 0;
  ViewIndex right = 0;
  int left_level = 0;   // index among nonzero grid levels
  int right_level = 0;
  std::vector<Rate> residual;
};

/// Chosen branch of a DP entry. `view < 0` means no further view of this
/// layer is placed between the references.
struct DpDecision {
  ViewIndex view = -1;
  int level = -1;
  std::vector<Rate> split;  // budget granted to the left sub-interval
};

/// Memoized solver for the joint recursion. In cumulative mode a view placed
/// at layer c consumes budget in every layer c..C-1, and residual vectors are
/// kept in suffix-minimum form. Entries are written once.
class OptimalDp {
 public:
  /// Throws SizeGuardExceeded when the state key cannot be packed.
  OptimalDp(const ScenarioSpec& spec, const DistortionOracle& oracle);

  /// Phi for `state` (residual is normalized first).
  double Value(const DpState& state);

  /// Optimal assignment over the endpoint rates. Throws InfeasibleError.
  LayerAssignment Solve(double* value = nullptr);

  std::size_t states() const { return table_.size(); }

 private:
  struct Entry {
    double value;
    DpDecision decision;
  };

  void Normalize(std::vector<Rate>& residual) const;
  std::uint64_t Key(const DpState& state) const;
  double Compute(const DpState& state);
  void Collect(const DpState& state, LayerAssignment& out);

  const ScenarioSpec& spec_;
  const DistortionOracle& oracle_;
  int layers_;
  std::vector<double> proportions_;
  std::vector<Rate> levels_;
  bool cumulative_;
  std::uint64_t radix_budget_;
  std::unordered_map<std::uint64_t, Entry> table_;
};

}  // namespace imvs
