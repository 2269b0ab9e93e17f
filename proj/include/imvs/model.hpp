#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "imvs/distortion_model.hpp"
#include "imvs/errors.hpp"

namespace imvs {

/// Index into the ordered captured views (0-based).
using ViewIndex = int;
/// Rate in quantum units; 0 means "not transmitted".
using Rate = int;

inline constexpr double kCoordinateTolerance = 1e-9;
inline constexpr double kSumTolerance = 1e-9;

/// Ordered captured cameras.
struct ViewSet {
  std::vector<double> positions;  // strictly increasing, scene units
  std::vector<std::string> labels;

  int count() const { return static_cast<int>(positions.size()); }
};

/// Renderable viewpoints and their request probabilities.
struct NavigationWindow {
  std::vector<double> positions;
  double spacing = 0.0;  // minimum gap between consecutive positions
  std::vector<double> popularity;

  int count() const { return static_cast<int>(positions.size()); }
};

struct RateGrid {
  double quantum_mb = 1.0;
  std::vector<Rate> levels;  // strictly increasing, starts at 0

  /// Levels > 0, in increasing order.
  std::vector<Rate> NonzeroLevels() const;
  /// Position of `rate` among the nonzero levels, or -1.
  int NonzeroIndex(Rate rate) const;
  double ToMb(Rate rate) const { return rate * quantum_mb; }
};

enum class BudgetMode {
  kCumulative,  // B_c caps the total rate of layers 1..c
  kPerLayer,    // B_c caps the rate of layer c alone
};

const char* BudgetModeName(BudgetMode mode);
std::optional<BudgetMode> ParseBudgetMode(const std::string& name);

struct ClientProfile {
  std::vector<Rate> budgets;        // quantum units, one per layer
  std::vector<double> proportions;  // p(c)
  BudgetMode mode = BudgetMode::kCumulative;

  int layers() const { return static_cast<int>(budgets.size()); }
};

/// Per-layer maps view -> rate. Layer 0 is the most important layer.
struct LayerAssignment {
  std::vector<std::map<ViewIndex, Rate>> layers;

  int layer_count() const { return static_cast<int>(layers.size()); }
  /// Layer holding `view`, or -1 when it is not transmitted.
  int LayerOf(ViewIndex view) const;
  /// Total rate of a single layer.
  Rate LayerRate(int layer) const;
};

struct ScenarioSpec {
  std::string name;
  ViewSet views;
  NavigationWindow window;
  RateGrid grid;
  ClientProfile clients;
  DistortionConfig distortion;

  int view_count() const { return views.count(); }
  int position_count() const { return window.count(); }
  int layer_count() const { return clients.layers(); }
  Rate MaxBudget() const;
};

/// First violated invariant, if any.
std::optional<ValidationError> Validate(const ScenarioSpec& spec);
/// Same as Validate but ignores the distortion configuration.
std::optional<ValidationError> ValidateStructure(const ScenarioSpec& spec);
/// Throws the first violated invariant.
void ValidateOrThrow(const ScenarioSpec& spec);

struct Feasibility {
  bool ok = true;
  std::string violation;  // empty when ok

  explicit operator bool() const { return ok; }
};

/// Checks disjointness, endpoints in layer 1, nonzero grid rates and every
/// budget constraint. Never throws.
Feasibility CheckFeasible(const ScenarioSpec& spec, const LayerAssignment& a);

/// Union of the first `layer_count` layers, sorted by view index, each view
/// with its rate. Throws std::out_of_range for a bad count and
/// std::invalid_argument when layers overlap.
std::vector<std::pair<ViewIndex, Rate>> PrefixViews(const LayerAssignment& a,
                                                    int layer_count);

/// Window position coinciding with each captured view, or -1.
std::vector<int> ViewPositionIndex(const ScenarioSpec& spec);

}  // namespace imvs
