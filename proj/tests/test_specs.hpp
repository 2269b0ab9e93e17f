#pragma once

#include <vector>

#include "imvs/scenario.hpp"

namespace imvs::testing {

/// Views on every window position 0, spacing, 2*spacing, ...; uniform
/// popularity and a cumulative budget schedule.
inline ScenarioSpec LineSpec(int views, std::vector<double> levels_mb,
                             std::vector<double> budgets_mb,
                             std::vector<double> proportions = {},
                             double spacing = 1.0) {
  GeneratorConfig cfg;
  cfg.views = views;
  cfg.positions = views;
  cfg.spacing = spacing;
  cfg.layers = static_cast<int>(budgets_mb.size());
  cfg.budgets_mb = std::move(budgets_mb);
  cfg.proportions = std::move(proportions);
  cfg.levels_mb = std::move(levels_mb);
  cfg.seed = 3;
  return GenerateScenario(cfg);
}

}  // namespace imvs::testing
