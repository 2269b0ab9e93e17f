#include <stdexcept>

#include "imvs/scenario.hpp"

namespace imvs {

namespace {

struct PresetLayout {
  const char* name;
  std::vector<int> view_indexes;    // dataset camera indexes
  std::vector<int> window_indexes;  // rendered viewpoint indexes
  double unit;                      // scene units per dataset index
  double spacing;                   // minimum gap between rendered positions
  std::vector<double> levels_mb;
  double quantum_mb;
  std::vector<double> budgets_mb;
  std::vector<double> proportions;
  bool exponential_popularity;
  double kappa;
  std::vector<double> sigma2;
  std::vector<double> depth_mse;
};

PresetLayout Layout(PresetId id) {
  switch (id) {
    case PresetId::kStatue:
      // 5.33 mm between neighbouring cameras; rendered views every 5 cameras.
      return {"statue",
              {50, 55, 65, 70, 80, 85, 95},
              {50, 55, 60, 65, 70, 75, 80, 85, 90, 95},
              5.33,
              26.65,
              {0.0, 2.0, 4.0},
              2.0,
              {8.0, 8.0},
              {0.5, 0.5},
              false,
              0.35,
              {32.0, 28.0, 36.0, 30.0, 34.0, 27.0, 31.0},
              {2.0, 1.8, 2.4, 2.1, 2.2, 1.9, 2.0}};
    case PresetId::kBikes:
      return {"bikes",
              {10, 20, 25, 30, 35, 40, 50},
              {10, 20, 25, 30, 35, 40, 50},
              5.0,
              25.0,
              {0.0, 1.0, 1.5, 2.0, 2.5, 2.7},
              0.1,
              {3.5, 3.5, 3.5, 3.5},
              {0.25, 0.25, 0.25, 0.25},
              true,
              0.7,
              {38.0, 33.0, 29.0, 35.0, 31.0, 36.0, 30.0},
              {2.5, 2.2, 2.0, 2.6, 2.1, 2.4, 2.3}};
    case PresetId::kBallet:
      // Circular rig without published angular spacing: unit index distance.
      return {"ballet",
              {0, 1, 2, 4, 5, 6, 7},
              {0, 1, 2, 3, 4, 5, 6, 7},
              1.0,
              1.0,
              {0.0, 0.15, 0.18, 0.20, 0.25, 0.3},
              0.01,
              {0.5, 0.5, 0.5, 0.5},
              {0.25, 0.25, 0.25, 0.25},
              true,
              6.0,
              {30.0, 34.0, 37.0, 28.0, 33.0, 35.0, 29.0},
              {1.6, 1.8, 2.0, 1.5, 1.7, 1.9, 1.6}};
    case PresetId::kUndoDancer:
      // 20 cm between neighbouring cameras.
      return {"undodancer",
              {1, 2, 3, 5, 9},
              {1, 2, 3, 4, 5, 6, 7, 8, 9},
              20.0,
              20.0,
              {0.0, 0.25, 0.5, 0.75, 1.0, 1.25},
              0.25,
              {1.25, 1.25, 1.25, 1.25},
              {0.25, 0.25, 0.25, 0.25},
              true,
              1.6,
              {36.0, 31.0, 39.0, 33.0, 35.0},
              {2.8, 2.4, 3.0, 2.6, 2.7}};
  }
  throw std::invalid_argument("unknown preset");
}

constexpr double kPresetAlphaStep = 0.25;
constexpr double kPresetNoise = 0.02;
constexpr double kPresetInpaint = 1000.0;
constexpr double kDefaultDecay = 0.7;

}  // namespace

const char* PresetName(PresetId id) { return Layout(id).name; }

std::optional<PresetId> ParsePresetId(const std::string& name) {
  for (PresetId id : {PresetId::kStatue, PresetId::kBikes, PresetId::kBallet,
                      PresetId::kUndoDancer}) {
    if (name == PresetName(id)) return id;
  }
  return std::nullopt;
}

double PresetLayerBudgetMb(PresetId id) {
  switch (id) {
    case PresetId::kStatue:
      return 8.0;
    case PresetId::kBikes:
      return 3.5;
    case PresetId::kBallet:
      return 0.5;
    case PresetId::kUndoDancer:
      return 1.25;
  }
  throw std::invalid_argument("unknown preset");
}

ScenarioSpec Preset(PresetId id) {
  const PresetLayout p = Layout(id);
  ScenarioSpec spec;
  spec.name = p.name;
  for (int index : p.view_indexes) {
    spec.views.positions.push_back(index * p.unit);
    spec.views.labels.push_back(std::to_string(index));
  }
  for (int index : p.window_indexes) {
    spec.window.positions.push_back(index * p.unit);
  }
  spec.window.spacing = p.spacing;
  const int positions = static_cast<int>(p.window_indexes.size());
  spec.window.popularity = p.exponential_popularity
                               ? ExponentialPopularity(positions, kDefaultDecay)
                               : UniformPopularity(positions);

  spec.grid.quantum_mb = p.quantum_mb;
  for (double mb : p.levels_mb) {
    spec.grid.levels.push_back(ToQuantum(mb, p.quantum_mb, "levels"));
  }
  for (double mb : p.budgets_mb) {
    spec.clients.budgets.push_back(ToQuantum(mb, p.quantum_mb, "budgets"));
  }
  spec.clients.proportions = p.proportions;
  // The published layer budgets cap each layer separately.
  spec.clients.mode = BudgetMode::kPerLayer;

  ParametricModel model;
  model.a0 = kPresetAlphaStep / p.spacing;
  model.a1 = kPresetNoise;
  model.g0 = 1.0;
  model.inpaint = kPresetInpaint;
  model.kappa = p.kappa;
  model.noise_seed = static_cast<std::uint64_t>(id) + 1;
  model.sigma2 = p.sigma2;
  model.depth_mse = p.depth_mse;
  spec.distortion = model;

  ValidateOrThrow(spec);
  return spec;
}

}  // namespace imvs
