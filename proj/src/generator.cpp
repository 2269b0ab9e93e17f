#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "imvs/scenario.hpp"

namespace imvs {

namespace {

// Portable uniform draw in [lo, hi); mt19937_64 output is fixed by the
// standard, the library distributions are not.
double Uniform(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

std::size_t Below(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

}  // namespace

std::vector<double> UniformPopularity(int count) {
  return std::vector<double>(count, 1.0 / count);
}

std::vector<double> ExponentialPopularity(int count, double decay) {
  if (!(decay > 0.0 && decay < 1.0)) {
    throw std::invalid_argument("popularity decay must lie in (0, 1)");
  }
  std::vector<double> q(count);
  double weight = 1.0;
  double total = 0.0;
  for (int u = 0; u < count; ++u) {
    q[u] = weight;
    total += weight;
    weight *= decay;
  }
  for (double& value : q) value /= total;
  return q;
}

std::vector<double> LinearBudgetsMb(int layers, double x, double y) {
  std::vector<double> out;
  for (int c = 1; c <= layers; ++c) out.push_back(x * c + y);
  return out;
}

ScenarioSpec GenerateScenario(const GeneratorConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  ScenarioSpec spec;
  double a0 = 0.0;

  if (cfg.shape) {
    const ScenarioSpec preset = Preset(*cfg.shape);
    spec.views = preset.views;
    spec.window = preset.window;
    spec.grid = preset.grid;
    a0 = cfg.a0.value_or(std::get<ParametricModel>(preset.distortion).a0);
    spec.name = std::string(PresetName(*cfg.shape)) + "-shaped";
  } else {
    if (cfg.views < 2 || cfg.positions < cfg.views || !(cfg.spacing > 0.0)) {
      throw std::invalid_argument(
          "generator needs 2 <= views <= positions and spacing > 0");
    }
    for (int u = 0; u < cfg.positions; ++u) {
      spec.window.positions.push_back(u * cfg.spacing);
    }
    spec.window.spacing = cfg.spacing;
    // Cameras sit on rendered positions: both ends plus a random interior
    // subset.
    std::vector<int> interior;
    for (int u = 1; u + 1 < cfg.positions; ++u) interior.push_back(u);
    for (int i = 0; i < cfg.views - 2; ++i) {
      std::swap(interior[i], interior[i + Below(rng, interior.size() - i)]);
    }
    std::vector<int> chosen(interior.begin(), interior.begin() + (cfg.views - 2));
    chosen.push_back(0);
    chosen.push_back(cfg.positions - 1);
    std::sort(chosen.begin(), chosen.end());
    for (int u : chosen) {
      spec.views.positions.push_back(spec.window.positions[u]);
      spec.views.labels.push_back(std::to_string(u));
    }
    if (!(cfg.quantum_mb > 0.0)) {
      throw std::invalid_argument("quantum must be positive");
    }
    spec.grid.quantum_mb = cfg.quantum_mb;
    for (double mb : cfg.levels_mb) {
      spec.grid.levels.push_back(ToQuantum(mb, cfg.quantum_mb, "levels_mb"));
    }
    a0 = cfg.a0.value_or(cfg.alpha_step / cfg.spacing);
    spec.name = "synthetic-" + std::to_string(cfg.seed);
  }

  const int positions = spec.position_count();
  spec.window.popularity = cfg.popularity == PopularityModel::kExponential
                               ? ExponentialPopularity(positions, cfg.decay)
                               : UniformPopularity(positions);

  if (cfg.layers < 1) throw std::invalid_argument("need at least one layer");
  const std::vector<Rate> levels = spec.grid.NonzeroLevels();
  if (levels.empty()) throw std::invalid_argument("need a nonzero rate level");
  const double max_level_mb = spec.grid.ToMb(levels.back());
  std::vector<double> budgets_mb;
  if (cfg.linear) {
    budgets_mb = LinearBudgetsMb(cfg.layers, cfg.linear->first,
                                 cfg.linear->second);
  } else if (!cfg.budgets_mb.empty()) {
    budgets_mb = cfg.budgets_mb;
  } else {
    budgets_mb = LinearBudgetsMb(cfg.layers, max_level_mb, max_level_mb);
  }
  if (static_cast<int>(budgets_mb.size()) != cfg.layers) {
    throw std::invalid_argument("budget schedule needs one entry per layer");
  }
  for (double mb : budgets_mb) {
    spec.clients.budgets.push_back(
        ToQuantum(mb, spec.grid.quantum_mb, "budgets_mb"));
  }
  spec.clients.proportions =
      cfg.proportions.empty()
          ? std::vector<double>(cfg.layers, 1.0 / cfg.layers)
          : cfg.proportions;
  spec.clients.mode = cfg.budget_mode;

  ParametricModel model;
  model.a0 = a0;
  model.a1 = cfg.a1;
  model.g0 = cfg.g0;
  model.inpaint = cfg.inpaint;
  model.floor = cfg.floor;
  model.kappa = cfg.kappa.value_or(2.0 / max_level_mb);
  for (int v = 0; v < spec.view_count(); ++v) {
    model.sigma2.push_back(Uniform(rng, cfg.sigma2_min, cfg.sigma2_max));
    model.depth_mse.push_back(Uniform(rng, cfg.depth_min, cfg.depth_max));
  }
  model.noise_seed = rng();
  spec.distortion = model;

  ValidateOrThrow(spec);
  return spec;
}

}  // namespace imvs
