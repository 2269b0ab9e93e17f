#include "suite.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "imvs/scenario.hpp"

namespace imvs::testing {

namespace {

int Pick(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double Unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ScenarioSpec SuiteInstance(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 17);
  GeneratorConfig cfg;
  cfg.seed = seed;
  cfg.views = Pick(rng, 3, 6);
  cfg.positions = cfg.views + Pick(rng, 0, 4);
  cfg.spacing = Pick(rng, 0, 1) ? 1.0 : 2.5;
  cfg.popularity =
      Pick(rng, 0, 1) ? PopularityModel::kExponential : PopularityModel::kUniform;
  cfg.layers = Pick(rng, 1, 2);
  const int level_count = Pick(rng, 2, 3);
  cfg.levels_mb = level_count == 2
                      ? std::vector<double>{0.0, Pick(rng, 0, 1) ? 1.0 : 2.0}
                      : std::vector<double>{0.0, 1.0, Pick(rng, 0, 1) ? 2.0 : 3.0};
  cfg.quantum_mb = 1.0;
  cfg.alpha_step = Pick(rng, 0, 1) ? 0.25 : 0.1;
  cfg.a1 = Pick(rng, 0, 1) ? 0.02 : 0.0;
  cfg.budget_mode = Pick(rng, 0, 3) == 0 ? BudgetMode::kPerLayer
                                         : BudgetMode::kCumulative;

  const int low = static_cast<int>(cfg.levels_mb[1]);
  const int high = static_cast<int>(cfg.levels_mb.back());
  const int total = cfg.views * high;
  int b1;
  const int kind = Pick(rng, 0, 9);
  if (kind == 0) {
    b1 = Pick(rng, 1, 2 * low - 1);  // the endpoints cannot both fit
  } else if (kind <= 4) {
    b1 = Pick(rng, 2 * low, 2 * high + low);
  } else {
    b1 = Pick(rng, 2 * low, total);
  }
  cfg.budgets_mb = {static_cast<double>(b1)};
  if (cfg.layers == 2) {
    const int b2 = cfg.budget_mode == BudgetMode::kCumulative
                       ? b1 + Pick(rng, 0, total)
                       : Pick(rng, 1, total);
    cfg.budgets_mb.push_back(b2);
    if (Pick(rng, 0, 1)) {
      cfg.proportions = {0.5, 0.5};
    } else {
      const double w = Pick(rng, 0, 9) == 0 ? 0.0 : 0.05 + 0.9 * Unit(rng);
      cfg.proportions = {w, 1.0 - w};
    }
  }
  return GenerateScenario(cfg);
}

bool HasEvenProportions(const ScenarioSpec& spec) {
  const auto& p = spec.clients.proportions;
  return p.size() == 2 && p[0] == 0.5 && p[1] == 0.5;
}

LayerAssignment RandomFeasibleAssignment(const ScenarioSpec& spec,
                                         std::mt19937_64& rng) {
  const std::vector<Rate> levels = spec.grid.NonzeroLevels();
  const int v_count = spec.view_count();
  for (int attempt = 0; attempt < 200; ++attempt) {
    LayerAssignment a;
    a.layers.resize(spec.layer_count());
    for (ViewIndex v = 0; v < v_count; ++v) {
      const bool endpoint = v == 0 || v == v_count - 1;
      const int layer =
          endpoint ? 0 : Pick(rng, -1, spec.layer_count() - 1);
      if (layer < 0) continue;
      a.layers[layer][v] = levels[Pick(rng, 0, levels.size() - 1)];
    }
    if (CheckFeasible(spec, a)) return a;
  }
  LayerAssignment minimal;
  minimal.layers.resize(spec.layer_count());
  minimal.layers[0] = {{0, levels[0]}, {v_count - 1, levels[0]}};
  if (CheckFeasible(spec, minimal)) return minimal;
  return {};
}

double DirectLayerDistortion(const ScenarioSpec& spec,
                             const LayerAssignment& a, int layer_count) {
  const auto& model = std::get<ParametricModel>(spec.distortion);
  std::map<ViewIndex, Rate> refs;
  for (int c = 0; c < layer_count; ++c) {
    refs.insert(a.layers[c].begin(), a.layers[c].end());
  }
  const auto& xs = spec.views.positions;
  auto coded = [&](ViewIndex v) {
    const double mb = refs.at(v) * spec.grid.quantum_mb;
    const double texture =
        std::max(model.floor, model.sigma2[v] * std::pow(2.0, -model.kappa * mb));
    return texture + model.depth_mse[v];
  };
  double total = 0.0;
  for (int u = 0; u < spec.position_count(); ++u) {
    const double x = spec.window.positions[u];
    ViewIndex left = -1;
    ViewIndex right = -1;
    bool on_view = false;
    double d = 0.0;
    for (const auto& [v, rate] : refs) {
      if (std::abs(xs[v] - x) < 1e-9) {
        d = coded(v);
        on_view = true;
        break;
      }
      if (xs[v] < x) left = v;
      if (xs[v] > x && right < 0) right = v;
    }
    if (!on_view) {
      const double alpha =
          std::min(1.0, model.a0 * (xs[right] - xs[left]) +
                            model.a1 * model.Noise(u, left, right));
      const double gamma = model.g0 * alpha;
      const bool left_first = x - xs[left] <= xs[right] - x;
      const double first = coded(left_first ? left : right);
      const double second = coded(left_first ? right : left);
      d = (1 - alpha) * first + (1 - gamma) * alpha * second +
          gamma * alpha * model.inpaint;
    }
    total += spec.window.popularity[u] * d;
  }
  return total;
}

ScenarioSpec FirstLayerOnly(const ScenarioSpec& spec) {
  ScenarioSpec out = spec;
  out.clients.budgets.resize(1);
  out.clients.proportions = {1.0};
  return out;
}

}  // namespace imvs::testing
