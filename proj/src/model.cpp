#include "imvs/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace imvs {

namespace {

std::string Str(double value) {
  std::ostringstream out;
  out.precision(12);
  out << value;
  return out.str();
}

template <typename T>
std::string Join(const std::vector<T>& values) {
  std::ostringstream out;
  out.precision(12);
  out << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ", ";
    out << values[i];
  }
  out << ']';
  return out.str();
}

std::optional<ValidationError> Fail(const char* invariant, std::string detail) {
  return ValidationError(invariant, std::move(detail));
}

std::optional<ValidationError> ValidateParametric(const ScenarioSpec& spec,
                                                  const ParametricModel& m) {
  const int v_count = spec.view_count();
  if (!(m.a0 >= 0.0) || !(m.a1 >= 0.0) || !(m.g0 >= 0.0 && m.g0 <= 1.0) ||
      !(m.inpaint >= 0.0) || !(m.floor >= 0.0) || !std::isfinite(m.kappa)) {
    return Fail("synthesis-params",
                "need a0 >= 0, a1 >= 0, 0 <= g0 <= 1, I >= 0, floor >= 0");
  }
  if (static_cast<int>(m.sigma2.size()) != v_count ||
      static_cast<int>(m.depth_mse.size()) != v_count) {
    return Fail("rd-curve-size", "sigma2 and depth_mse need one entry per view");
  }
  const std::vector<Rate> levels = spec.grid.NonzeroLevels();
  for (int v = 0; v < v_count; ++v) {
    if (!(m.sigma2[v] >= 0.0)) {
      return Fail("rd-curve-nonnegative", "sigma2[" + std::to_string(v) + "]");
    }
    if (!(m.depth_mse[v] >= 0.0)) {
      return Fail("depth-distortion-nonnegative",
                  "depth_mse[" + std::to_string(v) + "]");
    }
    for (std::size_t i = 1; i < levels.size(); ++i) {
      const double lo = m.TextureMse(v, spec.grid.ToMb(levels[i - 1]));
      const double hi = m.TextureMse(v, spec.grid.ToMb(levels[i]));
      if (!(hi < lo)) {
        return Fail("rd-curve-decreasing",
                    "view " + std::to_string(v) + " at " +
                        Str(spec.grid.ToMb(levels[i])) + " Mb");
      }
    }
  }
  return std::nullopt;
}

std::optional<ValidationError> ValidateTable(const ScenarioSpec& spec,
                                             const DistortionTable& t) {
  const int levels = static_cast<int>(spec.grid.NonzeroLevels().size());
  if (t.positions != spec.position_count() || t.views != spec.view_count() ||
      t.levels != levels ||
      t.values.size() != static_cast<std::size_t>(t.positions) * t.views *
                             t.views * t.levels * t.levels) {
    return Fail("table-shape", "table dimensions do not match the scenario");
  }
  const auto& xs = spec.views.positions;
  const auto& us = spec.window.positions;
  for (int u = 0; u < t.positions; ++u) {
    for (int l = 0; l < t.views; ++l) {
      for (int r = l + 1; r < t.views; ++r) {
        if (us[u] < xs[l] - kCoordinateTolerance ||
            us[u] > xs[r] + kCoordinateTolerance) {
          continue;
        }
        for (int il = 0; il < levels; ++il) {
          for (int ir = 0; ir < levels; ++ir) {
            const double d = t.At(u, l, r, il, ir);
            if (!(d >= 0.0) || !std::isfinite(d)) {
              return Fail("table-values",
                          "entry (" + std::to_string(u) + ", " +
                              std::to_string(l) + ", " + std::to_string(r) +
                              ", " + std::to_string(il) + ", " +
                              std::to_string(ir) + ") missing or negative");
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<Rate> RateGrid::NonzeroLevels() const {
  std::vector<Rate> out;
  for (Rate level : levels) {
    if (level > 0) out.push_back(level);
  }
  return out;
}

int RateGrid::NonzeroIndex(Rate rate) const {
  int index = 0;
  for (Rate level : levels) {
    if (level <= 0) continue;
    if (level == rate) return index;
    ++index;
  }
  return -1;
}

const char* BudgetModeName(BudgetMode mode) {
  return mode == BudgetMode::kCumulative ? "cumulative" : "per-layer";
}

std::optional<BudgetMode> ParseBudgetMode(const std::string& name) {
  if (name == "cumulative") return BudgetMode::kCumulative;
  if (name == "per-layer") return BudgetMode::kPerLayer;
  return std::nullopt;
}

int LayerAssignment::LayerOf(ViewIndex view) const {
  for (int c = 0; c < layer_count(); ++c) {
    if (layers[c].count(view)) return c;
  }
  return -1;
}

Rate LayerAssignment::LayerRate(int layer) const {
  Rate total = 0;
  for (const auto& [view, rate] : layers.at(layer)) total += rate;
  return total;
}

Rate ScenarioSpec::MaxBudget() const {
  Rate best = 0;
  for (Rate b : clients.budgets) best = std::max(best, b);
  return best;
}

std::optional<ValidationError> Validate(const ScenarioSpec& spec) {
  if (auto error = ValidateStructure(spec)) return error;
  if (const auto* m = std::get_if<ParametricModel>(&spec.distortion)) {
    return ValidateParametric(spec, *m);
  }
  return ValidateTable(spec, std::get<DistortionTable>(spec.distortion));
}

std::optional<ValidationError> ValidateStructure(const ScenarioSpec& spec) {
  const auto& views = spec.views;
  if (views.count() < 2) {
    return Fail("view-count", "need at least 2 views, got " +
                                  std::to_string(views.count()));
  }
  for (int v = 1; v < views.count(); ++v) {
    if (!(views.positions[v] > views.positions[v - 1])) {
      return Fail("view-positions-increasing",
                  "position " + std::to_string(v) + " = " +
                      Str(views.positions[v]));
    }
  }
  if (!views.labels.empty() &&
      static_cast<int>(views.labels.size()) != views.count()) {
    return Fail("view-labels", "expected " + std::to_string(views.count()) +
                                   " labels");
  }

  const auto& window = spec.window;
  if (window.count() < 1) return Fail("window-endpoints", "empty window");
  if (std::abs(window.positions.front() - views.positions.front()) >
          kCoordinateTolerance ||
      std::abs(window.positions.back() - views.positions.back()) >
          kCoordinateTolerance) {
    return Fail("window-endpoints",
                "window must span [" + Str(views.positions.front()) + ", " +
                    Str(views.positions.back()) + "]");
  }
  if (!(window.spacing > 0.0)) {
    return Fail("window-spacing", "spacing " + Str(window.spacing));
  }
  for (int u = 1; u < window.count(); ++u) {
    const double gap = window.positions[u] - window.positions[u - 1];
    if (gap < window.spacing - kCoordinateTolerance) {
      return Fail("window-spacing", "gap " + Str(gap) + " before position " +
                                        std::to_string(u));
    }
  }
  if (window.popularity.size() != window.positions.size()) {
    return Fail("popularity-size", "one popularity value per position");
  }
  for (double q : window.popularity) {
    if (!(q >= 0.0)) return Fail("popularity-nonnegative", Str(q));
  }
  const double q_sum = std::accumulate(window.popularity.begin(),
                                       window.popularity.end(), 0.0);
  if (std::abs(q_sum - 1.0) > kSumTolerance) {
    return Fail("popularity-sum", "sum " + Str(q_sum));
  }

  const auto& grid = spec.grid;
  if (!(grid.quantum_mb > 0.0)) {
    return Fail("rate-quantum", Str(grid.quantum_mb));
  }
  if (grid.levels.empty() || grid.levels.front() != 0) {
    return Fail("rate-levels-zero", "levels " + Join(grid.levels));
  }
  for (std::size_t i = 1; i < grid.levels.size(); ++i) {
    if (grid.levels[i] <= grid.levels[i - 1]) {
      return Fail("rate-levels-increasing", "levels " + Join(grid.levels));
    }
  }
  if (grid.levels.size() < 2) {
    return Fail("rate-levels-increasing", "need a nonzero level");
  }

  const auto& clients = spec.clients;
  if (clients.layers() < 1) return Fail("layer-count", "no layers");
  for (Rate b : clients.budgets) {
    if (b <= 0) return Fail("budgets-positive", "budgets " + Join(clients.budgets));
  }
  if (clients.mode == BudgetMode::kCumulative) {
    for (int c = 1; c < clients.layers(); ++c) {
      if (clients.budgets[c] < clients.budgets[c - 1]) {
        return Fail("budgets-nondecreasing",
                    "budgets " + Join(clients.budgets));
      }
    }
  }
  if (static_cast<int>(clients.proportions.size()) != clients.layers()) {
    return Fail("proportions-size", "one proportion per layer");
  }
  for (double p : clients.proportions) {
    if (!(p >= 0.0)) return Fail("proportions-nonnegative", Str(p));
  }
  const double p_sum = std::accumulate(clients.proportions.begin(),
                                       clients.proportions.end(), 0.0);
  if (std::abs(p_sum - 1.0) > kSumTolerance) {
    return Fail("proportions-sum", "sum " + Str(p_sum));
  }
  return std::nullopt;
}

void ValidateOrThrow(const ScenarioSpec& spec) {
  if (auto error = Validate(spec)) throw *error;
}

Feasibility CheckFeasible(const ScenarioSpec& spec, const LayerAssignment& a) {
  const int v_count = spec.view_count();
  const int c_count = spec.layer_count();
  if (a.layer_count() != c_count) {
    return {false, "layer-count: assignment has " +
                       std::to_string(a.layer_count()) + " layers"};
  }
  std::vector<int> owner(v_count, -1);
  for (int c = 0; c < c_count; ++c) {
    for (const auto& [view, rate] : a.layers[c]) {
      if (view < 0 || view >= v_count) {
        return {false, "view-range: view " + std::to_string(view)};
      }
      if (rate <= 0 || spec.grid.NonzeroIndex(rate) < 0) {
        return {false, "rate-level: view " + std::to_string(view) + " rate " +
                           std::to_string(rate)};
      }
      if (owner[view] >= 0) {
        return {false, "layers-disjoint: view " + std::to_string(view)};
      }
      owner[view] = c;
    }
  }
  if (owner.front() != 0 || owner.back() != 0) {
    return {false, "endpoints-not-in-L1"};
  }
  Rate cumulative = 0;
  for (int c = 0; c < c_count; ++c) {
    const Rate layer_rate = a.LayerRate(c);
    cumulative += layer_rate;
    if (spec.clients.mode == BudgetMode::kCumulative) {
      if (cumulative > spec.clients.budgets[c]) {
        return {false, "cumulative-budget layer " + std::to_string(c + 1)};
      }
    } else if (layer_rate > spec.clients.budgets[c]) {
      return {false, "per-layer-budget layer " + std::to_string(c + 1)};
    }
  }
  return {};
}

std::vector<std::pair<ViewIndex, Rate>> PrefixViews(const LayerAssignment& a,
                                                    int layer_count) {
  if (layer_count < 1 || layer_count > a.layer_count()) {
    throw std::out_of_range("layer count " + std::to_string(layer_count));
  }
  std::vector<std::pair<ViewIndex, Rate>> out;
  for (int c = 0; c < layer_count; ++c) {
    out.insert(out.end(), a.layers[c].begin(), a.layers[c].end());
  }
  std::sort(out.begin(), out.end());
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].first == out[i - 1].first) {
      throw std::invalid_argument("view " + std::to_string(out[i].first) +
                                  " appears in two layers");
    }
  }
  return out;
}

std::vector<int> ViewPositionIndex(const ScenarioSpec& spec) {
  std::vector<int> out(spec.view_count(), -1);
  for (int v = 0; v < spec.view_count(); ++v) {
    for (int u = 0; u < spec.position_count(); ++u) {
      if (std::abs(spec.window.positions[u] - spec.views.positions[v]) <=
          kCoordinateTolerance) {
        out[v] = u;
        break;
      }
    }
  }
  return out;
}

}  // namespace imvs
