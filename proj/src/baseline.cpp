#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>

#include "imvs/solvers.hpp"

namespace imvs {

namespace {

// Sum over window positions of the distance to the nearest reference.
double DistanceCost(const ScenarioSpec& spec, const std::set<ViewIndex>& refs) {
  double total = 0.0;
  for (double x : spec.window.positions) {
    double nearest = std::numeric_limits<double>::infinity();
    for (ViewIndex v : refs) {
      nearest = std::min(nearest, std::abs(x - spec.views.positions[v]));
    }
    total += nearest;
  }
  return total;
}

// Visits every size-k subset of `pool` in lexicographic order.
template <typename Visit>
void ForEachCombination(const std::vector<ViewIndex>& pool, int k,
                        Visit&& visit) {
  const int n = static_cast<int>(pool.size());
  if (k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<ViewIndex> chosen(k);
  while (true) {
    for (int i = 0; i < k; ++i) chosen[i] = pool[idx[i]];
    visit(chosen);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

SolveResult SolveBaseline(const ScenarioSpec& spec,
                          const DistortionOracle& oracle) {
  const auto start = std::chrono::steady_clock::now();
  const int layers = spec.layer_count();
  const ViewIndex last = spec.view_count() - 1;
  const std::vector<Rate> levels = spec.grid.NonzeroLevels();
  const bool cumulative = spec.clients.mode == BudgetMode::kCumulative;

  LayerAssignment out;
  out.layers.resize(layers);
  std::set<ViewIndex> refs;
  Rate committed = 0;
  std::int64_t states = 0;

  for (int c = 0; c < layers; ++c) {
    const Rate residual =
        cumulative ? spec.clients.budgets[c] - committed : spec.clients.budgets[c];
    std::vector<ViewIndex> pool;
    for (ViewIndex v = 0; v <= last; ++v) {
      if (!refs.count(v) && (c > 0 || (v != 0 && v != last))) pool.push_back(v);
    }
    const int fixed = c == 0 ? 2 : 0;
    const int max_views = static_cast<int>(pool.size()) + fixed;

    // Largest n * r that fits; ties go to more views, then to the lower rate.
    int best_n = 0;
    Rate best_rate = 0;
    for (int n = std::max(1, fixed); n <= max_views; ++n) {
      for (Rate r : levels) {
        const Rate used = n * r;
        if (used > residual) break;
        const Rate best_used = best_n * best_rate;
        if (used > best_used || (used == best_used && n > best_n)) {
          best_n = n;
          best_rate = r;
        }
      }
    }
    if (best_n == 0) {
      if (c == 0) {
        throw InfeasibleError(
            "both endpoints cannot fit in the first layer budget");
      }
      continue;
    }

    std::vector<ViewIndex> best_pick;
    double best_cost = 0.0;
    bool picked = false;
    ForEachCombination(pool, best_n - fixed,
                       [&](const std::vector<ViewIndex>& pick) {
                         std::set<ViewIndex> trial = refs;
                         trial.insert(pick.begin(), pick.end());
                         if (c == 0) trial.insert({0, last});
                         const double cost = DistanceCost(spec, trial);
                         ++states;
                         if (!picked ||
                             cost < best_cost - kTieEpsilon *
                                                    std::max(1.0, best_cost)) {
                           picked = true;
                           best_cost = cost;
                           best_pick = pick;
                         }
                       });
    if (c == 0) best_pick.insert(best_pick.end(), {0, last});
    for (ViewIndex v : best_pick) {
      out.layers[c][v] = best_rate;
      refs.insert(v);
    }
    committed += out.LayerRate(c);
  }
  return internal::Finalize(spec, oracle, std::move(out), SolverId::kBaseline,
                            states, start);
}

}  // namespace imvs
