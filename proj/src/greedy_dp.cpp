#include <chrono>
#include <iterator>
#include <map>
#include <unordered_map>

#include "imvs/solvers.hpp"

namespace imvs {

namespace {

// Single-layer DP over the chain of references. Existing references (earlier
// layers, frozen rates) must be kept; new views may be inserted between them
// while the layer budget lasts. Minimizes the layer's D_c.
class LayerDp {
 public:
  LayerDp(const DistortionOracle& oracle, const std::map<ViewIndex, int>& fixed,
          ViewIndex last)
      : oracle_(oracle), fixed_(fixed), last_(last) {}

  double Value(ViewIndex left, int left_level, Rate budget) {
    if (left == last_) return 0.0;
    const std::uint64_t key = Key(left, left_level, budget);
    if (const auto it = memo_.find(key); it != memo_.end()) {
      return it->second.value;
    }
    const auto next = fixed_.upper_bound(left);
    const ViewIndex stop_view = next->first;
    const int stop_level = next->second;
    Entry best{oracle_.SegmentAt(left, stop_view, left_level, stop_level) +
                   Value(stop_view, stop_level, budget),
               -1, -1};
    const auto& levels = oracle_.levels();
    for (ViewIndex i = left + 1; i < stop_view; ++i) {
      for (int k = 0; k < static_cast<int>(levels.size()); ++k) {
        if (levels[k] > budget) break;
        const double candidate = oracle_.SegmentAt(left, i, left_level, k) +
                                 Value(i, k, budget - levels[k]);
        if (candidate < best.value - kTieEpsilon) best = Entry{candidate, i, k};
      }
    }
    memo_.emplace(key, best);
    return best.value;
  }

  /// Appends the views chosen from (left, level, budget) onwards.
  void Collect(ViewIndex left, int left_level, Rate budget,
               std::map<ViewIndex, Rate>& out) {
    while (left != last_) {
      Value(left, left_level, budget);
      const Entry e = memo_.at(Key(left, left_level, budget));
      if (e.view < 0) {
        const auto next = fixed_.upper_bound(left);
        left = next->first;
        left_level = next->second;
      } else {
        const Rate rate = oracle_.levels()[e.level];
        out[e.view] = rate;
        left = e.view;
        left_level = e.level;
        budget -= rate;
      }
    }
  }

  std::size_t states() const { return memo_.size(); }

 private:
  struct Entry {
    double value;
    ViewIndex view;
    int level;
  };

  std::uint64_t Key(ViewIndex left, int level, Rate budget) const {
    return (static_cast<std::uint64_t>(budget) * (last_ + 1) + left) *
               oracle_.level_count() +
           level;
  }

  const DistortionOracle& oracle_;
  const std::map<ViewIndex, int>& fixed_;
  ViewIndex last_;
  std::unordered_map<std::uint64_t, Entry> memo_;
};

}  // namespace

SolveResult SolveGreedy(const ScenarioSpec& spec,
                        const DistortionOracle& oracle) {
  const auto start = std::chrono::steady_clock::now();
  const int layers = spec.layer_count();
  const ViewIndex last = spec.view_count() - 1;
  const auto& levels = oracle.levels();
  const auto& budgets = spec.clients.budgets;
  const bool cumulative = spec.clients.mode == BudgetMode::kCumulative;

  LayerAssignment out;
  out.layers.resize(layers);
  std::int64_t states = 0;

  // Layer 1 also picks the endpoint rates.
  double best = 0.0;
  bool found = false;
  for (int il = 0; il < static_cast<int>(levels.size()); ++il) {
    for (int ir = 0; ir < static_cast<int>(levels.size()); ++ir) {
      const Rate endpoints = levels[il] + levels[ir];
      if (endpoints > budgets[0]) continue;
      const std::map<ViewIndex, int> fixed{{0, il}, {last, ir}};
      LayerDp dp(oracle, fixed, last);
      const double v = dp.Value(0, il, budgets[0] - endpoints);
      states += static_cast<std::int64_t>(dp.states());
      if (!found || v < best - kTieEpsilon) {
        best = v;
        found = true;
        std::map<ViewIndex, Rate> layer{{0, levels[il]}, {last, levels[ir]}};
        dp.Collect(0, il, budgets[0] - endpoints, layer);
        out.layers[0] = std::move(layer);
      }
    }
  }
  if (!found) {
    throw InfeasibleError("both endpoints cannot fit in the first layer budget");
  }

  Rate committed = out.LayerRate(0);
  for (int c = 1; c < layers; ++c) {
    std::map<ViewIndex, int> fixed;
    for (const auto& [view, rate] : PrefixViews(out, c)) {
      fixed[view] = oracle.LevelIndex(rate);
    }
    if (static_cast<int>(fixed.size()) == spec.view_count()) break;
    const Rate budget = cumulative ? budgets[c] - committed : budgets[c];
    LayerDp dp(oracle, fixed, last);
    dp.Value(0, fixed.at(0), budget);
    dp.Collect(0, fixed.at(0), budget, out.layers[c]);
    states += static_cast<std::int64_t>(dp.states());
    committed += out.LayerRate(c);
  }
  return internal::Finalize(spec, oracle, std::move(out), SolverId::kGreedy,
                            states, start);
}

}  // namespace imvs
