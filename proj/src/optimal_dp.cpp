#include "imvs/optimal_dp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "imvs/solvers.hpp"

namespace imvs {

namespace {

// Calls `visit` for every vector 0 <= split <= caps in lexicographic order;
// with `nondecreasing`, only vectors whose entries never decrease.
void ForEachSplit(const std::vector<Rate>& caps, bool nondecreasing,
                  const std::function<void(const std::vector<Rate>&)>& visit) {
  std::vector<Rate> split(caps.size(), 0);
  std::function<void(std::size_t)> fill = [&](std::size_t j) {
    if (j == caps.size()) {
      visit(split);
      return;
    }
    const Rate lo = (nondecreasing && j > 0) ? split[j - 1] : 0;
    for (Rate b = lo; b <= caps[j]; ++b) {
      split[j] = b;
      fill(j + 1);
    }
  };
  fill(0);
}

}  // namespace

OptimalDp::OptimalDp(const ScenarioSpec& spec, const DistortionOracle& oracle)
    : spec_(spec),
      oracle_(oracle),
      layers_(spec.layer_count()),
      proportions_(spec.clients.proportions),
      levels_(spec.grid.NonzeroLevels()),
      cumulative_(spec.clients.mode == BudgetMode::kCumulative),
      radix_budget_(static_cast<std::uint64_t>(spec.MaxBudget()) + 1) {
  const long double key_space =
      static_cast<long double>(layers_) * spec.view_count() *
      spec.view_count() * levels_.size() * levels_.size() *
      std::pow(static_cast<long double>(radix_budget_), layers_);
  if (key_space >= 0x1.0p64L) {
    throw SizeGuardExceeded("optimal DP state key does not fit 64 bits",
                            static_cast<double>(key_space), 0x1.0p64);
  }
}

void OptimalDp::Normalize(std::vector<Rate>& residual) const {
  if (!cumulative_) return;
  for (std::size_t j = residual.size(); j-- > 1;) {
    residual[j - 1] = std::min(residual[j - 1], residual[j]);
  }
}

std::uint64_t OptimalDp::Key(const DpState& s) const {
  const std::uint64_t v = spec_.view_count();
  const std::uint64_t r = levels_.size();
  std::uint64_t key = s.layer;
  key = key * v + s.left;
  key = key * v + s.right;
  key = key * r + s.left_level;
  key = key * r + s.right_level;
  // Fixed digit count: states of different layers must not collide.
  for (std::size_t j = s.residual.size(); j < static_cast<std::size_t>(layers_);
       ++j) {
    key *= radix_budget_;
  }
  for (Rate b : s.residual) key = key * radix_budget_ + b;
  return key;
}

double OptimalDp::Value(const DpState& state) {
  if (state.layer >= layers_) return 0.0;
  DpState s = state;
  Normalize(s.residual);
  const std::uint64_t key = Key(s);
  if (const auto it = table_.find(key); it != table_.end()) {
    return it->second.value;
  }
  return Compute(s);
}

double OptimalDp::Compute(const DpState& s) {
  const int c = s.layer;
  const double weight = proportions_[c];
  const std::vector<Rate> tail(s.residual.begin() + 1, s.residual.end());

  DpState next{c + 1, s.left, s.right, s.left_level, s.right_level, tail};
  Entry best{weight * oracle_.SegmentAt(s.left, s.right, s.left_level,
                                        s.right_level) +
                 Value(next),
             DpDecision{}};

  for (ViewIndex i = s.left + 1; i < s.right; ++i) {
    for (int k = 0; k < static_cast<int>(levels_.size()); ++k) {
      const Rate rate = levels_[k];
      if (rate > s.residual[0]) break;
      std::vector<Rate> after = s.residual;
      if (cumulative_) {
        for (Rate& b : after) b -= rate;
      } else {
        after[0] -= rate;
      }
      const double head =
          weight * oracle_.SegmentAt(s.left, i, s.left_level, k);
      const std::vector<Rate> caps(after.begin() + 1, after.end());
      ForEachSplit(caps, cumulative_, [&](const std::vector<Rate>& split) {
        const double left_value =
            Value({c + 1, s.left, i, s.left_level, k, split});
        std::vector<Rate> right_residual = after;
        for (std::size_t j = 0; j < split.size(); ++j) {
          right_residual[j + 1] -= split[j];
        }
        const double right_value =
            Value({c, i, s.right, k, s.right_level, right_residual});
        const double candidate = head + left_value + right_value;
        if (candidate < best.value - kTieEpsilon) {
          best = Entry{candidate, DpDecision{i, k, split}};
        }
      });
    }
  }
  const double value = best.value;
  table_.emplace(Key(s), std::move(best));
  return value;
}

void OptimalDp::Collect(const DpState& state, LayerAssignment& out) {
  if (state.layer >= layers_) return;
  DpState s = state;
  Normalize(s.residual);
  Value(s);
  const DpDecision decision = table_.at(Key(s)).decision;
  const int c = s.layer;
  if (decision.view < 0) {
    Collect({c + 1, s.left, s.right, s.left_level, s.right_level,
             std::vector<Rate>(s.residual.begin() + 1, s.residual.end())},
            out);
    return;
  }
  const Rate rate = levels_[decision.level];
  out.layers[c][decision.view] = rate;
  std::vector<Rate> after = s.residual;
  if (cumulative_) {
    for (Rate& b : after) b -= rate;
  } else {
    after[0] -= rate;
  }
  Collect({c + 1, s.left, decision.view, s.left_level, decision.level,
           decision.split},
          out);
  for (std::size_t j = 0; j < decision.split.size(); ++j) {
    after[j + 1] -= decision.split[j];
  }
  Collect({c, decision.view, s.right, decision.level, s.right_level, after},
          out);
}

LayerAssignment OptimalDp::Solve(double* value) {
  const ViewIndex last = spec_.view_count() - 1;
  const std::vector<Rate>& budgets = spec_.clients.budgets;
  double best = std::numeric_limits<double>::infinity();
  DpState best_root;
  bool found = false;
  for (int il = 0; il < static_cast<int>(levels_.size()); ++il) {
    for (int ir = 0; ir < static_cast<int>(levels_.size()); ++ir) {
      const Rate endpoints = levels_[il] + levels_[ir];
      std::vector<Rate> residual = budgets;
      Normalize(residual);
      if (endpoints > residual[0]) continue;
      if (cumulative_) {
        for (Rate& b : residual) b -= endpoints;
      } else {
        residual[0] -= endpoints;
      }
      DpState root{0, 0, last, il, ir, residual};
      const double v = Value(root);
      if (!found || v < best - kTieEpsilon) {
        best = v;
        best_root = root;
        found = true;
      }
    }
  }
  if (!found) {
    throw InfeasibleError("both endpoints cannot fit in the first layer budget");
  }
  LayerAssignment out;
  out.layers.resize(layers_);
  out.layers[0][0] = levels_[best_root.left_level];
  out.layers[0][last] = levels_[best_root.right_level];
  Collect(best_root, out);
  if (value) *value = best;
  return out;
}

double OptimalStateEstimate(const ScenarioSpec& spec) {
  const double v = spec.view_count();
  return v * v *
         std::pow(static_cast<double>(spec.MaxBudget()),
                  spec.layer_count() + 2);
}

SolveResult SolveOptimal(const ScenarioSpec& spec,
                         const DistortionOracle& oracle,
                         const SolverOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const double estimate = OptimalStateEstimate(spec);
  if (estimate > options.optimal_state_cap) {
    throw SizeGuardExceeded("optimal DP state estimate " +
                                std::to_string(estimate) + " exceeds cap " +
                                std::to_string(options.optimal_state_cap),
                            estimate, options.optimal_state_cap);
  }
  OptimalDp dp(spec, oracle);
  LayerAssignment assignment = dp.Solve();
  return internal::Finalize(spec, oracle, std::move(assignment),
                            SolverId::kOptimal,
                            static_cast<std::int64_t>(dp.states()), start);
}

}  // namespace imvs
