#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "imvs/distortion.hpp"
#include "imvs/scenario.hpp"
#include "support/suite.hpp"
#include "test_specs.hpp"

namespace imvs {
namespace {

using testing::LineSpec;

TEST(SynthDistortion, NoDisocclusionUsesFirstReference) {
  EXPECT_EQ(SynthDistortion({0.0, 0.0, 100.0}, 10.0, 20.0), 10.0);
}

TEST(SynthDistortion, FullDisocclusionIsInpainting) {
  EXPECT_EQ(SynthDistortion({1.0, 1.0, 100.0}, 10.0, 20.0), 100.0);
}

TEST(SynthDistortion, MixedTerms) {
  EXPECT_NEAR(SynthDistortion({0.3, 0.2, 100.0}, 10.0, 20.0), 17.8, 1e-12);
}

TEST(SynthDistortion, RejectsOutOfDomain) {
  EXPECT_THROW(SynthDistortion({1.2, 0.0, 1.0}, 1.0, 1.0), std::domain_error);
  EXPECT_THROW(SynthDistortion({0.5, 0.5, 1.0}, -1.0, 1.0), std::domain_error);
}

// Views at 0 and 2 with a rendered position between them.
ScenarioSpec ThreePositions() {
  ScenarioSpec spec = LineSpec(3, {0, 1, 2}, {6});
  spec.views.positions = {0.0, 2.0};
  spec.views.labels = {"0", "2"};
  auto& model = std::get<ParametricModel>(spec.distortion);
  model.sigma2 = {30.0, 36.0};
  model.depth_mse = {1.5, 2.5};
  model.a1 = 0.0;
  ValidateOrThrow(spec);
  return spec;
}

TEST(Point, OnReferenceIsCodedDistortion) {
  const ScenarioSpec spec = ThreePositions();
  const DistortionOracle oracle(spec);
  const auto& model = std::get<ParametricModel>(spec.distortion);
  EXPECT_DOUBLE_EQ(oracle.Point(0, 0, 2, 1, 1), model.CodedMse(0, 2.0));
  EXPECT_DOUBLE_EQ(oracle.Point(2, 0, 2, 1, 1), model.CodedMse(1, 1.0));
}

TEST(Point, MidpointTieTakesLeftAsFirst) {
  const ScenarioSpec spec = ThreePositions();
  const DistortionOracle oracle(spec);
  const auto& model = std::get<ParametricModel>(spec.distortion);
  const double d_left = model.CodedMse(0, 1.0);
  const double d_right = model.CodedMse(1, 2.0);
  const double alpha = model.a0 * 2.0;
  const double gamma = model.g0 * alpha;
  const double by_hand = (1 - alpha) * d_left + (1 - gamma) * alpha * d_right +
                         gamma * alpha * model.inpaint;
  EXPECT_NEAR(oracle.Point(1, 0, 1, 1, 2), by_hand, 1e-12);
}

TEST(Point, GenericInteriorMatchesHandEvaluation) {
  ScenarioSpec spec = LineSpec(3, {0, 1, 2}, {6});
  spec.window.positions = {0.0, 1.0, 2.0, 3.0, 4.0};
  spec.window.popularity = UniformPopularity(5);
  spec.views.positions = {0.0, 1.0, 4.0};
  auto& model = std::get<ParametricModel>(spec.distortion);
  model.a1 = 0.02;
  ValidateOrThrow(spec);
  const DistortionOracle oracle(spec);
  // u = 3 lies nearer view 2 (x=4) than view 1 (x=1).
  const double first = model.CodedMse(2, 1.0);
  const double second = model.CodedMse(1, 2.0);
  const double alpha = model.a0 * 3.0 + 0.02 * model.Noise(3, 1, 2);
  const double gamma = model.g0 * alpha;
  const double by_hand = (1 - alpha) * first + (1 - gamma) * alpha * second +
                         gamma * alpha * model.inpaint;
  EXPECT_NEAR(oracle.Point(3, 1, 2, 2, 1), by_hand, 1e-12);
}

TEST(Point, RejectsBadArguments) {
  const DistortionOracle oracle(ThreePositions());
  EXPECT_THROW(oracle.Point(1, 1, 1, 0, 1), std::invalid_argument);
  EXPECT_THROW(oracle.Point(7, 0, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(oracle.Point(1, 0, 3, 1, 1), std::invalid_argument);
}

TEST(Segment, SinglePositionOnLeftReference) {
  ScenarioSpec spec = ThreePositions();
  spec.window.positions = {0.0, 2.0};
  spec.window.popularity = {0.4, 0.6};
  spec.window.spacing = 2.0;
  ScenarioSpec three_views = spec;
  three_views.views.positions = {0.0, 1.0, 2.0};
  three_views.views.labels = {"a", "b", "c"};
  auto& model = std::get<ParametricModel>(three_views.distortion);
  model.sigma2 = {30.0, 33.0, 36.0};
  model.depth_mse = {1.5, 2.0, 2.5};
  ValidateOrThrow(three_views);
  const DistortionOracle oracle(three_views);
  EXPECT_DOUBLE_EQ(oracle.Segment(0, 1, 2, 1), 0.4 * model.CodedMse(0, 2.0));
}

TEST(Segment, EmptyRangeIsZero) {
  ScenarioSpec spec = LineSpec(4, {0, 1}, {4});
  spec.views.positions = {0.0, 1.2, 1.6, 3.0};
  ValidateOrThrow(spec);
  const DistortionOracle oracle(spec);
  EXPECT_EQ(oracle.Segment(1, 2, 1, 1), 0.0);
}

TEST(Segment, ThreeInteriorPositionsUniform) {
  ScenarioSpec spec = LineSpec(2, {0, 1, 2}, {4});
  spec.window.positions = {0.0, 1.0, 2.0, 3.0, 4.0};
  spec.window.popularity = UniformPopularity(5);
  spec.views.positions = {0.0, 4.0};
  ValidateOrThrow(spec);
  const DistortionOracle oracle(spec);
  double expected = 0.0;
  for (int u = 0; u < 5; ++u) expected += 0.2 * oracle.Point(u, 0, 2, 1, 1);
  EXPECT_NEAR(oracle.Segment(0, 1, 2, 1), expected, 1e-12);
}

TEST(LayerDistortion, EndpointsOnlySynthesizeEverything) {
  ScenarioSpec spec = LineSpec(4, {0, 1, 2}, {4});
  const DistortionOracle oracle(spec);
  LayerAssignment a;
  a.layers = {{{0, 2}, {3, 1}}};
  double expected = 0.0;
  for (int u = 0; u < 4; ++u) {
    expected += spec.window.popularity[u] * oracle.Point(u, 0, 2, 3, 1);
  }
  EXPECT_NEAR(LayerDistortion(oracle, spec, a, 1), expected, 1e-12);
}

TEST(LayerDistortion, AllPositionsTransmitted) {
  const ScenarioSpec spec = LineSpec(4, {0, 1, 2}, {8});
  const auto& model = std::get<ParametricModel>(spec.distortion);
  const DistortionOracle oracle(spec);
  LayerAssignment a;
  a.layers = {{{0, 2}, {1, 1}, {2, 2}, {3, 1}}};
  double expected = 0.0;
  for (int v = 0; v < 4; ++v) {
    expected += 0.25 * model.CodedMse(v, a.layers[0].at(v));
  }
  EXPECT_NEAR(LayerDistortion(oracle, spec, a, 1), expected, 1e-12);
}

TEST(LayerDistortion, RejectsInfeasibleAssignment) {
  const ScenarioSpec spec = LineSpec(4, {0, 1, 2}, {4});
  const DistortionOracle oracle(spec);
  LayerAssignment a;
  a.layers = {{{1, 2}}};
  EXPECT_THROW(LayerDistortion(oracle, spec, a, 1), std::invalid_argument);
}

TEST(LayerDistortion, TelescopingMatchesDirectSum) {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const ScenarioSpec spec = testing::SuiteInstance(seed);
    const LayerAssignment a = testing::RandomFeasibleAssignment(spec, rng);
    if (a.layers.empty()) continue;
    const DistortionOracle oracle(spec);
    for (int c = 1; c <= spec.layer_count(); ++c) {
      EXPECT_NEAR(LayerDistortion(oracle, spec, a, c),
                  testing::DirectLayerDistortion(spec, a, c), 1e-9)
          << "seed " << seed << " layer " << c;
    }
    ++checked;
  }
  EXPECT_GT(checked, 150);
}

TEST(Objective, WeightsLayerDistortions) {
  ScenarioSpec spec = LineSpec(5, {0, 1, 2}, {4, 6}, {0.5, 0.5});
  const DistortionOracle oracle(spec);
  LayerAssignment a;
  a.layers = {{{0, 2}, {4, 2}}, {{2, 2}}};
  const double d1 = LayerDistortion(oracle, spec, a, 1);
  const double d2 = LayerDistortion(oracle, spec, a, 2);
  EXPECT_NEAR(Objective(oracle, spec, a), 0.5 * d1 + 0.5 * d2, 1e-12);

  // Iterative form: D_C plus the extra distortion carried by smaller
  // clusters, weighted by how many clients stop there.
  EXPECT_NEAR(Objective(oracle, spec, a), d2 + 0.5 * (d1 - d2), 1e-12);

  spec.clients.proportions = {0.0, 1.0};
  EXPECT_NEAR(Objective(oracle, spec, a), d2, 1e-12);

  const ScenarioSpec one = testing::FirstLayerOnly(spec);
  LayerAssignment single;
  single.layers = {a.layers[0]};
  EXPECT_NEAR(Objective(oracle, one, single), d1, 1e-12);
}

// Inserting a reference between two others never raises the distortion of
// any position it now bounds. Solvers that skip views rely on it.
void ExpectInsertionMonotone(const ScenarioSpec& spec) {
  const DistortionOracle oracle(spec);
  const auto& xs = spec.views.positions;
  const auto& us = spec.window.positions;
  const auto levels = spec.grid.NonzeroLevels();
  for (int l = 0; l < spec.view_count(); ++l) {
    for (int r = l + 2; r < spec.view_count(); ++r) {
      for (int i = l + 1; i < r; ++i) {
        for (Rate rl : levels) {
          for (Rate rr : levels) {
            for (Rate ri : levels) {
              for (int u = 0; u < spec.position_count(); ++u) {
                if (us[u] < xs[l] - 1e-9 || us[u] > xs[r] + 1e-9) continue;
                const double before = oracle.Point(u, l, rl, r, rr);
                const double after = us[u] <= xs[i]
                                         ? oracle.Point(u, l, rl, i, ri)
                                         : oracle.Point(u, i, ri, r, rr);
                ASSERT_LE(after, before + 1e-9)
                    << spec.name << " u=" << u << " l=" << l << " i=" << i
                    << " r=" << r;
              }
            }
          }
        }
      }
    }
  }
}

TEST(Monotonicity, InsertionNeverHurtsOnPresets) {
  for (PresetId id : {PresetId::kStatue, PresetId::kBikes, PresetId::kBallet,
                      PresetId::kUndoDancer}) {
    ExpectInsertionMonotone(Preset(id));
  }
}

TEST(Monotonicity, InsertionNeverHurtsOnSuite) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ExpectInsertionMonotone(testing::SuiteInstance(seed));
  }
}

TEST(Monotonicity, MoreRateNeverHurts) {
  for (PresetId id : {PresetId::kStatue, PresetId::kBikes, PresetId::kBallet,
                      PresetId::kUndoDancer}) {
    const ScenarioSpec spec = Preset(id);
    const DistortionOracle oracle(spec);
    const auto levels = spec.grid.NonzeroLevels();
    const int last = spec.view_count() - 1;
    for (int u = 0; u < spec.position_count(); ++u) {
      for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
        for (Rate other : levels) {
          EXPECT_LE(oracle.Point(u, 0, levels[k + 1], last, other),
                    oracle.Point(u, 0, levels[k], last, other) + 1e-12);
          EXPECT_LE(oracle.Point(u, 0, other, last, levels[k + 1]),
                    oracle.Point(u, 0, other, last, levels[k]) + 1e-12);
        }
      }
    }
  }
}

TEST(Tabulated, MatchesParametricOracle) {
  const ScenarioSpec spec = Preset(PresetId::kUndoDancer);
  const ScenarioSpec table = Tabulated(spec);
  const DistortionOracle a(spec);
  const DistortionOracle b(table);
  const auto levels = spec.grid.NonzeroLevels();
  for (int l = 0; l < spec.view_count(); ++l) {
    for (int r = l + 1; r < spec.view_count(); ++r) {
      for (Rate rl : levels) {
        for (Rate rr : levels) {
          EXPECT_DOUBLE_EQ(a.Segment(l, r, rl, rr), b.Segment(l, r, rl, rr));
        }
      }
    }
  }
}

}  // namespace
}  // namespace imvs
