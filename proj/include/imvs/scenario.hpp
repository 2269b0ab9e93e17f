#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "imvs/model.hpp"

namespace imvs {

/// Current scenario document version.
inline constexpr int kScenarioSchemaVersion = 1;

/// Camera layouts of the four reference datasets. Distortion constants are
/// synthetic stand-ins; geometry, rate grids and budgets follow the datasets'
/// published settings.
enum class PresetId { kStatue, kBikes, kBallet, kUndoDancer };

const char* PresetName(PresetId id);
std::optional<PresetId> ParsePresetId(const std::string& name);
ScenarioSpec Preset(PresetId id);

/// Per-layer budget of the four-layer experiments for each preset, in Mb.
double PresetLayerBudgetMb(PresetId id);

enum class PopularityModel { kUniform, kExponential };

struct GeneratorConfig {
  /// When set, views, window and rate grid come from the preset and only the
  /// remaining fields below apply.
  std::optional<PresetId> shape;

  int views = 5;
  int positions = 9;
  double spacing = 1.0;

  PopularityModel popularity = PopularityModel::kUniform;
  double decay = 0.7;  // q_u proportional to decay^u

  int layers = 2;
  std::vector<double> budgets_mb;                    // explicit schedule
  std::optional<std::pair<double, double>> linear;   // B_c = x * c + y
  std::vector<double> proportions;                   // empty: uniform
  BudgetMode budget_mode = BudgetMode::kCumulative;

  std::vector<double> levels_mb{0.0, 1.0, 2.0};
  double quantum_mb = 1.0;

  // Distortion constants. a0 defaults to alpha_step per window spacing and
  // kappa to 2 / (largest rate in Mb).
  std::optional<double> a0;
  double alpha_step = 0.25;
  double a1 = 0.0;
  double g0 = 1.0;
  double inpaint = 1000.0;
  double sigma2_min = 25.0;
  double sigma2_max = 40.0;
  double depth_min = 1.0;
  double depth_max = 3.0;
  std::optional<double> kappa;
  double floor = 0.0;

  std::uint64_t seed = 0;
};

/// Deterministic in `cfg` (seed included). Throws std::invalid_argument for
/// an unusable configuration and ValidationError if the result is invalid.
ScenarioSpec GenerateScenario(const GeneratorConfig& cfg);

std::vector<double> UniformPopularity(int count);
/// Leftmost position most popular; consecutive ratio equals `decay`.
std::vector<double> ExponentialPopularity(int count, double decay);
/// B_c = x * c + y for c = 1..layers.
std::vector<double> LinearBudgetsMb(int layers, double x, double y);

/// Converts megabits to quantum units; ValidationError("rate-grid-multiple")
/// when `mb` is not an integer multiple of `quantum_mb`.
Rate ToQuantum(double mb, double quantum_mb, const std::string& field);

nlohmann::json ScenarioToJson(const ScenarioSpec& spec);
/// Parses and validates. Throws ParseError or ValidationError.
ScenarioSpec ScenarioFromJson(const nlohmann::json& doc);
ScenarioSpec LoadScenario(const std::string& path);
void SaveScenario(const ScenarioSpec& spec, const std::string& path);

/// Copy of `spec` whose distortion is the dense table of its current oracle.
ScenarioSpec Tabulated(const ScenarioSpec& spec);

}  // namespace imvs
