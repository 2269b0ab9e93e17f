#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "imvs/distortion.hpp"
#include "imvs/report.hpp"
#include "imvs/scenario.hpp"
#include "test_specs.hpp"

namespace imvs {
namespace {

std::vector<std::string> Split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

TEST(Psnr, Definition) {
  EXPECT_NEAR(PsnrDb(255.0 * 255.0), 0.0, 1e-12);
  EXPECT_NEAR(PsnrDb(1.0), 20.0 * std::log10(255.0), 1e-12);
  EXPECT_NEAR(PsnrDb(4.0, 1023.0), 10.0 * std::log10(1023.0 * 1023.0 / 4.0),
              1e-12);
  EXPECT_THROW(PsnrDb(0.0), std::domain_error);
}

TEST(Psnr, HalvingDistortionAddsThreeDb) {
  EXPECT_NEAR(PsnrDb(50.0) - PsnrDb(100.0), 3.0103, 1e-4);
}

TEST(Psnr, TableFixture) {
  const double mse = 255.0 * 255.0 / std::pow(10.0, 2.956);
  char text[16];
  std::snprintf(text, sizeof(text), "%.2f", PsnrDb(mse));
  EXPECT_STREQ(text, "29.56");
}

TEST(ClusterQuality, SingleLayerEqualsObjective) {
  const ScenarioSpec spec = testing::LineSpec(4, {0, 1, 2}, {5});
  const SolveResult r = SolveGreedy(spec, DistortionOracle(spec));
  const auto rows = ClusterQualityReport(spec, r);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].cluster, 1);
  EXPECT_DOUBLE_EQ(rows[0].psnr_db, PsnrDb(r.objective));
}

TEST(ClusterQuality, FourLayersNondecreasing) {
  const ScenarioSpec spec = Preset(PresetId::kUndoDancer);
  const DistortionOracle oracle(spec);
  for (SolverId id : {SolverId::kGreedy, SolverId::kBaseline}) {
    const auto rows = ClusterQualityReport(spec, Solve(id, spec, oracle));
    ASSERT_EQ(rows.size(), 4u);
    for (std::size_t c = 1; c < rows.size(); ++c) {
      EXPECT_GE(rows[c].psnr_db, rows[c - 1].psnr_db);
    }
  }
}

TEST(FormatLayer, RatesInMegabits) {
  const ScenarioSpec spec = Preset(PresetId::kStatue);
  const std::map<ViewIndex, Rate> layer{{0, 1}, {2, 1}, {4, 1}, {6, 1}};
  EXPECT_EQ(FormatLayer(spec, layer), "{2 0 2 0 2 0 2}");
  const ScenarioSpec ballet = Preset(PresetId::kBallet);
  EXPECT_EQ(FormatLayer(ballet, {{0, 15}, {6, 30}}), "{0.15 0 0 0 0 0 0.3}");
}

TEST(Csv, RowsAndRoundTrip) {
  const ScenarioSpec spec = Preset(PresetId::kBikes);
  const DistortionOracle oracle(spec);
  Report report;
  report.timing = false;
  report.runs.push_back({"bikes", spec,
                         {SolveBaseline(spec, oracle),
                          SolveGreedy(spec, oracle)}});
  std::ostringstream out;
  WriteCsv(out, report);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kCsvHeader);
  int rows = 0;
  while (std::getline(in, line)) {
    const auto cells = Split(line);
    ASSERT_EQ(cells.size(), 9u) << line;
    const double mse = std::stod(cells[5]);
    EXPECT_NEAR(PsnrDb(mse), std::stod(cells[6]), 0.005);
    EXPECT_EQ(cells[8], "0.000");
    ++rows;
  }
  EXPECT_GT(rows, 0);
}

TEST(ClusterCsv, RowsPerSolver) {
  const ScenarioSpec spec = Preset(PresetId::kBallet);
  const DistortionOracle oracle(spec);
  Report report;
  report.runs.push_back({"ballet", spec,
                         {SolveBaseline(spec, oracle),
                          SolveGreedy(spec, oracle)}});
  std::ostringstream out;
  WriteClusterCsv(out, report);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kClusterCsvHeader);
  std::map<std::string, std::vector<double>> by_solver;
  while (std::getline(in, line)) {
    const auto cells = Split(line);
    by_solver[cells[0]].push_back(std::stod(cells[2]));
  }
  ASSERT_EQ(by_solver.size(), 2u);
  for (const auto& [solver, psnr] : by_solver) {
    ASSERT_EQ(psnr.size(), 4u) << solver;
    for (std::size_t c = 1; c < psnr.size(); ++c) {
      EXPECT_GE(psnr[c], psnr[c - 1]) << solver;
    }
  }
}

}  // namespace
}  // namespace imvs
