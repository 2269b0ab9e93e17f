#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "imvs/model.hpp"
#include "imvs/solvers.hpp"

namespace imvs {

inline constexpr double kDefaultPeak = 255.0;

/// 10 * log10(peak^2 / mse). Throws std::domain_error unless mse > 0.
double PsnrDb(double mse, double peak = kDefaultPeak);

struct ClusterQuality {
  int cluster = 0;  // 1-based: clients receiving layers 1..cluster
  double mse = 0.0;
  double psnr_db = 0.0;
};

/// Expected quality of each client cluster, from the result's D_c.
std::vector<ClusterQuality> ClusterQualityReport(const ScenarioSpec& spec,
                                                 const SolveResult& result,
                                                 double peak = kDefaultPeak);

/// A layer as per-view rates in Mb, e.g. "{2 0 2 0 2 0 2}".
std::string FormatLayer(const ScenarioSpec& spec,
                        const std::map<ViewIndex, Rate>& layer);

/// One scenario and the results of every solver run on it.
struct ScenarioRun {
  std::string id;
  ScenarioSpec spec;
  std::vector<SolveResult> results;
};

struct Report {
  std::vector<ScenarioRun> runs;
  double peak = kDefaultPeak;
  bool timing = true;  // false writes 0 for wall times
};

/// Human-readable per-scenario tables.
void WriteTable(std::ostream& out, const Report& report);

/// Column order of WriteCsv.
inline constexpr const char* kCsvHeader =
    "scenario_id,solver,layer,view_index,rate_mb,d_c_mse,d_c_db,objective_db,"
    "wall_ms";

/// One row per transmitted view (empty layers get one row with blank view
/// and rate).
void WriteCsv(std::ostream& out, const Report& report);

struct SolverSummary {
  std::string solver;
  int scenarios = 0;
  double mean_objective_mse = 0.0;
  double mean_objective_db = 0.0;     // mean of per-scenario objective PSNR
  std::vector<double> mean_cluster_db;  // per cluster, mean over scenarios
};

/// Batch means per solver, sorted by solver name. All runs must share C.
std::vector<SolverSummary> Summarize(const Report& report);

void WriteSummaryTable(std::ostream& out, const Report& report);

inline constexpr const char* kClusterCsvHeader =
    "solver,cluster,mean_psnr_db,population_psnr_db";

/// C rows per solver: mean per-cluster PSNR plus the population average.
void WriteClusterCsv(std::ostream& out, const Report& report);

}  // namespace imvs
