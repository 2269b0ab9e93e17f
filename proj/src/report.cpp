#include "imvs/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace imvs {

namespace {

std::string Fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

std::string Mb(const ScenarioSpec& spec, Rate rate) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", spec.grid.ToMb(rate));
  return buf;
}

}  // namespace

double PsnrDb(double mse, double peak) {
  if (!(mse > 0.0)) throw std::domain_error("PSNR needs a positive MSE");
  return 10.0 * std::log10(peak * peak / mse);
}

std::vector<ClusterQuality> ClusterQualityReport(const ScenarioSpec& spec,
                                                 const SolveResult& result,
                                                 double peak) {
  std::vector<ClusterQuality> out;
  for (int c = 0; c < spec.layer_count(); ++c) {
    const double mse = result.layer_distortion.at(c);
    out.push_back({c + 1, mse, PsnrDb(mse, peak)});
  }
  return out;
}

std::string FormatLayer(const ScenarioSpec& spec,
                        const std::map<ViewIndex, Rate>& layer) {
  std::string out = "{";
  for (ViewIndex v = 0; v < spec.view_count(); ++v) {
    if (v) out += ' ';
    const auto it = layer.find(v);
    out += it == layer.end() ? "0" : Mb(spec, it->second);
  }
  return out + "}";
}

void WriteTable(std::ostream& out, const Report& report) {
  for (const ScenarioRun& run : report.runs) {
    const ScenarioSpec& spec = run.spec;
    out << "scenario " << run.id << "  V=" << spec.view_count()
        << " U=" << spec.position_count() << " C=" << spec.layer_count()
        << " budgets(" << BudgetModeName(spec.clients.mode) << ")=[";
    for (int c = 0; c < spec.layer_count(); ++c) {
      out << (c ? " " : "") << Mb(spec, spec.clients.budgets[c]);
    }
    out << "] Mb\n";
    for (const SolveResult& result : run.results) {
      out << "  solver " << SolverName(result.solver) << "  states "
          << result.states_expanded << "  time "
          << Fixed(report.timing ? result.wall_ms : 0.0, 3) << " ms\n";
      for (int c = 0; c < spec.layer_count(); ++c) {
        out << "    L" << c + 1 << " = "
            << FormatLayer(spec, result.assignment.layers[c]) << '\n';
      }
      out << "    cluster  D_c(MSE)      Y-PSNR(dB)\n";
      for (const ClusterQuality& q :
           ClusterQualityReport(spec, result, report.peak)) {
        char line[128];
        std::snprintf(line, sizeof(line), "    %-8d %-13.6f %.4f\n", q.cluster,
                      q.mse, q.psnr_db);
        out << line;
      }
      out << "    objective " << Fixed(result.objective, 6) << " MSE  "
          << Fixed(PsnrDb(result.objective, report.peak), 4) << " dB\n";
    }
  }
}

void WriteCsv(std::ostream& out, const Report& report) {
  out << kCsvHeader << '\n';
  for (const ScenarioRun& run : report.runs) {
    const ScenarioSpec& spec = run.spec;
    for (const SolveResult& result : run.results) {
      const std::string tail =
          Fixed(PsnrDb(result.objective, report.peak), 4) + "," +
          Fixed(report.timing ? result.wall_ms : 0.0, 3);
      for (int c = 0; c < spec.layer_count(); ++c) {
        const double d = result.layer_distortion[c];
        const std::string head = run.id + "," + SolverName(result.solver) +
                                 "," + std::to_string(c + 1) + ",";
        const std::string mid = "," + Fixed(d, 6) + "," +
                                Fixed(PsnrDb(d, report.peak), 4) + "," + tail;
        const auto& layer = result.assignment.layers[c];
        if (layer.empty()) {
          out << head << "," << mid << '\n';
          continue;
        }
        for (const auto& [view, rate] : layer) {
          out << head << view << "," << Mb(spec, rate) << mid << '\n';
        }
      }
    }
  }
}

std::vector<SolverSummary> Summarize(const Report& report) {
  std::map<std::string, SolverSummary> by_name;
  for (const ScenarioRun& run : report.runs) {
    for (const SolveResult& result : run.results) {
      SolverSummary& s = by_name[SolverName(result.solver)];
      s.solver = SolverName(result.solver);
      if (s.mean_cluster_db.empty()) {
        s.mean_cluster_db.assign(run.spec.layer_count(), 0.0);
      }
      if (static_cast<int>(s.mean_cluster_db.size()) !=
          run.spec.layer_count()) {
        throw std::invalid_argument("batch mixes layer counts");
      }
      ++s.scenarios;
      s.mean_objective_mse += result.objective;
      s.mean_objective_db += PsnrDb(result.objective, report.peak);
      for (const ClusterQuality& q :
           ClusterQualityReport(run.spec, result, report.peak)) {
        s.mean_cluster_db[q.cluster - 1] += q.psnr_db;
      }
    }
  }
  std::vector<SolverSummary> out;
  for (auto& [name, s] : by_name) {
    s.mean_objective_mse /= s.scenarios;
    s.mean_objective_db /= s.scenarios;
    for (double& db : s.mean_cluster_db) db /= s.scenarios;
    out.push_back(std::move(s));
  }
  return out;
}

void WriteSummaryTable(std::ostream& out, const Report& report) {
  const auto summaries = Summarize(report);
  out << "batch of " << report.runs.size() << " scenario(s)\n";
  out << "solver      objective(MSE)  objective(dB)";
  if (!summaries.empty()) {
    for (std::size_t c = 0; c < summaries.front().mean_cluster_db.size(); ++c) {
      out << "  L1.." << c + 1 << "(dB)";
    }
  }
  out << '\n';
  for (const SolverSummary& s : summaries) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-11s %-15.6f %-13.4f", s.solver.c_str(),
                  s.mean_objective_mse, s.mean_objective_db);
    out << line;
    for (double db : s.mean_cluster_db) out << "  " << Fixed(db, 4) << "   ";
    out << '\n';
  }
}

void WriteClusterCsv(std::ostream& out, const Report& report) {
  out << kClusterCsvHeader << '\n';
  for (const SolverSummary& s : Summarize(report)) {
    for (std::size_t c = 0; c < s.mean_cluster_db.size(); ++c) {
      out << s.solver << ',' << c + 1 << ',' << Fixed(s.mean_cluster_db[c], 4)
          << ',' << Fixed(s.mean_objective_db, 4) << '\n';
    }
  }
}

}  // namespace imvs
