#include "imvs/cli.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "CLI11.hpp"

#include "imvs/distortion.hpp"
#include "imvs/errors.hpp"
#include "imvs/report.hpp"
#include "imvs/scenario.hpp"
#include "imvs/solvers.hpp"

namespace imvs {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SourceOptions {
  std::string scenario;
  std::string preset;
  std::string budget_mode;
};

struct GenOptions {
  std::string shape;
  int views = 5;
  int positions = 9;
  double spacing = 1.0;
  std::string popularity = "uniform";
  double decay = 0.7;
  int layers = 2;
  std::vector<double> budgets;
  std::vector<double> linear;
  std::vector<double> proportions;
  std::vector<double> levels{0.0, 1.0, 2.0};
  double quantum = 1.0;
  std::string budget_mode = "cumulative";
  double alpha_step = 0.25;
  double a1 = 0.0;
  double kappa = 0.0;  // 0: model default
  std::uint64_t seed = 0;
};

struct OutputOptions {
  std::string format = "table";
  double peak = kDefaultPeak;
  bool no_timing = false;
};

void AddSource(CLI::App* cmd, SourceOptions& o) {
  auto* file = cmd->add_option("--scenario", o.scenario, "Scenario JSON file");
  auto* preset = cmd->add_option("--preset", o.preset,
                                 "Built-in scenario: statue, bikes, ballet, "
                                 "undodancer");
  file->excludes(preset);
  cmd->add_option("--budget-mode", o.budget_mode,
                  "Override budget semantics: cumulative or per-layer");
}

void AddGenerator(CLI::App* cmd, GenOptions& g) {
  cmd->add_option("--shape", g.shape,
                  "Take views, window and rates from a preset");
  cmd->add_option("--views", g.views, "Camera count")->capture_default_str();
  cmd->add_option("--positions", g.positions, "Rendered position count")
      ->capture_default_str();
  cmd->add_option("--spacing", g.spacing, "Gap between rendered positions")
      ->capture_default_str();
  cmd->add_option("--popularity", g.popularity, "uniform or exponential")
      ->capture_default_str();
  cmd->add_option("--decay", g.decay, "Exponential popularity ratio")
      ->capture_default_str();
  cmd->add_option("--layers", g.layers, "Layer count")->capture_default_str();
  cmd->add_option("--budgets", g.budgets, "Explicit budgets in Mb");
  cmd->add_option("--linear", g.linear, "Budgets x*c+y: give x y")
      ->expected(2);
  cmd->add_option("--proportions", g.proportions, "Client proportions");
  cmd->add_option("--levels", g.levels, "Rate levels in Mb, starting at 0");
  cmd->add_option("--quantum", g.quantum, "Rate quantum in Mb")
      ->capture_default_str();
  cmd->add_option("--gen-budget-mode", g.budget_mode,
                  "Budget semantics of generated scenarios")
      ->capture_default_str();
  cmd->add_option("--alpha-step", g.alpha_step,
                  "Mixing weight gained per window spacing")
      ->capture_default_str();
  cmd->add_option("--noise", g.a1, "Mixing weight noise amplitude")
      ->capture_default_str();
  cmd->add_option("--kappa", g.kappa, "Rate-distortion decay per Mb");
}

void AddOutput(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--output", o.format, "table or csv")
      ->check(CLI::IsMember({"table", "csv"}))
      ->capture_default_str();
  cmd->add_option("--peak", o.peak, "Peak sample value for PSNR")
      ->capture_default_str();
  cmd->add_flag("--no-timing", o.no_timing,
                "Report wall times as 0 (byte-stable output)");
}

BudgetMode ParseMode(const std::string& name) {
  const auto mode = ParseBudgetMode(name);
  if (!mode) throw UsageError("unknown budget mode '" + name + "'");
  return *mode;
}

PresetId ParsePreset(const std::string& name) {
  const auto id = ParsePresetId(name);
  if (!id) throw UsageError("unknown preset '" + name + "'");
  return *id;
}

GeneratorConfig ToConfig(const GenOptions& g, std::uint64_t seed) {
  GeneratorConfig cfg;
  if (!g.shape.empty()) cfg.shape = ParsePreset(g.shape);
  cfg.views = g.views;
  cfg.positions = g.positions;
  cfg.spacing = g.spacing;
  if (g.popularity == "exponential") {
    cfg.popularity = PopularityModel::kExponential;
  } else if (g.popularity != "uniform") {
    throw UsageError("unknown popularity model '" + g.popularity + "'");
  }
  cfg.decay = g.decay;
  cfg.layers = g.layers;
  cfg.budgets_mb = g.budgets;
  if (!g.linear.empty()) cfg.linear = std::make_pair(g.linear[0], g.linear[1]);
  cfg.proportions = g.proportions;
  cfg.levels_mb = g.levels;
  cfg.quantum_mb = g.quantum;
  cfg.budget_mode = ParseMode(g.budget_mode);
  cfg.alpha_step = g.alpha_step;
  cfg.a1 = g.a1;
  if (g.kappa > 0.0) cfg.kappa = g.kappa;
  cfg.seed = seed;
  return cfg;
}

// Loads the scenario named by --scenario/--preset; nullopt when neither.
std::optional<ScenarioRun> LoadSource(const SourceOptions& o) {
  ScenarioRun run;
  if (!o.scenario.empty()) {
    run.spec = LoadScenario(o.scenario);
    run.id = run.spec.name.empty() ? o.scenario : run.spec.name;
  } else if (!o.preset.empty()) {
    run.spec = Preset(ParsePreset(o.preset));
    run.id = run.spec.name;
  } else {
    return std::nullopt;
  }
  if (!o.budget_mode.empty()) {
    run.spec.clients.mode = ParseMode(o.budget_mode);
    ValidateOrThrow(run.spec);
  }
  return run;
}

std::vector<SolverId> ParseSolvers(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  std::vector<SolverId> out;
  for (const std::string& name : names) {
    const auto id = ParseSolverId(name);
    if (!id) throw UsageError("unknown solver '" + name + "'");
    out.push_back(*id);
  }
  return out;
}

void RunSolvers(ScenarioRun& run, const std::vector<SolverId>& solvers,
                const SolverOptions& options) {
  const DistortionOracle oracle(run.spec);
  for (SolverId id : solvers) {
    run.results.push_back(Solve(id, run.spec, oracle, options));
  }
}

// Runs every scenario on a small thread pool. Output order is the input
// order; the first failure by index is rethrown.
void RunBatch(std::vector<ScenarioRun>& runs,
              const std::vector<SolverId>& solvers,
              const SolverOptions& options, int threads) {
  std::vector<std::exception_ptr> errors(runs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < runs.size();) {
      try {
        RunSolvers(runs[i], solvers, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, runs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void Emit(std::ostream& out, const Report& report, const std::string& format,
          bool summary) {
  if (format == "csv") {
    WriteCsv(out, report);
  } else if (summary) {
    WriteSummaryTable(out, report);
  } else {
    WriteTable(out, report);
  }
}

int Dispatch(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Layered multiview stream planner"};
  app.name("imvs");
  app.require_subcommand(1);

  SourceOptions solve_src;
  OutputOptions solve_out;
  std::string solve_solver = "optimal";
  double cap = 1e8;
  auto* solve = app.add_subcommand("solve", "Solve one scenario");
  AddSource(solve, solve_src);
  AddOutput(solve, solve_out);
  solve->add_option("--solver", solve_solver,
                    "optimal, greedy, baseline or bruteforce")
      ->capture_default_str();
  solve->add_option("--cap", cap, "State cap of the optimal solver")
      ->capture_default_str();

  SourceOptions cmp_src;
  OutputOptions cmp_out;
  GenOptions cmp_gen;
  std::vector<std::string> cmp_solvers;
  int seeds = 0;
  std::uint64_t seed_start = 0;
  int threads = 1;
  std::string clusters_csv;
  auto* compare = app.add_subcommand(
      "compare", "Run several solvers on one scenario or a generated batch");
  AddSource(compare, cmp_src);
  AddOutput(compare, cmp_out);
  AddGenerator(compare, cmp_gen);
  compare->add_option("--solver", cmp_solvers, "Solver to run (repeatable)")
      ->required();
  compare->add_option("--seeds", seeds, "Generate this many scenarios");
  compare->add_option("--seed-start", seed_start, "First generator seed")
      ->capture_default_str();
  compare->add_option("--threads", threads, "Worker threads")
      ->capture_default_str();
  compare->add_option("--clusters-csv", clusters_csv,
                      "Write per-cluster mean PSNR to this file");
  compare->add_option("--cap", cap, "State cap of the optimal solver")
      ->capture_default_str();

  GenOptions gen_opts;
  std::string gen_preset;
  std::string gen_out;
  bool tabulate = false;
  auto* gen = app.add_subcommand("gen", "Write a scenario file");
  AddGenerator(gen, gen_opts);
  gen->add_option("--seed", gen_opts.seed, "Generator seed")
      ->capture_default_str();
  gen->add_option("--preset", gen_preset, "Emit a built-in scenario");
  gen->add_flag("--tabulate", tabulate,
                "Store the distortion as a dense table");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("scenario", validate_path, "Scenario JSON file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  SolverOptions options;
  options.optimal_state_cap = cap;

  if (*solve) {
    auto run = LoadSource(solve_src);
    if (!run) throw UsageError("solve needs --scenario or --preset");
    const auto solvers = ParseSolvers({solve_solver});
    RunSolvers(*run, solvers, options);
    Report report{{std::move(*run)}, solve_out.peak, !solve_out.no_timing};
    Emit(out, report, solve_out.format, false);
    return kExitOk;
  }

  if (*compare) {
    const auto solvers = ParseSolvers(cmp_solvers);
    if (solvers.size() < 2) throw UsageError("compare needs two solvers");
    Report report;
    report.peak = cmp_out.peak;
    report.timing = !cmp_out.no_timing;
    bool batch = false;
    if (auto run = LoadSource(cmp_src)) {
      if (seeds > 0) throw UsageError("--seeds conflicts with a fixed scenario");
      report.runs.push_back(std::move(*run));
    } else {
      if (seeds <= 0) {
        throw UsageError("compare needs --scenario, --preset or --seeds");
      }
      batch = true;
      for (int i = 0; i < seeds; ++i) {
        const std::uint64_t seed = seed_start + i;
        ScenarioRun run;
        run.spec = GenerateScenario(ToConfig(cmp_gen, seed));
        if (!cmp_src.budget_mode.empty()) {
          run.spec.clients.mode = ParseMode(cmp_src.budget_mode);
          ValidateOrThrow(run.spec);
        }
        run.id = "seed-" + std::to_string(seed);
        report.runs.push_back(std::move(run));
      }
    }
    RunBatch(report.runs, solvers, options, threads);
    Emit(out, report, cmp_out.format, batch);
    if (!clusters_csv.empty()) {
      std::ofstream file(clusters_csv);
      if (!file) throw UsageError("cannot write " + clusters_csv);
      WriteClusterCsv(file, report);
    }
    return kExitOk;
  }

  if (*gen) {
    ScenarioSpec spec = gen_preset.empty()
                            ? GenerateScenario(ToConfig(gen_opts, gen_opts.seed))
                            : Preset(ParsePreset(gen_preset));
    if (tabulate) spec = Tabulated(spec);
    if (gen_out.empty()) {
      out << ScenarioToJson(spec).dump(2) << '\n';
    } else {
      SaveScenario(spec, gen_out);
    }
    return kExitOk;
  }

  const ScenarioSpec spec = LoadScenario(validate_path);
  out << "valid: " << spec.name << " V=" << spec.view_count()
      << " U=" << spec.position_count() << " C=" << spec.layer_count() << '\n';
  return kExitOk;
}

}  // namespace

int RunCli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  try {
    return Dispatch(argc, argv, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "invalid scenario: " << e.what() << '\n';
    return kExitValidation;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const SizeGuardExceeded& e) {
    err << "too large: " << e.what() << '\n';
    return kExitSizeGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  std::vector<std::string> storage{"imvs"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());
  return RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace imvs
