#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "imvs/distortion.hpp"
#include "imvs/scenario.hpp"

namespace imvs {

using nlohmann::json;

namespace {

double RoundMb(double mb) { return std::round(mb * 1e9) / 1e9; }

const json& Field(const json& obj, const std::string& key,
                  const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "/" + key, "missing field");
  return *it;
}

double Number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = Field(obj, key, path);
  if (!v.is_number()) throw ParseError(path + "/" + key, "expected a number");
  return v.get<double>();
}

std::vector<double> Numbers(const json& obj, const std::string& key,
                            const std::string& path) {
  const json& v = Field(obj, key, path);
  if (!v.is_array()) throw ParseError(path + "/" + key, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw ParseError(path + "/" + key + "/" + std::to_string(i),
                       "expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

json ParametricToJson(const ParametricModel& m) {
  return json{{"a0", m.a0},
              {"a1", m.a1},
              {"g0", m.g0},
              {"inpaint_mse", m.inpaint},
              {"kappa_per_mb", m.kappa},
              {"floor_mse", m.floor},
              {"noise_seed", m.noise_seed},
              {"sigma2", m.sigma2},
              {"depth_mse", m.depth_mse}};
}

ParametricModel ParametricFromJson(const json& obj, const std::string& path) {
  ParametricModel m;
  m.a0 = Number(obj, "a0", path);
  m.a1 = Number(obj, "a1", path);
  m.g0 = Number(obj, "g0", path);
  m.inpaint = Number(obj, "inpaint_mse", path);
  m.kappa = Number(obj, "kappa_per_mb", path);
  m.floor = Number(obj, "floor_mse", path);
  const json& seed = Field(obj, "noise_seed", path);
  if (!seed.is_number_integer()) {
    throw ParseError(path + "/noise_seed", "expected an unsigned integer");
  }
  m.noise_seed = seed.get<std::uint64_t>();
  m.sigma2 = Numbers(obj, "sigma2", path);
  m.depth_mse = Numbers(obj, "depth_mse", path);
  return m;
}

const char* const kTableColumns[] = {"u",           "left",
                                     "right",       "left_rate_mb",
                                     "right_rate_mb", "mse"};

json TableToJson(const ScenarioSpec& spec, const DistortionTable& t) {
  const std::vector<Rate> levels = spec.grid.NonzeroLevels();
  json rows = json::array();
  for (int u = 0; u < t.positions; ++u) {
    for (int l = 0; l < t.views; ++l) {
      for (int r = l + 1; r < t.views; ++r) {
        for (int il = 0; il < t.levels; ++il) {
          for (int ir = 0; ir < t.levels; ++ir) {
            const double d = t.At(u, l, r, il, ir);
            if (std::isnan(d)) continue;
            rows.push_back(json::array({u, l, r,
                                        RoundMb(spec.grid.ToMb(levels[il])),
                                        RoundMb(spec.grid.ToMb(levels[ir])),
                                        d}));
          }
        }
      }
    }
  }
  return json{{"columns", kTableColumns}, {"rows", rows}};
}

DistortionTable TableFromJson(const json& obj, const std::string& path,
                              const ScenarioSpec& spec) {
  DistortionTable t;
  t.positions = spec.position_count();
  t.views = spec.view_count();
  t.levels = static_cast<int>(spec.grid.NonzeroLevels().size());
  t.values.assign(static_cast<std::size_t>(t.positions) * t.views * t.views *
                      t.levels * t.levels,
                  std::numeric_limits<double>::quiet_NaN());
  const json& rows = Field(obj, "rows", path);
  if (!rows.is_array()) throw ParseError(path + "/rows", "expected an array");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string at = path + "/rows/" + std::to_string(i);
    const json& row = rows[i];
    if (!row.is_array() || row.size() != 6) {
      throw ParseError(at, "expected [u, left, right, left_rate_mb, "
                           "right_rate_mb, mse]");
    }
    for (const json& cell : row) {
      if (!cell.is_number()) throw ParseError(at, "expected numbers");
    }
    const int u = row[0].get<int>();
    const int l = row[1].get<int>();
    const int r = row[2].get<int>();
    if (u < 0 || u >= t.positions || l < 0 || r >= t.views || l >= r) {
      throw ParseError(at, "index out of range");
    }
    const int il = spec.grid.NonzeroIndex(
        ToQuantum(row[3].get<double>(), spec.grid.quantum_mb, at));
    const int ir = spec.grid.NonzeroIndex(
        ToQuantum(row[4].get<double>(), spec.grid.quantum_mb, at));
    if (il < 0 || ir < 0) throw ParseError(at, "rate is not a nonzero level");
    t.values[t.Offset(u, l, r, il, ir)] = row[5].get<double>();
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
        for (int il = 0; il < t.levels; ++il) {
          for (int ir = 0; ir < t.levels; ++ir) {
            if (std::isnan(t.At(u, l, r, il, ir))) {
              throw ParseError(path + "/rows",
                               "missing entry (u=" + std::to_string(u) +
                                   ", left=" + std::to_string(l) +
                                   ", right=" + std::to_string(r) + ")");
            }
          }
        }
      }
    }
  }
  return t;
}

}  // namespace

Rate ToQuantum(double mb, double quantum_mb, const std::string& field) {
  const double units = mb / quantum_mb;
  const double rounded = std::round(units);
  if (!std::isfinite(units) ||
      std::abs(units - rounded) > 1e-6 * std::max(1.0, std::abs(units))) {
    std::ostringstream detail;
    detail << field << " = " << mb << " Mb is not a multiple of " << quantum_mb
           << " Mb";
    throw ValidationError("rate-grid-multiple", detail.str());
  }
  return static_cast<Rate>(rounded);
}

json ScenarioToJson(const ScenarioSpec& spec) {
  std::vector<double> levels_mb;
  for (Rate level : spec.grid.levels) {
    levels_mb.push_back(RoundMb(spec.grid.ToMb(level)));
  }
  std::vector<double> budgets_mb;
  for (Rate b : spec.clients.budgets) {
    budgets_mb.push_back(RoundMb(spec.grid.ToMb(b)));
  }
  json doc{
      {"schema_version", kScenarioSchemaVersion},
      {"meta", {{"name", spec.name}}},
      {"views",
       {{"positions", spec.views.positions}, {"labels", spec.views.labels}}},
      {"window",
       {{"positions", spec.window.positions},
        {"spacing", spec.window.spacing},
        {"popularity", spec.window.popularity}}},
      {"rates", {{"quantum_mb", spec.grid.quantum_mb}, {"levels_mb", levels_mb}}},
      {"clients",
       {{"budgets_mb", budgets_mb},
        {"proportions", spec.clients.proportions},
        {"budget_mode", BudgetModeName(spec.clients.mode)}}},
  };
  if (const auto* m = std::get_if<ParametricModel>(&spec.distortion)) {
    doc["distortion"] = {{"parametric", ParametricToJson(*m)}};
  } else {
    doc["distortion"] = {
        {"table", TableToJson(spec, std::get<DistortionTable>(spec.distortion))}};
  }
  return doc;
}

ScenarioSpec ScenarioFromJson(const json& doc) {
  const json& version = Field(doc, "schema_version", "");
  if (!version.is_number_integer() ||
      version.get<int>() != kScenarioSchemaVersion) {
    throw ParseError("/schema_version",
                     "unsupported version (expected " +
                         std::to_string(kScenarioSchemaVersion) + ")");
  }
  ScenarioSpec spec;
  if (const auto it = doc.find("meta"); it != doc.end() && it->is_object()) {
    spec.name = it->value("name", "");
  }

  const json& views = Field(doc, "views", "");
  spec.views.positions = Numbers(views, "positions", "/views");
  if (const auto it = views.find("labels"); it != views.end()) {
    if (!it->is_array()) throw ParseError("/views/labels", "expected an array");
    for (const json& label : *it) {
      spec.views.labels.push_back(label.is_string() ? label.get<std::string>()
                                                    : label.dump());
    }
  }

  const json& window = Field(doc, "window", "");
  spec.window.positions = Numbers(window, "positions", "/window");
  spec.window.spacing = Number(window, "spacing", "/window");
  spec.window.popularity = Numbers(window, "popularity", "/window");

  const json& rates = Field(doc, "rates", "");
  spec.grid.quantum_mb = Number(rates, "quantum_mb", "/rates");
  if (!(spec.grid.quantum_mb > 0.0)) {
    throw ValidationError("rate-quantum", "quantum must be positive");
  }
  for (double mb : Numbers(rates, "levels_mb", "/rates")) {
    spec.grid.levels.push_back(
        ToQuantum(mb, spec.grid.quantum_mb, "/rates/levels_mb"));
  }

  const json& clients = Field(doc, "clients", "");
  for (double mb : Numbers(clients, "budgets_mb", "/clients")) {
    spec.clients.budgets.push_back(
        ToQuantum(mb, spec.grid.quantum_mb, "/clients/budgets_mb"));
  }
  spec.clients.proportions = Numbers(clients, "proportions", "/clients");
  const json& mode = Field(clients, "budget_mode", "/clients");
  const auto parsed_mode =
      mode.is_string() ? ParseBudgetMode(mode.get<std::string>()) : std::nullopt;
  if (!parsed_mode) {
    throw ParseError("/clients/budget_mode",
                     "expected \"cumulative\" or \"per-layer\"");
  }
  spec.clients.mode = *parsed_mode;

  const json& distortion = Field(doc, "distortion", "");
  if (distortion.contains("parametric")) {
    spec.distortion = ParametricFromJson(distortion["parametric"],
                                         "/distortion/parametric");
  } else if (distortion.contains("table")) {
    // Table rows are keyed by rate, so the grid must be sane first.
    if (auto error = ValidateStructure(spec)) throw *error;
    spec.distortion =
        TableFromJson(distortion["table"], "/distortion/table", spec);
  } else {
    throw ParseError("/distortion", "expected \"parametric\" or \"table\"");
  }
  ValidateOrThrow(spec);
  return spec;
}

ScenarioSpec LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path, e.what());
  }
  return ScenarioFromJson(doc);
}

void SaveScenario(const ScenarioSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << ScenarioToJson(spec).dump(2) << '\n';
}

ScenarioSpec Tabulated(const ScenarioSpec& spec) {
  const DistortionOracle oracle(spec);
  const std::vector<Rate> levels = spec.grid.NonzeroLevels();
  DistortionTable t;
  t.positions = spec.position_count();
  t.views = spec.view_count();
  t.levels = static_cast<int>(levels.size());
  t.values.assign(static_cast<std::size_t>(t.positions) * t.views * t.views *
                      t.levels * t.levels,
                  std::numeric_limits<double>::quiet_NaN());
  const auto& xs = spec.views.positions;
  const auto& us = spec.window.positions;
  for (int u = 0; u < t.positions; ++u) {
    for (int l = 0; l < t.views; ++l) {
      for (int r = l + 1; r < t.views; ++r) {
        if (us[u] < xs[l] - kCoordinateTolerance ||
            us[u] > xs[r] + kCoordinateTolerance) {
          continue;
        }
        for (int il = 0; il < t.levels; ++il) {
          for (int ir = 0; ir < t.levels; ++ir) {
            t.values[t.Offset(u, l, r, il, ir)] =
                oracle.Point(u, l, levels[il], r, levels[ir]);
          }
        }
      }
    }
  }
  ScenarioSpec out = spec;
  out.distortion = std::move(t);
  return out;
}

}  // namespace imvs
