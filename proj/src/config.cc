#include "fragile_cpr/config.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fragile_cpr {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

const json& Field(const json& obj, const std::string& key,
                  const std::string& path) {
  if (!obj.is_object()) Fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) Fail(path + "." + key, "missing required field");
  return *it;
}

double Number(const json& v, const std::string& path) {
  if (!v.is_number()) Fail(path, "expected a number");
  return v.get<double>();
}

double NumberField(const json& obj, const std::string& key,
                   const std::string& path) {
  return Number(Field(obj, key, path), path + "." + key);
}

int IntegerValue(const json& v, const std::string& path) {
  if (!v.is_number_integer()) Fail(path, "expected an integer");
  return v.get<int>();
}

std::vector<double> NumberList(const json& v, const std::string& path) {
  if (!v.is_array()) Fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(Number(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

IntRange ParseRange(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() < 2 || v.size() > 3) {
    Fail(path, "expected [lo, hi] or [lo, hi, step]");
  }
  IntRange r;
  r.lo = IntegerValue(v[0], path + "[0]");
  r.hi = IntegerValue(v[1], path + "[1]");
  if (v.size() == 3) r.step = IntegerValue(v[2], path + "[2]");
  if (r.step < 1) Fail(path, "step must be >= 1");
  if (r.hi < r.lo) Fail(path, "hi must be >= lo");
  return r;
}

RateOfReturn ParseRate(const json& v, const std::string& path) {
  const json& fam = Field(v, "family", path);
  if (!fam.is_string()) Fail(path + ".family", "expected a string");
  const std::string family = fam.get<std::string>();
  try {
    if (family == "affine") {
      return RateOfReturn::Affine(NumberField(v, "c0", path),
                                  NumberField(v, "c1", path));
    }
    if (family == "constant") {
      return RateOfReturn::Constant(NumberField(v, "b", path));
    }
    if (family == "direct_affine") {
      return RateOfReturn::DirectAffine(NumberField(v, "intercept", path),
                                        NumberField(v, "slope", path));
    }
    if (family == "power_shift") {
      return RateOfReturn::DirectPowerShift(NumberField(v, "c", path),
                                            NumberField(v, "e", path));
    }
  } catch (const std::invalid_argument& e) {
    Fail(path, e.what());
  }
  Fail(path + ".family", "unknown rate family '" + family +
                             "' (affine, constant, direct_affine, power_shift)");
}

FailureProb ParseFailure(const json& v, const std::string& path) {
  const json& fam = Field(v, "family", path);
  if (!fam.is_string()) Fail(path + ".family", "expected a string");
  const std::string family = fam.get<std::string>();
  try {
    if (family == "power") {
      return FailureProb::Power(NumberField(v, "gamma", path));
    }
    if (family == "polynomial") {
      return FailureProb::Polynomial(
          NumberList(Field(v, "coeffs", path), path + ".coeffs"));
    }
  } catch (const std::invalid_argument& e) {
    Fail(path, e.what());
  }
  Fail(path + ".family",
       "unknown failure family '" + family + "' (power, polynomial)");
}

RiskProfile ParseProfile(const json& v, const std::string& path) {
  return {NumberField(v, "alpha", path), NumberField(v, "k", path)};
}

ExperimentType ParseType(const std::string& name, const std::string& path) {
  static const std::pair<const char*, ExperimentType> kTypes[] = {
      {"solve", ExperimentType::kSolve},
      {"fuc_sweep", ExperimentType::kFucSweep},
      {"bounds", ExperimentType::kBounds},
      {"k_spread", ExperimentType::kKSpread},
      {"alpha_table", ExperimentType::kAlphaTable},
      {"alpha_sweep", ExperimentType::kAlphaSweep},
      {"poa_sweep", ExperimentType::kPoaSweep},
  };
  for (const auto& [key, type] : kTypes) {
    if (name == key) return type;
  }
  Fail(path, "unknown experiment '" + name + "'");
}

}  // namespace

const char* ExperimentName(ExperimentType type) {
  switch (type) {
    case ExperimentType::kSolve: return "solve";
    case ExperimentType::kFucSweep: return "fuc_sweep";
    case ExperimentType::kBounds: return "bounds";
    case ExperimentType::kKSpread: return "k_spread";
    case ExperimentType::kAlphaTable: return "alpha_table";
    case ExperimentType::kAlphaSweep: return "alpha_sweep";
    case ExperimentType::kPoaSweep: return "poa_sweep";
  }
  return "unknown";
}

ExperimentConfig ParseConfig(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  if (!doc.is_object()) Fail("config", "expected a JSON object");

  ExperimentConfig cfg;
  const json& res = Field(doc, "resource", "config");
  cfg.resource = Resource{ParseRate(Field(res, "rate", "resource"), "resource.rate"),
                          ParseFailure(Field(res, "failure", "resource"),
                                       "resource.failure")};

  const json& players = Field(doc, "players", "config");
  if (players.is_object()) {
    const RiskProfile prof = ParseProfile(players, "players");
    const int n = IntegerValue(Field(players, "n", "players"), "players.n");
    if (n < 1) Fail("players.n", "must be >= 1");
    cfg.players.assign(n, prof);
    cfg.homogeneous_spec = true;
  } else if (players.is_array()) {
    if (players.empty()) Fail("players", "needs at least one player");
    for (std::size_t i = 0; i < players.size(); ++i) {
      cfg.players.push_back(
          ParseProfile(players[i], "players[" + std::to_string(i) + "]"));
    }
  } else {
    Fail("players", "expected {alpha, k, n} or a list of {alpha, k}");
  }

  const json& exp = Field(doc, "experiment", "config");
  const json* params = nullptr;
  if (exp.is_string()) {
    cfg.type = ParseType(exp.get<std::string>(), "experiment");
  } else if (exp.is_object()) {
    const json& type = Field(exp, "type", "experiment");
    if (!type.is_string()) Fail("experiment.type", "expected a string");
    cfg.type = ParseType(type.get<std::string>(), "experiment.type");
    params = &exp;
  } else {
    Fail("experiment", "expected a name or an object with a type");
  }

  auto has = [&](const char* key) { return params && params->contains(key); };
  switch (cfg.type) {
    case ExperimentType::kFucSweep:
      if (has("n_range")) {
        cfg.n_range = ParseRange((*params)["n_range"], "experiment.n_range");
      }
      if (has("gamma_range")) {
        cfg.gamma_range =
            ParseRange((*params)["gamma_range"], "experiment.gamma_range");
      }
      if (cfg.n_range.has_value() == cfg.gamma_range.has_value()) {
        Fail("experiment", "fuc_sweep needs exactly one of n_range, gamma_range");
      }
      break;
    case ExperimentType::kPoaSweep:
      if (!has("n_range")) Fail("experiment.n_range", "missing required field");
      cfg.n_range = ParseRange((*params)["n_range"], "experiment.n_range");
      break;
    case ExperimentType::kKSpread:
      if (has("samples")) {
        cfg.samples = IntegerValue((*params)["samples"], "experiment.samples");
        if (cfg.samples < 1) Fail("experiment.samples", "must be >= 1");
      }
      break;
    case ExperimentType::kAlphaTable: {
      if (!has("rows")) Fail("experiment.rows", "missing required field");
      const json& rows = (*params)["rows"];
      if (!rows.is_array() || rows.empty()) {
        Fail("experiment.rows", "expected a non-empty array of alpha vectors");
      }
      for (std::size_t i = 0; i < rows.size(); ++i) {
        cfg.alpha_rows.push_back(
            NumberList(rows[i], "experiment.rows[" + std::to_string(i) + "]"));
      }
      break;
    }
    case ExperimentType::kAlphaSweep:
      if (has("alpha_grid")) {
        cfg.alpha_grid =
            NumberList((*params)["alpha_grid"], "experiment.alpha_grid");
      }
      break;
    case ExperimentType::kSolve:
    case ExperimentType::kBounds:
      break;
  }

  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    if (!s.is_object()) Fail("solver", "expected an object");
    if (s.contains("sweep_tol")) {
      cfg.solver.sweep_tol = Number(s["sweep_tol"], "solver.sweep_tol");
      if (!(cfg.solver.sweep_tol > 0.0)) Fail("solver.sweep_tol", "must be > 0");
    }
    if (s.contains("max_sweeps")) {
      cfg.solver.max_sweeps = IntegerValue(s["max_sweeps"], "solver.max_sweeps");
      if (cfg.solver.max_sweeps < 1) Fail("solver.max_sweeps", "must be >= 1");
    }
    if (s.contains("seed")) {
      if (!s["seed"].is_number_unsigned()) {
        Fail("solver.seed", "expected a non-negative integer");
      }
      cfg.solver.seed = s["seed"].get<std::uint64_t>();
      cfg.solver.seed_given = true;
    }
    if (s.contains("grid_n")) {
      cfg.solver.grid_n = IntegerValue(s["grid_n"], "solver.grid_n");
      if (cfg.solver.grid_n < 100) Fail("solver.grid_n", "must be >= 100");
    }
  }

  if (doc.contains("output")) {
    if (!doc["output"].is_string()) Fail("output", "expected a path string");
    cfg.output = doc["output"].get<std::string>();
  }
  return cfg;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

ValidationReport ValidateConfig(const ExperimentConfig& config) {
  ValidationReport report = ValidateAssumptions(
      config.resource.rate, config.resource.failure, config.solver.grid_n);

  ValidationCheck profiles{"player_profiles", true, std::nullopt, ""};
  for (std::size_t i = 0; i < config.players.size(); ++i) {
    const auto& p = config.players[i];
    if (!(p.alpha > 0.0 && p.alpha <= 1.0) || !(p.k >= 0.0)) {
      profiles.passed = false;
      profiles.message = "player " + std::to_string(i) +
                         " needs alpha in (0, 1] and k >= 0";
      break;
    }
  }
  report.checks.push_back(profiles);

  ValidationCheck shape{"experiment_players", true, std::nullopt, ""};
  const bool homogeneous = std::all_of(
      config.players.begin(), config.players.end(),
      [&](const RiskProfile& p) { return p == config.players.front(); });
  const bool alpha_uniform = std::all_of(
      config.players.begin(), config.players.end(), [&](const RiskProfile& p) {
        return p.alpha == config.players.front().alpha;
      });
  switch (config.type) {
    case ExperimentType::kFucSweep:
    case ExperimentType::kBounds:
    case ExperimentType::kPoaSweep:
      if (!homogeneous) {
        shape.passed = false;
        shape.message = std::string(ExperimentName(config.type)) +
                        " requires homogeneous players";
      }
      break;
    case ExperimentType::kKSpread:
      if (!homogeneous) {
        shape.passed = false;
        shape.message = "k_spread takes {alpha, k, n}; k is the mean k_M";
      }
      break;
    case ExperimentType::kSolve:
      if (config.resource.rate.direct_mode() && !alpha_uniform) {
        shape.passed = false;
        shape.message = "a directly specified rbar requires a common alpha";
      }
      break;
    case ExperimentType::kAlphaTable:
      for (const auto& row : config.alpha_rows) {
        if (row.size() != config.players.size()) {
          shape.passed = false;
          shape.message = "every alpha row must have one entry per player";
        }
      }
      break;
    case ExperimentType::kAlphaSweep:
      if (std::any_of(config.players.begin(), config.players.end(),
                      [&](const RiskProfile& p) {
                        return p.k != config.players.front().k;
                      })) {
        shape.passed = false;
        shape.message = "alpha_sweep varies alpha over players with a common k";
      }
      for (double a : config.alpha_grid) {
        if (!(a > 0.0 && a <= 1.0)) {
          shape.passed = false;
          shape.message = "alpha_grid entries must lie in (0, 1]";
        }
      }
      break;
  }
  if (config.gamma_range && !config.resource.failure.is_power()) {
    shape.passed = false;
    shape.message = "gamma_range requires the power failure family";
  }
  report.checks.push_back(shape);
  return report;
}

}  // namespace fragile_cpr
