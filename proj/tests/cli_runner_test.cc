#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fragile_cpr/config.h"
#include "fragile_cpr/csv.h"
#include "fragile_cpr/runner.h"

namespace fc = fragile_cpr;
namespace fs = std::filesystem;

namespace {

const std::string kSourceDir = FRAGILE_CPR_SOURCE_DIR;

std::string ConfigPath(const std::string& name) { return kSourceDir + "/configs/" + name; }

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path ScratchDir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("fragile_cpr_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Csv {
  std::map<std::string, std::string> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t Col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    FAIL("missing column " << name);
    return 0;
  }
  double Num(std::size_t row, const std::string& col) const {
    return std::stod(rows.at(row).at(Col(col)));
  }
};

std::vector<std::string> SplitCells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

Csv ParseCsv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq != std::string::npos) csv.meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
    } else if (csv.header.empty()) {
      csv.header = SplitCells(line);
    } else {
      csv.rows.push_back(SplitCells(line));
    }
  }
  return csv;
}

std::string ConfigError(const std::string& json) {
  try {
    fc::ParseConfig(json);
  } catch (const fc::ConfigError& e) {
    return e.what();
  }
  return "";
}

const char* kResource = R"("resource": {"rate": {"family": "affine", "c0": 5, "c1": -1},
                                         "failure": {"family": "power", "gamma": 1}})";

}  // namespace

TEST_CASE("number formatting") {
  CHECK(fc::FormatNumber(0.1) == "0.1");
  CHECK(fc::FormatNumber(1.0 / 3.0) == "0.333333333333");
  CHECK(fc::FormatNumber(123456789012345.0) == "1.23456789012e+14");
  CHECK(fc::FormatNumber(-0.0) == "0");
  CHECK(fc::FormatNumber(NAN) == "nan");
  CHECK(fc::FormatNumber(INFINITY) == "inf");
  CHECK(fc::FormatNumber(-INFINITY) == "-inf");
}

TEST_CASE("csv writer layout") {
  std::ostringstream out;
  fc::CsvWriter w(out);
  w.Meta("seed", "0");
  w.Header({"a", "b"});
  w.Row(std::vector<double>{1.0, 0.5});
  CHECK(out.str() == "# seed=0\na,b\n1,0.5\n");
  CHECK_THROWS_AS(w.Row(std::vector<double>{1.0}), std::logic_error);
  CHECK_THROWS_AS(w.Comment("late"), std::logic_error);
}

TEST_CASE("homogeneous player shorthand expands") {
  const auto cfg = fc::LoadConfig(ConfigPath("table1a_homogeneous.json"));
  CHECK(cfg.homogeneous_spec);
  REQUIRE(cfg.players.size() == 3);
  CHECK(cfg.players[2] == fc::RiskProfile{0.5, 1.0});
  CHECK(cfg.type == fc::ExperimentType::kSolve);
  CHECK_FALSE(cfg.solver.seed_given);
}

TEST_CASE("parse errors name the offending field") {
  CHECK(ConfigError("{").find("parse error") != std::string::npos);
  CHECK(ConfigError(R"({"players": {"alpha": 0.5, "k": 1, "n": 3}, "experiment": "solve"})")
            .find("config.resource") != std::string::npos);
  CHECK(ConfigError(std::string("{") + kResource +
                    R"(, "players": {"alpha": "half", "k": 1, "n": 3}, "experiment": "solve"})")
            .find("players.alpha") != std::string::npos);
  CHECK(ConfigError(R"({"resource": {"rate": {"family": "cubic"}, "failure": {"family": "power", "gamma": 1}},
                        "players": {"alpha": 0.5, "k": 1, "n": 3}, "experiment": "solve"})")
            .find("resource.rate.family") != std::string::npos);
  CHECK(ConfigError(R"({"resource": {"rate": {"family": "affine", "c0": 5}, "failure": {"family": "power", "gamma": 1}},
                        "players": {"alpha": 0.5, "k": 1, "n": 3}, "experiment": "solve"})")
            .find("resource.rate.c1") != std::string::npos);
  CHECK(ConfigError(std::string("{") + kResource +
                    R"(, "players": {"alpha": 0.5, "k": 1, "n": 3}, "experiment": "melt"})")
            .find("experiment") != std::string::npos);
  CHECK(ConfigError(std::string("{") + kResource +
                    R"(, "players": {"alpha": 0.5, "k": 1, "n": 3}, "experiment": {"type": "fuc_sweep"}})")
            .find("n_range") != std::string::npos);
  CHECK(ConfigError(std::string("{") + kResource +
                    R"(, "players": {"alpha": 0.5, "k": 1, "n": 3}, "experiment": "solve",
                        "solver": {"seed": -4}})")
            .find("solver.seed") != std::string::npos);
  CHECK(ConfigError(std::string("{") + kResource +
                    R"(, "players": [{"alpha": 0.5, "k": 1}, {"alpha": 0.5}], "experiment": "solve"})")
            .find("players[1].k") != std::string::npos);
  CHECK_THROWS_AS(fc::LoadConfig("/nonexistent/config.json"), fc::ConfigError);
}

TEST_CASE("solve on the homogeneous table config") {
  std::ostringstream out, err;
  CHECK(fc::RunFile(ConfigPath("table1a_homogeneous.json"), {}, out, err) == fc::kExitOk);
  const Csv csv = ParseCsv(out.str());
  REQUIRE(csv.rows.size() == 1);
  CHECK(csv.header.size() == 8);
  CHECK(std::abs(csv.Num(0, "fragility") - 0.3846) < 1e-3);
  CHECK(csv.Num(0, "support_size") == 3);
  CHECK(csv.Num(0, "residual") < 1e-9);
  CHECK(out.str().find('\r') == std::string::npos);
}

TEST_CASE("malformed resource exits 1 and cites the requirement") {
  std::ostringstream out, err;
  CHECK(fc::RunFile(ConfigPath("malformed_affine.json"), {}, out, err) == fc::kExitInvalid);
  CHECK(err.str().find("r(0)=1") != std::string::npos);
  CHECK(err.str().find("r(x) > 1") != std::string::npos);
  CHECK(out.str().empty());
}

TEST_CASE("validate reports every check") {
  std::ostringstream out, err;
  CHECK(fc::ValidateFile(ConfigPath("table1a_homogeneous.json"), {}, out, err) == fc::kExitOk);
  CHECK(out.str().find("PASS rbar_positive") != std::string::npos);
  std::ostringstream out2;
  CHECK(fc::ValidateFile(ConfigPath("malformed_affine.json"), {}, out2, err) == fc::kExitInvalid);
  CHECK(out2.str().find("FAIL rbar_positive") != std::string::npos);
}

TEST_CASE("a starved sweep budget exits 2") {
  fc::RunOverrides o;
  o.max_sweeps = 1;
  std::ostringstream out, err;
  CHECK(fc::RunFile(ConfigPath("table1a_homogeneous.json"), o, out, err) == fc::kExitNotConverged);
  CHECK(err.str().find("not converged") != std::string::npos);
}

TEST_CASE("gamma sweep columns") {
  std::ostringstream out, err;
  REQUIRE(fc::RunFile(ConfigPath("fig2a_gamma_sweep.json"), {}, out, err) == fc::kExitOk);
  const Csv csv = ParseCsv(out.str());
  CHECK(csv.rows.size() == 25);
  const std::vector<std::string> leading{"gamma", "fuc", "trivial_bound", "cor43_bound",
                                         "thm44_lower"};
  CHECK(std::vector<std::string>(csv.header.begin(), csv.header.begin() + 5) == leading);
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    CHECK(csv.Num(r, "gamma") == static_cast<double>(r + 1));
    CHECK(csv.Num(r, "fuc") <= csv.Num(r, "fuc_limit"));
    CHECK(csv.Num(r, "thm44_lower") <= csv.Num(r, "fuc_limit"));
    CHECK(csv.Num(r, "fuc_limit") <= csv.Num(r, "cor43_bound") * (1 + 1e-9));
  }
}

TEST_CASE("k_spread echoes the seed and is deterministic across worker counts") {
  auto run = [](const char* threads) {
    setenv("FRAGILE_CPR_THREADS", threads, 1);
    std::ostringstream out, err;
    fc::RunOverrides o;
    CHECK(fc::RunFile(ConfigPath("k_spread_table1a.json"), o, out, err) == fc::kExitOk);
    return out.str();
  };
  const std::string one = run("1");
  const std::string four = run("4");
  unsetenv("FRAGILE_CPR_THREADS");
  CHECK(one == four);
  const Csv csv = ParseCsv(one);
  CHECK(csv.meta.at("seed") == "7");
  CHECK(csv.meta.at("violations") == "0");
  CHECK(csv.rows.size() == 500);
}

TEST_CASE("omitted seed defaults to zero and is echoed") {
  auto cfg = fc::LoadConfig(ConfigPath("k_spread_table1a.json"));
  cfg.solver.seed = 0;
  cfg.solver.seed_given = false;
  cfg.samples = 5;
  std::ostringstream out, err;
  REQUIRE(fc::Run(cfg, out, err) == fc::kExitOk);
  CHECK(out.str().find("# seed not given; defaulted to 0\n") != std::string::npos);
  CHECK(ParseCsv(out.str()).meta.at("seed") == "0");
}

TEST_CASE("every sample config runs") {
  for (const char* name : {"alpha_table_table1a.json", "bounds_increasing.json",
                           "fig4a_alpha_sweep.json", "poa_sweep.json"}) {
    std::ostringstream out, err;
    CHECK_MESSAGE(fc::RunFile(ConfigPath(name), {}, out, err) == fc::kExitOk, name, err.str());
    CHECK(!ParseCsv(out.str()).rows.empty());
  }
}

TEST_CASE("output path in the config receives the csv") {
  const fs::path dir = ScratchDir("output");
  auto cfg = fc::LoadConfig(ConfigPath("table1a_homogeneous.json"));
  cfg.output = (dir / "nested" / "solve.csv").string();
  std::ostringstream out, err;
  REQUIRE(fc::Run(cfg, out, err) == fc::kExitOk);
  CHECK(out.str().empty());
  CHECK(ParseCsv(ReadFile(*cfg.output)).rows.size() == 1);
}

TEST_CASE("reproduce writes one file per panel") {
  const fs::path dir = ScratchDir("repro");
  std::ostringstream out, err;
  REQUIRE(fc::Reproduce({"fig1", "table1", "example2", "fig4"}, dir.string(), {}, out, err) ==
          fc::kExitOk);
  for (const char* f : {"repro_fig1_a.csv", "repro_fig1_b.csv", "repro_table1_a.csv",
                        "repro_table1_b.csv", "repro_example2_grid.csv", "repro_fig4_a.csv",
                        "repro_fig4_b.csv"}) {
    CHECK_MESSAGE(fs::exists(dir / f), f);
  }

  const Csv fig1a = ParseCsv(ReadFile(dir / "repro_fig1_a.csv"));
  CHECK(std::abs(std::stod(fig1a.meta.at("ybar")) - 0.4384) < 1e-3);
  const Csv fig1b = ParseCsv(ReadFile(dir / "repro_fig1_b.csv"));
  CHECK(std::abs(std::stod(fig1b.meta.at("ybar")) - 0.6855) < 1e-3);
  CHECK(std::abs(std::stod(fig1b.meta.at("zhat")) - 0.2493) < 1e-3);
  CHECK(fig1b.header == std::vector<std::string>{"x_T", "f", "f_prime"});

  const double expected[] = {0.3846, 0.4018, 0.2233, 0.2083, 0.3758, 0.4035, 0.2481, 0.2014};
  int idx = 0;
  for (const char* f : {"repro_table1_a.csv", "repro_table1_b.csv"}) {
    const Csv t = ParseCsv(ReadFile(dir / f));
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      CHECK(std::abs(t.Num(r, "fragility") - expected[idx++]) < 1e-3);
    }
  }
  CHECK(idx == 8);

  const Csv ex2 = ParseCsv(ReadFile(dir / "repro_example2_grid.csv"));
  CHECK(ex2.rows.size() == 324);
  CHECK(std::stod(ex2.meta.at("max_abs_diff")) < 1e-8);

  CHECK(ParseCsv(ReadFile(dir / "repro_fig4_a.csv")).meta.at("rise_then_fall") == "1");
}

TEST_CASE("reproduce is byte-identical across runs") {
  const fs::path a = ScratchDir("det_a");
  const fs::path b = ScratchDir("det_b");
  std::ostringstream out, err;
  REQUIRE(fc::Reproduce({"fig2", "fig3"}, a.string(), {}, out, err) == fc::kExitOk);
  REQUIRE(fc::Reproduce({"fig2", "fig3"}, b.string(), {}, out, err) == fc::kExitOk);
  for (const char* f : {"repro_fig2_a.csv", "repro_fig2_b.csv", "repro_fig3_a.csv",
                        "repro_fig3_b.csv"}) {
    CHECK(ReadFile(a / f) == ReadFile(b / f));
  }
}

TEST_CASE("unknown reproduce target writes nothing") {
  const fs::path dir = ScratchDir("unknown");
  std::ostringstream out, err;
  CHECK(fc::Reproduce({"fig1", "fig9"}, dir.string(), {}, out, err) == fc::kExitInvalid);
  CHECK(err.str().find("fig9") != std::string::npos);
  CHECK(fs::is_empty(dir));
  CHECK(fc::Reproduce({}, dir.string(), {}, out, err) == fc::kExitInvalid);
}
