#include <clocale>
#include <filesystem>
#include <fstream>
#include <locale>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"
#include "risfox/cli/app.hpp"
#include "risfox/cli/csv.hpp"
#include "risfox/cli/experiment.hpp"
#include "risfox/cli/figures.hpp"
#include "risfox/cli/validation.hpp"
#include "risfox/error.hpp"
#include "risfox/scenario.hpp"

using namespace risfox;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("risfox_cli_" + std::to_string(::getpid())) / name;
  fs::create_directories(p);
  return p;
}

int run(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "risfox");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::stringstream ss(text);
  for (std::string l; std::getline(ss, l);) v.push_back(l);
  return v;
}

int error_line(const std::string& text) {
  try {
    scenario::parse(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("scenario parsing") {
  const auto s = cli::default_scenario();
  CHECK(s.config.N == 1);
  CHECK(s.config.direct_fading.M() == doctest::Approx(2.5454));
  CHECK(s.mc.trials == 1000000);
  CHECK(scenario::parse(scenario::canonical(s)).hash == s.hash);

  CHECK(error_line("ris.n = 2\nlink.d1 = 50\nlink.bogus = 1\n") == 3);
  CHECK(error_line("ris.n = 2\n\n# comment\nlink.d1 = fifty\n") == 4);
  CHECK(error_line("ris.n = 2\nris.n = 3\n") == 2);
  CHECK(error_line("ris.n\n") == 1);
  try {
    scenario::parse("phase.L = 0\n");
    FAIL("expected a configuration error");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "phase.L");
  }
  const auto p = scenario::parse("phase.L = perfect\nmobility.topology = 3d\n");
  CHECK(p.config.element.phase.perfect);
  CHECK(p.config.topology == "3d");
}

TEST_CASE("shipped scenario files match the built-in texts") {
  const fs::path dir = fs::path(RISFOX_SOURCE_DIR) / "scenarios";
  CHECK(scenario::load((dir / "figures.cfg").string()).hash == cli::figure_scenario().hash);
  CHECK(scenario::load((dir / "default.cfg").string()).hash == cli::default_scenario().hash);
}

TEST_CASE("grids") {
  CHECK(cli::parse_grid("0:40:1").size() == 41);
  CHECK(cli::parse_grid("1,2,5") == std::vector<std::string>{"1", "2", "5"});
  CHECK_THROWS_AS(cli::parse_grid("0:40:0"), ConfigError);
  cli::ExperimentSpec e;
  e.scenario = cli::default_scenario();
  e.grid = {"10", "5"};
  CHECK_THROWS_AS(e.validate(), ConfigError);
  e.grid = {};
  CHECK_THROWS_AS(e.validate(), ConfigError);
}

TEST_CASE("CSV output is locale independent") {
  CHECK(cli::format_number(0.5) == "0.5");
  CHECK(cli::format_number(-1.25e-7) == "-1.25e-07");
  const char* names[] = {"de_DE.UTF-8", "fr_FR.UTF-8", "de_DE"};
  for (const char* n : names) {
    if (!std::setlocale(LC_ALL, n)) continue;
    CHECK(cli::format_number(0.5) == "0.5");
    std::setlocale(LC_ALL, "C");
  }
  const auto csv = cli::to_csv({{"1", "mc", 0.25, 0.01, "N=1"}});
  CHECK(csv.rfind("sweep,method,value,err,meta\n", 0) == 0);
  CHECK(csv.back() == '\n');
  CHECK(cli::to_csv({}) == "sweep,method,value,err,meta\n");
}

TEST_CASE("outage sweep row contract and determinism") {
  cli::ExperimentSpec e;
  e.scenario = cli::default_scenario();
  e.scenario.mc.trials = 100000;
  e.grid = cli::parse_grid("0:40:1");
  e.methods = {"bound", "mc"};
  const auto a = cli::run_experiment(e);
  CHECK(a.rows.size() == 41 * 2);
  CHECK(cli::to_csv(a.rows) == cli::to_csv(cli::run_experiment(e).rows));
  const auto csv = cli::to_csv(a.rows);
  CHECK(lines(csv).size() == 1 + 41 * 2);
}

TEST_CASE("dimension limit is reported per row while other methods still run") {
  cli::ExperimentSpec e;
  e.scenario = cli::default_scenario();
  e.scenario.config.N = 6;
  e.scenario.mc.trials = 20000;
  e.grid = {"30", "40"};
  e.methods = {"exact", "mc"};
  const auto r = cli::run_experiment(e);
  CHECK(r.rows.size() == 4);
  CHECK(r.dimension_limited == 2);
  int mc_rows = 0;
  for (const auto& row : r.rows) {
    if (row.method.find("exact") != std::string::npos) CHECK(row.meta.find("status=dimension-limit") != std::string::npos);
    if (row.method.find("mc") != std::string::npos) {
      ++mc_rows;
      CHECK(std::isfinite(row.value));
    }
  }
  CHECK(mc_rows == 2);
}

TEST_CASE("figure-4 style Monte Carlo columns fall with transmit power") {
  const auto base = cli::figure_scenario();
  for (int N : {10, 20})
    for (const char* L : {"1", "2", "perfect"}) {
      cli::ExperimentSpec e;
      e.scenario = base;
      e.scenario.config = cli::apply_sweep(e.scenario.config, "n", std::to_string(N));
      e.scenario.config = cli::apply_sweep(e.scenario.config, "L", L);
      e.grid = cli::parse_grid("0:60:5");
      e.methods = {"mc"};
      const auto r = cli::run_experiment(e);
      CAPTURE(N);
      CAPTURE(L);
      for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].value <= r.rows[i - 1].value);
      CHECK(r.rows.front().value > r.rows.back().value);
    }
}

TEST_CASE("validation suite") {
  const auto fast = cli::validate(cli::Suite::fast);
  CHECK(fast.passed());
  for (const auto& c : fast.checks)
    if (c.name.rfind("normalization/", 0) == 0) CHECK(c.passed);
  bool kernel_note = false;
  for (const auto& n : fast.notes) kernel_note = kernel_note || (n.id == "kappa_mu_series_kernel" && n.measured > 0.01);
  CHECK(kernel_note);
  const auto bad = cli::validate(cli::Suite::fast, cli::Fault::contour);
  CHECK_FALSE(bad.passed());
  for (const auto& c : bad.checks)
    if (c.name.rfind("foxh/", 0) == 0) CHECK_FALSE(c.passed);
  // Both renderings carry every check.
  const auto text = fast.to_text(), json = fast.to_json();
  for (const auto& c : fast.checks) {
    CHECK(text.find(c.name) != std::string::npos);
    CHECK(json.find(c.name) != std::string::npos);
  }
}

TEST_CASE("command line: artifacts, manifest and exit codes") {
  const auto dir = scratch("run");
  std::string out, err;
  CHECK(run({"outage", "--trials", "20000", "--seed", "5", "--grid", "0:10:5", "--out", dir.string()}, &out, &err) == cli::kSuccess);
  const auto csv = slurp(dir / "outage.csv");
  CHECK(lines(csv).size() == 1 + 3 * 2);
  const auto manifest = slurp(dir / "manifest.json");
  CHECK(manifest.find("\"scenario_hash\"") != std::string::npos);
  CHECK(manifest.find("\"seed\": 5") != std::string::npos);
  CHECK(manifest.find(RISFOX_VERSION_STRING) != std::string::npos);
  CHECK(run({"outage", "--trials", "20000", "--seed", "5", "--grid", "0:10:5", "--out", dir.string()}) == cli::kSuccess);
  CHECK(slurp(dir / "outage.csv") == csv);

  const auto bad = dir / "bad.cfg";
  std::ofstream(bad) << "ris.n = 1\nlink.d1 = -3\n";
  CHECK(run({"outage", "--scenario", bad.string(), "--out", dir.string()}, &out, &err) == cli::kConfigError);
  CHECK(err.find("link.d1") != std::string::npos);
  CHECK(run({"outage", "--bogus-flag"}) == cli::kConfigError);

  const auto trunc = dir / "trunc.cfg";
  std::ofstream(trunc) << "fading.series_terms = 3\n";
  CHECK(run({"cdf", "--scenario", trunc.string(), "--method", "bound", "--grid", "0", "--out", dir.string()}) ==
        cli::kNonConvergence);

  CHECK(run({"validate", "--suite", "fast"}, &out) == cli::kSuccess);
  CHECK(out.find("checks passed") != std::string::npos);
  CHECK(run({"validate", "--inject-fault", "contour"}) == cli::kValidationFailed);
  CHECK(run({"reproduce-figure", "9"}) == cli::kConfigError);
  fs::remove_all(dir.parent_path());
}
