#include "risfox/cli/app.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "risfox/cli/csv.hpp"
#include "risfox/cli/experiment.hpp"
#include "risfox/cli/figures.hpp"
#include "risfox/cli/validation.hpp"
#include "risfox/error.hpp"

namespace risfox::cli {
namespace {

struct Common {
  std::string scenario;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  std::string methods;
  std::string out = ".";
  int threads = 0;
};

void add_common(CLI::App* app, Common& c, bool with_methods) {
  app->add_option("--scenario", c.scenario, "scenario file (key = value lines)");
  app->add_option("--seed", c.seed, "Monte Carlo master seed");
  app->add_option("--trials", c.trials, "Monte Carlo trials");
  if (with_methods) app->add_option("--method", c.methods, "comma-separated: exact,bound,asymptotic,mc");
  app->add_option("--out", c.out, "output directory");
  app->add_option("--threads", c.threads, "worker threads (0: all cores)");
}

scenario::Scenario load_scenario(const Common& c, scenario::Scenario fallback, CLI::App* app) {
  scenario::Scenario s = c.scenario.empty() ? std::move(fallback) : scenario::load(c.scenario);
  if (app->count("--seed")) s.mc.seed = c.seed;
  if (app->count("--trials")) s.mc.trials = c.trials;
  s.mc.threads = c.threads;
  s.mc.validate();
  s.hash = scenario::fnv1a(scenario::canonical(s));
  return s;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

void write_artifacts(const std::string& dir, const std::string& name, const std::string& csv, Manifest m) {
  std::filesystem::create_directories(dir);
  const auto path = (std::filesystem::path(dir) / name).string();
  write_text(path, csv);
  m.artifacts.push_back(name);
  write_text((std::filesystem::path(dir) / "manifest.json").string(), manifest_json(m));
}

Manifest manifest_for(const std::string& command, const scenario::Scenario& s) {
  Manifest m;
  m.command = command;
  m.scenario_hash = s.hash;
  m.seed = s.mc.seed;
  m.trials = s.mc.trials;
  m.streams = s.mc.streams;
  return m;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"risfox: statistics of RIS-assisted links with phase noise and mobility"};
  app.require_subcommand(1);
  app.set_version_flag("--version", RISFOX_VERSION_STRING);

  Common c;
  std::string sweep = "pt", grid;
  std::string suite = "fast", fault = "none", json_path;
  int figure = 0;

  std::vector<CLI::App*> metric_cmds;
  for (const char* name : {"outage", "ber", "pdf", "cdf"}) {
    auto* sub = app.add_subcommand(name, std::string("sweep the ") + name);
    add_common(sub, c, true);
    if (std::string(name) == "outage" || std::string(name) == "ber")
      sub->add_option("--sweep", sweep, "pt, n, L, a or topology");
    sub->add_option("--grid", grid, "lo:hi:step or a comma-separated list");
    metric_cmds.push_back(sub);
  }
  auto* val = app.add_subcommand("validate", "run the oracle checks");
  add_common(val, c, false);
  val->add_option("--suite", suite, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  val->add_option("--inject-fault", fault, "none or contour")->check(CLI::IsMember({"none", "contour"}));
  val->add_option("--json", json_path, "also write the report as JSON");
  auto* fig = app.add_subcommand("reproduce-figure", "regenerate the data series of a figure");
  fig->add_option("figure", figure, "figure number 2..7")->required()->check(CLI::Range(2, 7));
  add_common(fig, c, true);
  fig->add_option("--grid", grid, "transmit-power grid in dBm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    for (auto* sub : metric_cmds) {
      if (!sub->parsed()) continue;
      ExperimentSpec spec;
      spec.scenario = load_scenario(c, default_scenario(), sub);
      spec.metric = parse_metric(sub->get_name());
      const bool density = spec.metric == Metric::pdf || spec.metric == Metric::cdf;
      spec.sweep = density ? "gamma_db" : sweep;
      spec.grid = parse_grid(grid.empty() ? (density ? "-20:40:1" : "0:40:1") : grid);
      if (!c.methods.empty()) spec.methods = split(c.methods);
      const auto res = run_experiment(spec);
      const std::string name = sub->get_name() + ".csv";
      write_artifacts(c.out, name, to_csv(res.rows), manifest_for(sub->get_name(), spec.scenario));
      out << "wrote " << (std::filesystem::path(c.out) / name).string() << " (" << res.rows.size() << " rows)\n";
      if (res.dimension_limited > 0)
        err << "note: " << res.dimension_limited << " points exceed the exact-evaluation dimension limit\n";
      if (res.non_converged > 0) {
        err << "error: " << res.non_converged << " points did not converge\n";
        return kNonConvergence;
      }
      return kSuccess;
    }
    if (val->parsed()) {
      const auto report = validate(suite == "full" ? Suite::full : Suite::fast,
                                   fault == "contour" ? Fault::contour : Fault::none, c.threads);
      out << report.to_text();
      if (!json_path.empty()) write_text(json_path, report.to_json());
      if (val->count("--out")) {
        std::filesystem::create_directories(c.out);
        write_text((std::filesystem::path(c.out) / "validation.txt").string(), report.to_text());
        write_text((std::filesystem::path(c.out) / "validation.json").string(), report.to_json());
      }
      return report.passed() ? kSuccess : kValidationFailed;
    }
    if (fig->parsed()) {
      const auto base = load_scenario(c, figure_scenario(), fig);
      const auto plan = figure_plan(figure, base, c.methods.empty() ? std::vector<std::string>{"bound", "mc"} : split(c.methods),
                                    parse_grid(grid.empty() ? "0:60:1" : grid));
      std::vector<CsvRow> rows;
      int non_converged = 0;
      for (const auto& curve : plan.curves) {
        auto res = run_experiment(curve);
        non_converged += res.non_converged;
        rows.insert(rows.end(), res.rows.begin(), res.rows.end());
      }
      const std::string name = "fig" + std::to_string(figure) + ".csv";
      write_artifacts(c.out, name, to_csv(rows), manifest_for("reproduce-figure " + std::to_string(figure), base));
      out << "figure " << figure << ": " << plan.title << "\n";
      out << "wrote " << (std::filesystem::path(c.out) / name).string() << " (" << rows.size() << " rows, "
          << plan.curves.size() << " curves)\n";
      return non_converged > 0 ? kNonConvergence : kSuccess;
    }
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NonConvergenceError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const DimensionError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  }
  return kSuccess;
}

}  // namespace risfox::cli
