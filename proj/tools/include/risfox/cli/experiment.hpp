#pragma once

#include <string>
#include <vector>

#include "risfox/cascade.hpp"
#include "risfox/cli/csv.hpp"
#include "risfox/montecarlo.hpp"
#include "risfox/scenario.hpp"

namespace risfox::cli {

enum class Metric { outage, ber, pdf, cdf };

Metric parse_metric(const std::string& name);
std::string metric_name(Metric m);

struct ExperimentSpec {
  scenario::Scenario scenario;
  Metric metric = Metric::outage;
  std::string sweep = "pt";  // pt, n, L, a, topology; gamma_db for pdf and cdf
  std::vector<std::string> grid;
  std::vector<std::string> methods{"bound", "mc"};  // exact, bound, asymptotic, mc
  bool direct_only = false;                         // direct transmission alone
  std::string label;                                // prefixed to the method column
  cascade::MultiLimits limits{};

  void validate() const;
};

struct ExperimentResult {
  std::vector<CsvRow> rows;
  int dimension_limited = 0;
  int non_converged = 0;
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

// "lo:hi:step" or a comma-separated list.
std::vector<std::string> parse_grid(const std::string& text);

// Copy of the scenario with one sweep variable set.
mc::ScenarioConfig apply_sweep(mc::ScenarioConfig sc, const std::string& var, const std::string& value);

}  // namespace risfox::cli
