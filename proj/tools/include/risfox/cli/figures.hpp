#pragma once

#include <string>
#include <vector>

#include "risfox/cli/experiment.hpp"

namespace risfox::cli {

// Scenario used for figure reproduction: 0 dBi antenna gains and the projection amplitude model.
extern const char* const kFigureScenarioText;
// Default physical scenario with 10 + 10 dBi gains.
extern const char* const kDefaultScenarioText;

scenario::Scenario figure_scenario();
scenario::Scenario default_scenario();

struct FigurePlan {
  int figure = 0;
  std::string title;
  std::vector<ExperimentSpec> curves;
};

// Curves of figure 2..7 on a transmit-power grid.
FigurePlan figure_plan(int figure, const scenario::Scenario& base, const std::vector<std::string>& methods,
                       const std::vector<std::string>& pt_grid);

// Transmit power (dBm) at which the Monte Carlo outage or BER reaches `target`.
// The SNR scales linearly with P_t, so one set of channel samples serves every power.
double pt_at_outage(const mc::ChannelSamples& ch, const mc::ScenarioConfig& sc, double target, bool direct_only = false);
double pt_at_ber(const mc::ChannelSamples& ch, const mc::ScenarioConfig& sc, double target, bool direct_only = false);

}  // namespace risfox::cli
