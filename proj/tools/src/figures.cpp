#include "risfox/cli/figures.hpp"

#include <cmath>

#include "risfox/error.hpp"

namespace risfox::cli {

const char* const kDefaultScenarioText = R"(# Default scenario
ris.n = 1
link.d1 = 50
link.d2 = 100
link.a = 2
link.fc = 6e9
link.pt_dbm = 30
link.noise_dbm = -74
link.gt_dbi = 10
link.gr_dbi = 10
mobility.topology = 1d
fading.kappa = 4
fading.mu = 2
dgg.alpha1 = 2
dgg.beta1 = 1
dgg.alpha2 = 2
dgg.beta2 = 2
phase.L = 1
direct.enabled = 0
direct.m = 1
direct.M = 2.5454
direct.m0 = 1
metric.gamma_th_db = 0
modulation = bpsk
mc.trials = 1000000
mc.seed = 1
mc.streams = 64
mc.amplitude = magnitude
)";

const char* const kFigureScenarioText = R"(# Figure reproduction: unit antenna gains, projected amplitude
ris.n = 10
link.d1 = 50
link.d2 = 100
link.a = 2
link.fc = 6e9
link.pt_dbm = 30
link.noise_dbm = -74
link.gt_dbi = 0
link.gr_dbi = 0
mobility.topology = 1d
fading.kappa = 4
fading.mu = 2
dgg.alpha1 = 2
dgg.beta1 = 1
dgg.alpha2 = 2
dgg.beta2 = 2
phase.L = 1
direct.enabled = 0
direct.m = 1
direct.M = 2.5454
direct.m0 = 1
metric.gamma_th_db = 0
modulation = bpsk
mc.trials = 1000000
mc.seed = 1
mc.streams = 64
mc.amplitude = projection
)";

scenario::Scenario figure_scenario() { return scenario::parse(kFigureScenarioText); }
scenario::Scenario default_scenario() { return scenario::parse(kDefaultScenarioText); }

namespace {

ExperimentSpec curve(const scenario::Scenario& base, Metric metric, const std::vector<std::string>& methods,
                     const std::vector<std::string>& grid, int N, const std::string& L, const std::string& topology,
                     double a, bool direct, const std::string& label) {
  ExperimentSpec e;
  e.scenario = base;
  auto& sc = e.scenario.config;
  sc.N = N;
  sc.elements.clear();
  sc.element.phase = L == "perfect" ? fading::PhaseNoiseParams::perfect_phase()
                                    : fading::PhaseNoiseParams::quantized(std::stoi(L));
  sc.topology = topology;
  sc.path_exponent = a;
  sc.direct = direct;
  e.metric = metric;
  e.sweep = "pt";
  e.grid = grid;
  e.methods = methods;
  e.label = label;
  return e;
}

}  // namespace

FigurePlan figure_plan(int figure, const scenario::Scenario& base, const std::vector<std::string>& methods,
                       const std::vector<std::string>& pt_grid) {
  FigurePlan plan;
  plan.figure = figure;
  auto add = [&](Metric m, int N, const std::string& L, const std::string& topo, double a, bool direct) {
    const std::string label = "N" + std::to_string(N) + "_L" + L + "_" + topo + "_a" + format_number(a) +
                              (direct ? "_direct" : "");
    plan.curves.push_back(curve(base, m, methods, pt_grid, N, L, topo, a, direct, label));
  };
  auto add_dt = [&](Metric m) {
    auto e = curve(base, m, {}, pt_grid, 1, "1", "1d", 2.0, true, "direct_only");
    for (const auto& x : methods)
      if (x != "asymptotic") e.methods.push_back(x);
    e.direct_only = true;
    plan.curves.push_back(e);
  };
  switch (figure) {
    case 2:
      plan.title = "outage without direct link, L=1 and perfect phase, mobility models";
      for (const char* L : {"1", "perfect"})
        for (const char* t : {"static", "1d", "2d", "3d"}) add(Metric::outage, 10, L, t, 2.0, false);
      add(Metric::outage, 20, "1", "1d", 2.0, false);
      break;
    case 3:
      plan.title = "BER without direct link, N=10, L=1, path-loss exponents";
      for (double a : {2.0, 2.5, 3.0})
        for (const char* t : {"1d", "static"}) add(Metric::ber, 10, "1", t, a, false);
      break;
    case 4:
    case 5: {
      const Metric m = figure == 4 ? Metric::outage : Metric::ber;
      plan.title = figure == 4 ? "outage without direct link, 1-D mobility, phase-noise levels"
                               : "BER without direct link, 1-D mobility, phase-noise levels";
      for (int N : {10, 20, 50})
        for (const char* L : {"1", "2", "perfect"}) add(m, N, L, "1d", 2.0, false);
      add(m, 10, "perfect", "static", 2.0, false);
      break;
    }
    case 6:
    case 7: {
      const Metric m = figure == 6 ? Metric::outage : Metric::ber;
      plan.title = figure == 6 ? "outage with direct link" : "BER with direct link";
      add_dt(m);
      for (int N : {10, 20})
        for (const char* L : {"1", "2"})
          for (bool d : {false, true}) add(m, N, L, "1d", 2.0, d);
      break;
    }
    default:
      throw ConfigError("figure must be one of 2..7", 0, "figure");
  }
  return plan;
}

namespace {

// Per-milliwatt SNR samples.
std::vector<double> unit_power_snr(const mc::ChannelSamples& ch, mc::ScenarioConfig sc, bool direct_only) {
  sc.pt_dbm = 0.0;
  const auto lb = mc::link_budget(sc);
  return direct_only ? ch.snr(0.0, lb.gbar_d, true) : ch.snr(lb.gbar_ris, lb.gbar_d, sc.direct);
}

}  // namespace

double pt_at_outage(const mc::ChannelSamples& ch, const mc::ScenarioConfig& sc, double target, bool direct_only) {
  const mc::StepCDF F(unit_power_snr(ch, sc, direct_only));
  const double gth = std::pow(10.0, sc.gamma_th_db / 10.0);
  return 10.0 * std::log10(gth / F.quantile(target));
}

double pt_at_ber(const mc::ChannelSamples& ch, const mc::ScenarioConfig& sc, double target, bool direct_only) {
  const auto s = unit_power_snr(ch, sc, direct_only);
  auto ber_at = [&](double pt_dbm) {
    std::vector<double> scaled(s);
    const double p = std::pow(10.0, pt_dbm / 10.0);
    for (auto& g : scaled) g *= p;
    return mc::empirical_ber(scaled, sc.modulation).value;
  };
  double lo = -100.0, hi = 200.0;
  if (ber_at(lo) < target || ber_at(hi) > target) throw NonConvergenceError("pt_at_ber: target BER not bracketed");
  // BER is decreasing in P_t; interpolate log BER on the final bracket.
  while (hi - lo > 0.01) {
    const double mid = 0.5 * (lo + hi);
    (ber_at(mid) > target ? lo : hi) = mid;
  }
  const double bl = std::log(ber_at(lo)), bh = std::log(ber_at(hi)), t = std::log(target);
  return bl == bh ? lo : lo + (hi - lo) * (bl - t) / (bl - bh);
}

}  // namespace risfox::cli
