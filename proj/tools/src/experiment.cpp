#include "risfox/cli/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

#include "risfox/error.hpp"
#include "risfox/metrics.hpp"

namespace risfox::cli {
namespace {

double to_double(const std::string& v, const std::string& what) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc() || r.ptr != end) throw ConfigError("expected a number, got '" + v + "'", 0, what);
  return out;
}

double db(double x) { return std::pow(10.0, x / 10.0); }

std::string describe(const mc::ScenarioConfig& sc, bool direct_only) {
  const auto& ph = sc.element.phase;
  std::string m = direct_only ? "curve=direct_only" : "N=" + std::to_string(sc.N);
  m += ";L=" + (ph.perfect ? std::string("perfect") : std::to_string(ph.L));
  m += ";topology=" + sc.topology + ";a=" + format_number(sc.path_exponent);
  m += ";direct=" + std::string(sc.direct || direct_only ? "1" : "0");
  m += ";pt_dbm=" + format_number(sc.pt_dbm);
  return m;
}

const std::vector<std::string> kMethods{"exact", "bound", "asymptotic", "mc"};

// Point evaluation of one analytic method.
specfun::Estimate analytic(const ExperimentSpec& spec, const mc::ScenarioConfig& sc, const std::string& method,
                           double x) {
  const auto s = sc.snr_config();
  const auto cfgs = sc.element_configs();
  const double gth = db(sc.gamma_th_db);
  if (spec.direct_only) {
    switch (spec.metric) {
      case Metric::outage: return metrics::direct_only_outage(s, gth);
      case Metric::ber: return metrics::direct_only_ber(s, sc.modulation);
      case Metric::cdf: return metrics::direct_only_outage(s, x);
      case Metric::pdf: return cascade::mellin_pdf(cascade::direct_snr_variable(s), x);
    }
  }
  const auto m = method == "exact" ? cascade::Method::exact : cascade::Method::bound;
  switch (spec.metric) {
    case Metric::outage: {
      const auto om = method == "exact"   ? metrics::OutageMethod::exact
                      : method == "bound" ? metrics::OutageMethod::bound
                                          : metrics::OutageMethod::asymptotic;
      return metrics::outage(s, cfgs, gth, om, spec.limits);
    }
    case Metric::ber:
      return metrics::ber(s, cfgs, sc.modulation, m, spec.limits);
    case Metric::cdf:
      if (method == "asymptotic") return metrics::outage(s, cfgs, x, metrics::OutageMethod::asymptotic);
      return cascade::risd_snr(s, cfgs, x, cascade::Which::cdf, m, spec.limits);
    case Metric::pdf:
      return cascade::risd_snr(s, cfgs, x, cascade::Which::pdf, m, spec.limits);
  }
  return {};
}

// Monte Carlo estimate from per-trial SNR samples.
std::pair<double, double> empirical(const ExperimentSpec& spec, const mc::ScenarioConfig& sc,
                                    const std::vector<double>& snr, double x) {
  switch (spec.metric) {
    case Metric::outage: {
      const auto e = mc::empirical_outage(snr, db(sc.gamma_th_db));
      return {e.value, e.stderr_};
    }
    case Metric::ber: {
      const auto e = mc::empirical_ber(snr, sc.modulation);
      return {e.value, e.stderr_};
    }
    case Metric::cdf: {
      const auto e = mc::empirical_outage(snr, x);
      return {e.value, e.stderr_};
    }
    case Metric::pdf: {
      // Density from the fraction of samples in a +-5% window.
      const double lo = 0.95 * x, hi = 1.05 * x;
      const double n = static_cast<double>(snr.size());
      const double k = static_cast<double>(std::count_if(snr.begin(), snr.end(), [&](double g) { return g >= lo && g < hi; }));
      const double p = k / n;
      return {p / (hi - lo), std::sqrt(p * (1.0 - p) / n) / (hi - lo)};
    }
  }
  return {};
}

// The asymptotic form exists only for outage-type quantities of the RIS sum.
bool supported(const ExperimentSpec& spec, const std::string& method) {
  if (method != "asymptotic") return true;
  return !spec.direct_only && (spec.metric == Metric::outage || spec.metric == Metric::cdf);
}

}  // namespace

Metric parse_metric(const std::string& name) {
  if (name == "outage") return Metric::outage;
  if (name == "ber") return Metric::ber;
  if (name == "pdf") return Metric::pdf;
  if (name == "cdf") return Metric::cdf;
  throw ConfigError("unknown metric '" + name + "'");
}

std::string metric_name(Metric m) {
  switch (m) {
    case Metric::outage: return "outage";
    case Metric::ber: return "ber";
    case Metric::pdf: return "pdf";
    case Metric::cdf: return "cdf";
  }
  return {};
}

void ExperimentSpec::validate() const {
  if (grid.empty()) throw ConfigError("sweep grid is empty", 0, "grid");
  const bool density = metric == Metric::pdf || metric == Metric::cdf;
  static const std::vector<std::string> vars{"pt", "n", "L", "a", "topology", "gamma_db"};
  if (std::find(vars.begin(), vars.end(), sweep) == vars.end()) throw ConfigError("unknown sweep variable", 0, sweep);
  if (density != (sweep == "gamma_db"))
    throw ConfigError(density ? "pdf and cdf sweep gamma_db" : "gamma_db sweeps need the pdf or cdf metric", 0, "sweep");
  if (sweep != "topology" && sweep != "L") {
    std::vector<double> v;
    for (const auto& g : grid) v.push_back(to_double(g, "grid"));
    if (!std::is_sorted(v.begin(), v.end())) throw ConfigError("sweep grid must be sorted", 0, "grid");
  }
  if (methods.empty()) throw ConfigError("no methods requested", 0, "method");
  for (const auto& m : methods)
    if (std::find(kMethods.begin(), kMethods.end(), m) == kMethods.end())
      throw ConfigError("unknown method '" + m + "'", 0, "method");
}

std::vector<std::string> parse_grid(const std::string& text) {
  std::vector<std::string> out;
  if (text.find(':') != std::string::npos) {
    std::vector<double> p;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) p.push_back(to_double(tok, "grid"));
    if (p.size() != 3 || !(p[2] > 0.0) || p[1] < p[0]) throw ConfigError("grid must be lo:hi:step with step > 0", 0, "grid");
    const auto n = static_cast<long>(std::floor((p[1] - p[0]) / p[2] + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(format_number(p[0] + static_cast<double>(i) * p[2]));
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

mc::ScenarioConfig apply_sweep(mc::ScenarioConfig sc, const std::string& var, const std::string& value) {
  if (var == "pt") {
    sc.pt_dbm = to_double(value, var);
  } else if (var == "n") {
    sc.N = static_cast<int>(to_double(value, var));
    sc.elements.clear();
  } else if (var == "L") {
    sc.element.phase = value == "perfect" ? fading::PhaseNoiseParams::perfect_phase()
                                          : fading::PhaseNoiseParams::quantized(static_cast<int>(to_double(value, var)));
  } else if (var == "a") {
    sc.path_exponent = to_double(value, var);
  } else if (var == "topology") {
    sc.topology = value;
  } else if (var != "gamma_db") {
    throw ConfigError("unknown sweep variable", 0, var);
  }
  sc.validate();
  return sc;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentResult res;
  const auto& base = spec.scenario.config;
  const std::string prefix = spec.label.empty() ? "" : spec.label + ":";
  for (const auto& method : spec.methods) {
    // Channel samples do not depend on transmit power or the threshold; reuse them across those sweeps.
    std::optional<mc::ChannelSamples> shared;
    const bool reuse = spec.sweep == "pt" || spec.sweep == "gamma_db";
    for (const auto& g : spec.grid) {
      const mc::ScenarioConfig sc = apply_sweep(base, spec.sweep, g);
      const double x = spec.sweep == "gamma_db" ? db(to_double(g, "grid")) : 0.0;
      CsvRow row{g, prefix + method, 0.0, 0.0, describe(sc, spec.direct_only)};
      if (!supported(spec, method)) {
        row.value = row.err = std::nan("");
        row.meta += ";status=unsupported";
      } else if (method == "mc") {
        if (!shared || !reuse) shared = mc::simulate_channel(sc, spec.scenario.mc);
        const auto lb = mc::link_budget(sc);
        const auto snr = spec.direct_only ? shared->snr(0.0, lb.gbar_d, true) : shared->snr(lb.gbar_ris, lb.gbar_d, sc.direct);
        std::tie(row.value, row.err) = empirical(spec, sc, snr, x);
        row.meta += ";trials=" + std::to_string(spec.scenario.mc.trials);
      } else {
        try {
          const auto e = analytic(spec, sc, method, x);
          row.value = e.value;
          row.err = e.error;
        } catch (const DimensionError&) {
          row.value = row.err = std::nan("");
          row.meta += ";status=dimension-limit";
          ++res.dimension_limited;
        } catch (const Error& e) {
          const bool numerical = dynamic_cast<const NonConvergenceError*>(&e) ||
                                 dynamic_cast<const QuadratureError*>(&e) || dynamic_cast<const TruncationError*>(&e);
          if (!numerical) throw;
          row.value = row.err = std::nan("");
          row.meta += ";status=non-convergence";
          ++res.non_converged;
        }
      }
      res.rows.push_back(std::move(row));
    }
  }
  return res;
}

}  // namespace risfox::cli
