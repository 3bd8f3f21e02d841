#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "risfox/cascade.hpp"
#include "risfox/metrics.hpp"

namespace risfox::mc {

inline constexpr double kSpeedOfLight = 299792458.0;

// Physical scenario. Powers in dBm, gains in dBi, distances in m, frequency in Hz.
struct ScenarioConfig {
  int N = 1;
  double d1 = 50.0;
  double d2 = 100.0;
  double path_exponent = 2.0;
  double fc = 6e9;
  double pt_dbm = 30.0;
  double noise_dbm = -74.0;
  double gt_dbi = 10.0;
  double gr_dbi = 10.0;
  bool direct = false;
  std::string topology = "1d";  // 1d, 2d, 3d, or static (user fixed at d2/2)
  cascade::ElementConfig element{};
  std::vector<cascade::ElementConfig> elements;  // overrides `element` when non-empty
  fading::GenKParams direct_fading{};
  double gamma_th_db = 0.0;
  metrics::Modulation modulation = metrics::Modulation::bpsk();

  double d() const;  // source-destination distance sqrt(d1^2 + d2^2)
  void validate() const;
  // Per-element configurations with the scenario's topology, d2 and path exponent applied.
  std::vector<cascade::ElementConfig> element_configs() const;
  cascade::SNRConfig snr_config() const;
};

struct LinkBudget {
  double gbar_ris = 0.0;
  double gbar_d = 0.0;
};

// gbar_ris = G_T G_R H_l^2 P_t / sigma^2 with H_l = d1^{-a/2} c / (4 pi f_c);
// gbar_d = G_T G_R (c / (4 pi f_c))^2 P_t / sigma^2, the distance entering through Z_d.
LinkBudget link_budget(const ScenarioConfig& sc);

enum class AmplitudeModel {
  magnitude,   // |sum_i Z_i e^{j theta_i}|
  projection,  // sum_i Z_i cos(theta_i)
};

struct MCConfig {
  std::int64_t trials = 1000000;
  std::uint64_t seed = 1;
  int streams = 64;  // trials are split into this many fixed blocks, one random stream each
  int threads = 0;   // 0: hardware concurrency
  AmplitudeModel amplitude = AmplitudeModel::magnitude;

  void validate() const;
};

// Per-trial squared amplitudes. The SNR is gbar_ris * ris + omega * gbar_d * direct.
struct ChannelSamples {
  std::vector<double> ris;
  std::vector<double> direct;

  std::vector<double> snr(double gbar_ris, double gbar_d, bool with_direct) const;
};

ChannelSamples simulate_channel(const ScenarioConfig& sc, const MCConfig& mc);
// Resultant SNR samples at the scenario's link budget.
std::vector<double> simulate(const ScenarioConfig& sc, const MCConfig& mc);

struct ProbabilityEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

ProbabilityEstimate empirical_outage(const std::vector<double>& samples, double gamma_th);
ProbabilityEstimate empirical_ber(const std::vector<double>& samples, const metrics::Modulation& mod);

struct EmpiricalDistribution {
  std::vector<double> grid;
  std::vector<double> cdf;
  double mean = 0.0;
  double variance = 0.0;
  double mean_stderr = 0.0;
  double dkw_half_width = 0.0;  // at the requested confidence
};

EmpiricalDistribution empirical_cdf(const std::vector<double>& samples, const std::vector<double>& grid,
                                    double confidence = 0.99);

// Step-function CDF over a sorted copy of the samples.
class StepCDF {
 public:
  explicit StepCDF(std::vector<double> samples);
  double operator()(double x) const;
  double quantile(double p) const;
  std::size_t size() const noexcept { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

}  // namespace risfox::mc
