#include "risfox/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

#include "risfox/error.hpp"
#include "risfox/sampler.hpp"

namespace risfox::mc {
namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double sample_distance(const fading::Mobility& m, Variates& v) {
  if (const auto* f = std::get_if<fading::FixedDistance>(&m)) return f->r;
  return sample(std::get<fading::RWPTopology>(m), v);
}

struct Element {
  fading::KappaMuParams h;
  fading::DGGParams g;
  fading::Mobility mobility;
  fading::PhaseNoiseParams phase;
  double half_a;
  bool rayleigh_first_hop;
};

}  // namespace

double ScenarioConfig::d() const { return std::hypot(d1, d2); }

void ScenarioConfig::validate() const {
  if (N < 1) throw DomainError("scenario: N must be at least 1");
  if (!(d1 > 0.0) || !(d2 > 0.0)) throw DomainError("scenario: distances must be positive");
  if (!(fc > 0.0)) throw DomainError("scenario: carrier frequency must be positive");
  if (!(path_exponent >= 2.0 && path_exponent <= 5.0)) throw DomainError("scenario: path exponent must lie in [2, 5]");
  if (!elements.empty() && static_cast<int>(elements.size()) != N)
    throw DomainError("scenario: explicit element list must have N entries");
  if (topology != "static") (void)fading::RWPTopology::by_name(topology, d2);
  modulation.validate();
}

std::vector<cascade::ElementConfig> ScenarioConfig::element_configs() const {
  std::vector<cascade::ElementConfig> out = elements.empty() ? std::vector<cascade::ElementConfig>(N, element) : elements;
  for (auto& e : out) {
    e.path_exponent = path_exponent;
    if (topology == "static")
      e.mobility = fading::FixedDistance{d2 / 2.0};
    else
      e.mobility = fading::RWPTopology::by_name(topology, d2);
  }
  return out;
}

cascade::SNRConfig ScenarioConfig::snr_config() const {
  const LinkBudget lb = link_budget(*this);
  cascade::SNRConfig s;
  s.gbar_ris = lb.gbar_ris;
  s.gbar_d = lb.gbar_d;
  s.direct = direct;
  s.direct_fading = direct_fading;
  s.direct_path_exponent = path_exponent;
  if (topology == "static")
    s.direct_mobility = fading::FixedDistance{std::hypot(d1, d2 / 2.0)};
  else
    s.direct_mobility = fading::RWPTopology::by_name(topology, d());
  return s;
}

LinkBudget link_budget(const ScenarioConfig& sc) {
  const double lambda_term = kSpeedOfLight / (4.0 * std::numbers::pi * sc.fc);
  const double common = db_to_linear(sc.gt_dbi + sc.gr_dbi + sc.pt_dbm - sc.noise_dbm) * lambda_term * lambda_term;
  return {common * std::pow(sc.d1, -sc.path_exponent), common};
}

void MCConfig::validate() const {
  if (trials < 1) throw DomainError("mc: trials must be positive");
  if (streams < 1) throw DomainError("mc: streams must be positive");
  if (threads < 0) throw DomainError("mc: threads must be non-negative");
}

std::vector<double> ChannelSamples::snr(double gbar_ris, double gbar_d, bool with_direct) const {
  std::vector<double> out(ris.size());
  for (std::size_t i = 0; i < ris.size(); ++i) out[i] = gbar_ris * ris[i] + (with_direct ? gbar_d * direct[i] : 0.0);
  return out;
}

ChannelSamples simulate_channel(const ScenarioConfig& sc, const MCConfig& mc) {
  sc.validate();
  mc.validate();
  std::vector<Element> elems;
  for (const auto& c : sc.element_configs()) {
    c.validate();
    const auto e = c.effective();
    elems.push_back({e.first_hop, e.second_hop, e.mobility, e.phase, e.path_exponent / 2.0,
                     c.special_case != cascade::SpecialCase::full});
  }
  const cascade::SNRConfig s = sc.snr_config();
  const double half_ad = s.direct_path_exponent / 2.0;

  ChannelSamples out;
  out.ris.resize(static_cast<std::size_t>(mc.trials));
  out.direct.resize(static_cast<std::size_t>(mc.trials));
  const std::int64_t blocks = std::min<std::int64_t>(mc.streams, mc.trials);

  auto run_block = [&](std::int64_t b) {
    const std::int64_t lo = mc.trials * b / blocks, hi = mc.trials * (b + 1) / blocks;
    Variates v(mc.seed, static_cast<std::uint64_t>(b));
    const fading::RayleighParams unit{1.0};
    for (std::int64_t t = lo; t < hi; ++t) {
      std::complex<double> acc = 0.0;
      for (const auto& e : elems) {
        const double h = e.rayleigh_first_hop ? sample(unit, v) : sample(e.h, v);
        const double g = sample(e.g, v);
        const double r = sample_distance(e.mobility, v);
        const double th = sample(e.phase, v);
        const double z = h * g * (e.half_a == 1.0 ? 1.0 / r : std::pow(r, -e.half_a));
        if (mc.amplitude == AmplitudeModel::projection)
          acc += z * std::cos(th);
        else
          acc += std::polar(z, th);
      }
      const double zd = sample(s.direct_fading, v) * std::pow(sample_distance(s.direct_mobility, v), -half_ad);
      out.ris[t] = std::norm(acc);
      out.direct[t] = zd * zd;
    }
  };

  int threads = mc.threads > 0 ? mc.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = static_cast<int>(std::min<std::int64_t>(threads, blocks));
  if (threads <= 1) {
    for (std::int64_t b = 0; b < blocks; ++b) run_block(b);
    return out;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::int64_t b = next++; b < blocks && !failed; b = next++) run_block(b);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<double> simulate(const ScenarioConfig& sc, const MCConfig& mc) {
  const LinkBudget lb = link_budget(sc);
  return simulate_channel(sc, mc).snr(lb.gbar_ris, lb.gbar_d, sc.direct);
}

ProbabilityEstimate empirical_outage(const std::vector<double>& samples, double gamma_th) {
  if (samples.empty()) throw DomainError("empirical_outage: no samples");
  const double n = static_cast<double>(samples.size());
  const double k = static_cast<double>(std::count_if(samples.begin(), samples.end(), [&](double g) { return g < gamma_th; }));
  const double p = k / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

ProbabilityEstimate empirical_ber(const std::vector<double>& samples, const metrics::Modulation& mod) {
  if (samples.empty()) throw DomainError("empirical_ber: no samples");
  mod.validate();
  double sum = 0.0, sum2 = 0.0;
  for (double g : samples) {
    const double b = 0.5 * boost::math::gamma_q(mod.p, mod.q * std::max(g, 0.0));
    sum += b;
    sum2 += b * b;
  }
  const double n = static_cast<double>(samples.size());
  const double mean = sum / n;
  const double var = std::max(0.0, sum2 / n - mean * mean);
  return {mean, std::sqrt(var / n)};
}

EmpiricalDistribution empirical_cdf(const std::vector<double>& samples, const std::vector<double>& grid,
                                    double confidence) {
  if (samples.empty()) throw DomainError("empirical_cdf: no samples");
  if (!std::is_sorted(grid.begin(), grid.end())) throw DomainError("empirical_cdf: grid must be sorted");
  if (!(confidence > 0.0 && confidence < 1.0)) throw DomainError("empirical_cdf: confidence must lie in (0, 1)");
  const StepCDF F(samples);
  EmpiricalDistribution d;
  d.grid = grid;
  for (double x : grid) d.cdf.push_back(F(x));
  const double n = static_cast<double>(samples.size());
  double mean = 0.0, m2 = 0.0, count = 0.0;
  for (double x : samples) {  // Welford
    count += 1.0;
    const double dx = x - mean;
    mean += dx / count;
    m2 += dx * (x - mean);
  }
  d.mean = mean;
  d.variance = n > 1.0 ? m2 / (n - 1.0) : 0.0;
  d.mean_stderr = std::sqrt(d.variance / n);
  d.dkw_half_width = std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * n));
  return d;
}

StepCDF::StepCDF(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw DomainError("StepCDF: no samples");
  std::sort(sorted_.begin(), sorted_.end());
}

double StepCDF::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double StepCDF::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("StepCDF::quantile: p must lie in [0, 1]");
  const auto n = sorted_.size();
  const auto i = std::min(n - 1, static_cast<std::size_t>(std::ceil(p * static_cast<double>(n))) - (p > 0.0 ? 1 : 0));
  return sorted_[i];
}

}  // namespace risfox::mc
