#pragma once

#include <functional>
#include <vector>

#include "risfox/cascade.hpp"

namespace risfox::metrics {

using cascade::ElementConfig;
using cascade::SNRConfig;
using specfun::Estimate;

// Binary modulation with conditional error probability Gamma(p, q gamma) / (2 Gamma(p)).
struct Modulation {
  double p = 0.5;
  double q = 1.0;

  void validate() const;
  static Modulation bpsk() { return {0.5, 1.0}; }
  static Modulation dbpsk() { return {1.0, 1.0}; }
};

enum class OutageMethod { exact, bound, asymptotic };

struct AsymptoticExponents {
  std::vector<double> p;  // one per element
  double p_direct = 0.0;  // 0 when there is no direct link
  double g_out = 0.0;     // sum of all exponents / 2
};

// min{a1 b1, a2 b2, 2 mu} per element and min{2m, 2M} for the direct link.
AsymptoticExponents asymptotic_exponents(const std::vector<ElementConfig>& cfgs, const fading::GenKParams* direct);
// Exponents read off the Mellin poles actually used by the analytic pipeline; these include the
// phase-projection pole at 1 when the residual phase is uniform on (-pi/2, pi/2).
AsymptoticExponents kernel_exponents(const std::vector<ElementConfig>& cfgs, const SNRConfig& s);

double diversity_order(const std::vector<ElementConfig>& cfgs, const fading::GenKParams* direct = nullptr);

Estimate outage(const SNRConfig& s, const std::vector<ElementConfig>& cfgs, double gamma_th, OutageMethod method,
                const cascade::MultiLimits& lim = {});

Estimate ber(const SNRConfig& s, const std::vector<ElementConfig>& cfgs, const Modulation& mod, cascade::Method method,
             const cascade::MultiLimits& lim = {});

// Direct transmission alone: SNR gbar_d Z_d^2.
Estimate direct_only_outage(const SNRConfig& s, double gamma_th);
Estimate direct_only_ber(const SNRConfig& s, const Modulation& mod);

using CDF = std::function<double(double)>;
// (q^p / 2 Gamma(p)) int_0^inf gamma^{p-1} e^{-q gamma} F(gamma) d gamma by adaptive Gauss-Kronrod.
Estimate ber_numeric(const CDF& cdf, const Modulation& mod, double abs_tol = 1e-8);

}  // namespace risfox::metrics
