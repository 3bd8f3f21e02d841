#include "risfox/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "risfox/error.hpp"
#include "risfox/gamma.hpp"

namespace risfox::metrics {
namespace {

using cascade::MellinVariable;
using cascade::SumTerm;
using specfun::JointGamma;

std::vector<double> fill(std::size_t n, double v) { return std::vector<double>(n, v); }

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

void Modulation::validate() const {
  if (!(p > 0.0) || !(q > 0.0)) throw DomainError("modulation: p and q must be positive");
}

AsymptoticExponents asymptotic_exponents(const std::vector<ElementConfig>& cfgs, const fading::GenKParams* direct) {
  AsymptoticExponents e;
  for (const auto& c0 : cfgs) {
    const ElementConfig c = c0.effective();
    const auto& g = c.second_hop;
    e.p.push_back(std::min({g.alpha1() * g.beta1(), g.alpha2() * g.beta2(), 2.0 * c.first_hop.mu}));
    e.g_out += e.p.back() / 2.0;
  }
  if (direct) {
    e.p_direct = 2.0 * std::min(direct->m(), direct->M());
    e.g_out += e.p_direct / 2.0;
  }
  return e;
}

AsymptoticExponents kernel_exponents(const std::vector<ElementConfig>& cfgs, const SNRConfig& s) {
  AsymptoticExponents e;
  for (const auto& c : cfgs) {
    e.p.push_back(cascade::element_variable(c).pole().location);
    e.g_out += e.p.back() / 2.0;
  }
  if (s.direct) {
    e.p_direct = cascade::direct_variable(s).pole().location;
    e.g_out += e.p_direct / 2.0;
  }
  return e;
}

double diversity_order(const std::vector<ElementConfig>& cfgs, const fading::GenKParams* direct) {
  return asymptotic_exponents(cfgs, direct).g_out;
}

Estimate outage(const SNRConfig& s, const std::vector<ElementConfig>& cfgs, double gamma_th, OutageMethod method,
                const cascade::MultiLimits& lim) {
  s.validate();
  if (!(gamma_th > 0.0)) throw DomainError("outage: threshold must be positive");
  if (method == OutageMethod::exact || method == OutageMethod::bound) {
    const auto m = method == OutageMethod::exact ? cascade::Method::exact : cascade::Method::bound;
    const Estimate e = cascade::risd_snr(s, cfgs, gamma_th, cascade::Which::cdf, m, lim);
    return {clamp01(e.value), e.error};
  }
  // Leading residue of the exact Mellin-Barnes form.
  const std::size_t N = cfgs.size();
  const double lg = std::log(gamma_th);
  std::vector<SumTerm> terms;
  if (!s.direct) {
    const double base = 0.5 * (lg - std::log(s.gbar_ris));
    for (const auto& c : cfgs) terms.push_back({cascade::element_variable(c), base});
    return {cascade::laplace_leading_term(terms, {{1.0, fill(N, 1.0), -1}}, 0.0), 0.0};
  }
  const double half_base = 0.5 * (lg - std::log(s.gbar_ris));
  for (const auto& c : cfgs) terms.push_back({cascade::element_variable(c), half_base});
  terms.push_back({cascade::direct_snr_variable(s), lg});
  std::vector<double> half = fill(N + 1, 0.5), unit = fill(N + 1, 1.0), full = fill(N + 1, 0.5);
  half[N] = 0.0;
  unit[N] = 0.0;
  full[N] = 1.0;
  return {cascade::laplace_leading_term(terms, {{0.0, half, +1}, {0.0, unit, -1}, {1.0, full, -1}}, std::log(0.5)),
          0.0};
}

Estimate ber(const SNRConfig& s, const std::vector<ElementConfig>& cfgs, const Modulation& mod, cascade::Method method,
             const cascade::MultiLimits& lim) {
  s.validate();
  mod.validate();
  if (cfgs.empty()) throw DimensionError("ber: no elements");
  const std::size_t N = cfgs.size();
  const double lq = std::log(mod.q);
  const double lpre = -std::log(2.0) - specfun::ln_gamma(mod.p);
  // The CDF's terminal factor x^w / Gamma(1+w) becomes Gamma(p+w) q^{-w} / (2 Gamma(p) Gamma(1+w)).
  if (!s.direct) {
    const double base = -0.5 * (lq + std::log(s.gbar_ris));
    if (method == cascade::Method::bound) {
      const std::vector<SumTerm> terms{{cascade::geometric_mean_variable(cfgs), base}};
      return cascade::laplace_integral(terms, {{1.0, {1.0}, -1}, {mod.p, {0.5}, +1}}, lpre, lim);
    }
    std::vector<SumTerm> terms;
    for (const auto& c : cfgs) terms.push_back({cascade::element_variable(c), base});
    return cascade::laplace_integral(terms, {{1.0, fill(N, 1.0), -1}, {mod.p, fill(N, 0.5), +1}}, lpre, lim);
  }
  const MellinVariable W = cascade::direct_snr_variable(s);
  if (method == cascade::Method::bound) {
    const MellinVariable V = cascade::geometric_mean_variable(cfgs).power(2.0).scaled(s.gbar_ris);
    const std::vector<SumTerm> terms{{V, -lq}, {W, -lq}};
    return cascade::laplace_integral(terms, {{1.0, {1.0, 1.0}, -1}, {mod.p, {1.0, 1.0}, +1}}, lpre, lim);
  }
  std::vector<SumTerm> terms;
  const double half_base = -0.5 * (lq + std::log(s.gbar_ris));
  for (const auto& c : cfgs) terms.push_back({cascade::element_variable(c), half_base});
  terms.push_back({W, -lq});
  std::vector<double> half = fill(N + 1, 0.5), unit = fill(N + 1, 1.0), full = fill(N + 1, 0.5);
  half[N] = 0.0;
  unit[N] = 0.0;
  full[N] = 1.0;
  const std::vector<JointGamma> joint{{0.0, half, +1}, {0.0, unit, -1}, {1.0, full, -1}, {mod.p, full, +1}};
  return cascade::laplace_integral(terms, joint, lpre + std::log(0.5), lim);
}

Estimate direct_only_outage(const SNRConfig& s, double gamma_th) {
  if (!(gamma_th > 0.0)) throw DomainError("outage: threshold must be positive");
  const Estimate e = cascade::mellin_cdf(cascade::direct_snr_variable(s), gamma_th);
  return {clamp01(e.value), e.error};
}

Estimate direct_only_ber(const SNRConfig& s, const Modulation& mod) {
  mod.validate();
  const std::vector<SumTerm> terms{{cascade::direct_snr_variable(s), -std::log(mod.q)}};
  return cascade::laplace_integral(terms, {{1.0, {1.0}, -1}, {mod.p, {1.0}, +1}},
                                   -std::log(2.0) - specfun::ln_gamma(mod.p), {});
}

Estimate ber_numeric(const CDF& cdf, const Modulation& mod, double abs_tol) {
  mod.validate();
  // u = q gamma = t^2 removes the t^{2p-2} endpoint singularity.
  const double lnorm = -specfun::ln_gamma(mod.p);
  auto f = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double u = t * t;
    const double k = 2.0 * std::exp((2.0 * mod.p - 1.0) * std::log(t) - u + lnorm);
    return k == 0.0 ? 0.0 : k * cdf(u / mod.q);
  };
  double err = 0.0, l1 = 0.0;
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  // The kernel integrates to 1 over (0, inf); beyond t = 40 it is below 1e-690.
  const double v = GK::integrate(f, 0.0, 40.0, 15, abs_tol, &err, &l1);
  if (!std::isfinite(v)) throw QuadratureError("ber_numeric: non-finite quadrature result");
  if (err > std::max(abs_tol, 1e-6 * std::abs(v))) {
    // Kronrod estimates are pessimistic on step-like CDFs (empirical ones in particular), so the retry
    // splits at the kernel's bulk and compares two refinement depths instead.
    auto split = [&](unsigned depth) {
      return GK::integrate(f, 0.0, 3.0, depth, abs_tol) + GK::integrate(f, 3.0, 40.0, depth, abs_tol);
    };
    const double coarse = split(12), fine = split(18);
    const double diff = std::abs(fine - coarse);
    if (!(diff <= std::max(10.0 * abs_tol, 1e-6 * std::abs(fine))))
      throw QuadratureError("ber_numeric: adaptive quadrature did not reach the requested tolerance");
    return {0.5 * fine, 0.5 * diff};
  }
  return {0.5 * v, 0.5 * err};
}

}  // namespace risfox::metrics
