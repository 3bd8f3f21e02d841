#pragma once

#include <functional>
#include <vector>

#include "risfox/fading.hpp"
#include "risfox/foxh.hpp"
#include "risfox/mellin_variable.hpp"

namespace risfox::cascade {

using fading::DGGParams;
using fading::GenKParams;
using fading::KappaMuParams;
using fading::Mobility;
using fading::PhaseNoiseParams;
using fading::RWPTopology;
using specfun::Estimate;

enum class SpecialCase { full, rayleigh_mobility, rayleigh_static };

// How the residual phase enters the real-valued element amplitude.
enum class PhaseModel {
  projection,    // Z_i = |h| r^{-a/2} |g| cos(theta)
  printed_sinc,  // moment factor sin(pi q s)/(pi q s); not a valid distribution, kept for reporting
};

enum class Which { pdf, cdf };
enum class Method { exact, bound };

struct ElementConfig {
  KappaMuParams first_hop{};
  DGGParams second_hop{};
  Mobility mobility = RWPTopology::one_d(100.0);
  PhaseNoiseParams phase = PhaseNoiseParams::quantized(1);
  double path_exponent = 2.0;
  SpecialCase special_case = SpecialCase::full;
  PhaseModel phase_model = PhaseModel::projection;

  void validate() const;
  // Parameters after applying the Rayleigh special case, if any.
  ElementConfig effective() const;
  double reference_distance() const;  // dmax of the mobility model, or the fixed distance
};

// Per-element series data of the Fox-H representation.
struct CascadeCoefficients {
  std::vector<double> psi;         // psi[k * n + j]: w_k B_j / (Gamma(mu+k) Gamma(beta1) Gamma(beta2))
  int terms = 0;                   // number of k retained
  int mobility_terms = 0;          // n (1 for a fixed distance)
  double zeta1 = 0.0;              // mu (1 + kappa)
  double zeta2 = 0.0;              // phi^{1/alpha2} d^{a/2}
  double argument_scale = 0.0;     // sqrt(zeta1) * zeta2
  std::vector<specfun::FoxHParams> blocks;  // blocks[k * n + j]
  std::vector<double> psi_d;       // direct link: B_j / (Gamma(m) Gamma(M))
};

struct SNRConfig {
  double gbar_ris = 1.0;
  double gbar_d = 1.0;
  bool direct = false;
  GenKParams direct_fading{};
  Mobility direct_mobility = RWPTopology::one_d(111.80339887498948);
  double direct_path_exponent = 2.0;

  void validate() const;
};

// Mellin descriptions of the channel ingredients.
MellinVariable kappa_mu_variable(const KappaMuParams& p);
MellinVariable rayleigh_variable(double msp = 1.0);
MellinVariable gg_variable(double alpha, double beta, double omega);
MellinVariable path_gain_variable(const Mobility& m, double a);
MellinVariable phase_variable(const PhaseNoiseParams& p, PhaseModel model);
MellinVariable genk_variable(const GenKParams& p);
MellinVariable element_variable(const ElementConfig& cfg);
MellinVariable direct_variable(const SNRConfig& s);           // Z_d
MellinVariable direct_snr_variable(const SNRConfig& s);       // gbar_d Z_d^2
// N (prod Z_i)^{1/N}, the AM-GM lower bound of sum Z_i.
MellinVariable geometric_mean_variable(const std::vector<ElementConfig>& cfgs);

CascadeCoefficients cascade_coefficients(const ElementConfig& cfg, const SNRConfig* direct = nullptr);

// Density and CDF of a positive variable from its Mellin transform.
Estimate mellin_pdf(const MellinVariable& v, double x, double rel_tol = 1e-8);
Estimate mellin_cdf(const MellinVariable& v, double x, double rel_tol = 1e-8);

double mobility_link_pdf(const DGGParams& p, const RWPTopology& t, double a, double x);

double zi_pdf(const ElementConfig& cfg, double x);
double zi_cdf(const ElementConfig& cfg, double x);
// Term-by-term Fox-H series of the element density.
double zi_pdf_series(const ElementConfig& cfg, double x);
double zi_moment(const ElementConfig& cfg, double r);

struct MultiLimits {
  int max_tensor_dim = 3;
  int max_dim = 5;
  double rel_tol = 1e-4;
};

Estimate zris_exact(const std::vector<ElementConfig>& cfgs, double x, Which which, const MultiLimits& lim = {});
Estimate zris_bound(const std::vector<ElementConfig>& cfgs, double x, Which which);

using ZStatistic = std::function<double(double, Which)>;
double snr_transform(const SNRConfig& s, double gamma, Which which, const ZStatistic& source);

double direct_snr_pdf(const GenKParams& dl, const Mobility& t, double a, double gbar_d, double gamma);
double direct_snr_cdf(const GenKParams& dl, const Mobility& t, double a, double gbar_d, double gamma);

Estimate risd_snr(const SNRConfig& s, const std::vector<ElementConfig>& cfgs, double gamma, Which which,
                  Method method, const MultiLimits& lim = {});

// Generic Laplace-domain sum statistic:
//   prefactor * (1/2 pi i)^N \int prod_i Gamma(u_i) E[X_i^{-u_i}] e^{u_i base_i} * joint(u) du.
struct SumTerm {
  MellinVariable var;
  double log_base = 0.0;
};
Estimate laplace_integral(const std::vector<SumTerm>& terms, const std::vector<specfun::JointGamma>& joint,
                          double log_prefactor, const MultiLimits& lim);
// Leading residue term of the same integral as all bases tend to -infinity.
double laplace_leading_term(const std::vector<SumTerm>& terms, const std::vector<specfun::JointGamma>& joint,
                            double log_prefactor);

}  // namespace risfox::cascade
