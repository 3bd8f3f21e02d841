#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "risfox/contour.hpp"
#include "risfox/foxh.hpp"

namespace risfox::fading {

using specfun::cplx;

struct KappaMuParams {
  double kappa = 4.0;
  double mu = 2.0;
  int series_terms = 60;  // upper limit K on the Bessel series index

  void validate() const;
};

// Product of two generalized-Gamma amplitudes with E[chi_j^2] = msp_j.
class DGGParams {
 public:
  DGGParams() : DGGParams(2.0, 1.0, 2.0, 2.0) {}
  DGGParams(double alpha1, double beta1, double alpha2, double beta2, double msp1 = 1.0, double msp2 = 1.0);

  double alpha1() const noexcept { return alpha1_; }
  double beta1() const noexcept { return beta1_; }
  double alpha2() const noexcept { return alpha2_; }
  double beta2() const noexcept { return beta2_; }
  double msp1() const noexcept { return msp1_; }
  double msp2() const noexcept { return msp2_; }
  double omega1() const noexcept { return omega1_; }
  double omega2() const noexcept { return omega2_; }
  // Scale with E[g^s] = phi^{-s/alpha2} Gamma(beta1 + s/alpha1) Gamma(beta2 + s/alpha2) / (Gamma(beta1) Gamma(beta2)).
  double phi() const noexcept;

 private:
  double alpha1_, beta1_, alpha2_, beta2_, msp1_, msp2_;
  double omega1_, omega2_;
};

class GenKParams {
 public:
  GenKParams() : GenKParams(1.0, 2.5454, 1.0) {}
  GenKParams(double m, double M, double m0);
  // M derived from the log-normal shadowing spread; an explicit M must agree within 1e-9.
  static GenKParams from_sigma_db(double m, double sigma_db, double m0, std::optional<double> explicit_M = {});
  static double shadowing_from_sigma_db(double sigma_db);

  double m() const noexcept { return m_; }
  double M() const noexcept { return M_; }
  double m0() const noexcept { return m0_; }
  double b() const noexcept { return b_; }
  std::optional<double> sigma_db() const noexcept { return sigma_db_; }

 private:
  double m_, M_, m0_, b_;
  std::optional<double> sigma_db_;
};

struct RayleighParams {
  double msp = 1.0;
};

using FadingDistribution = std::variant<KappaMuParams, DGGParams, GenKParams, RayleighParams>;

// Distance density sum_j B_j r^{beta_j} / dmax^{beta_j + 1} on [0, dmax].
// Coefficients are kept as integer numerators over a common denominator so normalisation is checked exactly.
struct RWPTopology {
  std::string name;
  std::vector<std::int64_t> B_num;
  std::int64_t B_den = 1;
  std::vector<int> beta;
  double dmax = 100.0;

  int n() const noexcept { return static_cast<int>(beta.size()); }
  double B(int j) const noexcept { return static_cast<double>(B_num[j]) / static_cast<double>(B_den); }
  // sum_j B_j / (beta_j + 1) as a reduced fraction.
  std::pair<std::int64_t, std::int64_t> normalization_exact() const;
  bool normalized() const;
  void validate() const;

  static RWPTopology one_d(double dmax);
  static RWPTopology two_d(double dmax);
  static RWPTopology three_d(double dmax);
  // Exponent table with the misprinted final exponent 55.
  static RWPTopology two_d_misprint(double dmax);
  static RWPTopology by_name(const std::string& name, double dmax);
};

struct FixedDistance {
  double r = 50.0;
};

using Mobility = std::variant<RWPTopology, FixedDistance>;

struct PhaseNoiseParams {
  bool perfect = false;
  int L = 1;

  double q() const noexcept;  // 2^-L, or 0 for perfect phase
  void validate() const;
  static PhaseNoiseParams perfect_phase() { return {true, 0}; }
  static PhaseNoiseParams quantized(int L) { return {false, L}; }
};

double ln_bessel_i(double nu, double z);

double kappa_mu_pdf(const KappaMuParams& p, double x);
double kappa_mu_cdf(const KappaMuParams& p, double x);
// Corrected Bessel-series form of the amplitude density.
double kappa_mu_series_pdf(const KappaMuParams& p, double x);
// Series as typeset: power kernel x^{mu+k-1} e^{-zeta x} and (mu+k) in place of Gamma(mu+k).
double kappa_mu_series_pdf_printed(const KappaMuParams& p, double x);
// Number of series terms after which the tail term drops below tol relative to the partial sum.
int kappa_mu_terms_needed(double kappa, double mu, double tol = 1e-12, int max_terms = 100000);
// log of the Poisson weight e^{-mu kappa} (mu kappa)^k / k!.
double kappa_mu_log_weight(double kappa, double mu, int k);

specfun::FoxHParams dgg_foxh(const DGGParams& p);
double dgg_pdf(const DGGParams& p, double x);
double gg_pdf(double alpha, double beta, double omega, double x);

double genk_pdf(const GenKParams& p, double x);
double genk_pdf_meijer(const GenKParams& p, double x);

double rwp_pdf(const RWPTopology& t, double r);
double rwp_cdf(const RWPTopology& t, double r);
double rwp_mean(const RWPTopology& t);

cplx phase_char(double q, cplx s);

}  // namespace risfox::fading
