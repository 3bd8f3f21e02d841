#include "risfox/fading.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "risfox/error.hpp"
#include "risfox/gamma.hpp"

namespace risfox::fading {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesTol = 1e-12;

double lgam(double x) { return specfun::ln_gamma(x); }

}  // namespace

void KappaMuParams::validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw DomainError("kappa-mu: kappa must be >= 0");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("kappa-mu: mu must be > 0");
  if (series_terms < 1) throw DomainError("kappa-mu: series truncation must be >= 1");
}

DGGParams::DGGParams(double alpha1, double beta1, double alpha2, double beta2, double msp1, double msp2)
    : alpha1_(alpha1), beta1_(beta1), alpha2_(alpha2), beta2_(beta2), msp1_(msp1), msp2_(msp2) {
  for (double v : {alpha1, beta1, alpha2, beta2, msp1, msp2})
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("dGG: shaping parameters and powers must be positive");
  auto omega = [](double msp, double a, double b) {
    return std::pow(msp * std::exp(lgam(b) - lgam(b + 2.0 / a)), a / 2.0);
  };
  omega1_ = omega(msp1, alpha1, beta1);
  omega2_ = omega(msp2, alpha2, beta2);
}

double DGGParams::phi() const noexcept { return 1.0 / (omega2_ * std::pow(omega1_, alpha2_ / alpha1_)); }

GenKParams::GenKParams(double m, double M, double m0) : m_(m), M_(M), m0_(m0) {
  for (double v : {m, M, m0})
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("generalized-K: m, M and m0 must be positive");
  b_ = 2.0 * std::sqrt(m / m0);
}

double GenKParams::shadowing_from_sigma_db(double sigma_db) {
  if (!(sigma_db > 0.0)) throw DomainError("generalized-K: sigma_dB must be positive");
  const double sn = sigma_db / 8.686;
  return 1.0 / std::expm1(sn * sn);
}

GenKParams GenKParams::from_sigma_db(double m, double sigma_db, double m0, std::optional<double> explicit_M) {
  const double M = shadowing_from_sigma_db(sigma_db);
  if (explicit_M && std::abs(*explicit_M - M) > 1e-9)
    throw DomainError("generalized-K: explicit M = " + std::to_string(*explicit_M) +
                      " disagrees with M = " + std::to_string(M) + " implied by sigma_dB");
  GenKParams p(m, M, m0);
  p.sigma_db_ = sigma_db;
  return p;
}

std::pair<std::int64_t, std::int64_t> RWPTopology::normalization_exact() const {
  std::int64_t num = 0, den = 1;
  for (int j = 0; j < n(); ++j) {
    const std::int64_t d = static_cast<std::int64_t>(beta[j] + 1) * B_den;
    num = num * d + B_num[j] * den;
    den *= d;
    const std::int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return {num, den};
}

bool RWPTopology::normalized() const {
  const auto [num, den] = normalization_exact();
  return num == den;
}

void RWPTopology::validate() const {
  if (beta.empty() || B_num.size() != beta.size()) throw DomainError("RWP: coefficient and exponent lists differ");
  if (B_den == 0) throw DomainError("RWP: zero coefficient denominator");
  if (!(dmax > 0.0)) throw DomainError("RWP: dmax must be positive");
  if (!normalized()) throw DomainError("RWP topology '" + name + "' does not integrate to one");
}

RWPTopology RWPTopology::one_d(double dmax) { return {"1d", {6, -6}, 1, {1, 2}, dmax}; }
RWPTopology RWPTopology::two_d(double dmax) { return {"2d", {324, -420, 96}, 73, {1, 3, 5}, dmax}; }
RWPTopology RWPTopology::three_d(double dmax) { return {"3d", {735, -1190, 455}, 72, {2, 4, 6}, dmax}; }
RWPTopology RWPTopology::two_d_misprint(double dmax) { return {"2d-printed", {324, -420, 96}, 73, {1, 3, 55}, dmax}; }

RWPTopology RWPTopology::by_name(const std::string& name, double dmax) {
  if (name == "1d" || name == "1-d") return one_d(dmax);
  if (name == "2d" || name == "2-d") return two_d(dmax);
  if (name == "3d" || name == "3-d") return three_d(dmax);
  throw DomainError("unknown RWP topology '" + name + "'");
}

double PhaseNoiseParams::q() const noexcept { return perfect ? 0.0 : std::ldexp(1.0, -L); }

void PhaseNoiseParams::validate() const {
  if (!perfect && L < 1) throw DomainError("phase noise: L must be >= 1");
}

double ln_bessel_i(double nu, double z) {
  if (z < 0.0) throw DomainError("ln_bessel_i: negative argument");
  if (z == 0.0) return nu == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (z < 600.0) return std::log(std::cyl_bessel_i(nu, z));
  // Hankel expansion, I_nu(z) ~ e^z / sqrt(2 pi z) * sum_k (-1)^k a_k(nu) / z^k.
  const double mu4 = 4.0 * nu * nu;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 30; ++k) {
    term *= -(mu4 - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * z);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return z - 0.5 * std::log(2.0 * kPi * z) + std::log(sum);
}

double kappa_mu_pdf(const KappaMuParams& p, double x) {
  p.validate();
  if (x < 0.0) throw DomainError("kappa_mu_pdf: x must be >= 0");
  const double k = p.kappa, mu = p.mu;
  if (x == 0.0) {
    if (mu < 0.5) return std::numeric_limits<double>::infinity();
    if (mu > 0.5) return 0.0;
  }
  const double zeta = mu * (1.0 + k);
  if (k == 0.0) {
    return std::exp(std::log(2.0) + mu * std::log(mu) + (2.0 * mu - 1.0) * std::log(x) - mu * x * x - lgam(mu));
  }
  const double z = 2.0 * mu * std::sqrt(k * (1.0 + k)) * x;
  const double lv = std::log(2.0 * mu) + 0.5 * (mu + 1.0) * std::log1p(k) + mu * std::log(x) -
                    0.5 * (mu - 1.0) * std::log(k) - mu * k - zeta * x * x + ln_bessel_i(mu - 1.0, z);
  return std::exp(lv);
}

double kappa_mu_log_weight(double kappa, double mu, int k) {
  const double lam = mu * kappa;
  if (lam == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return -lam + k * std::log(lam) - lgam(k + 1.0);
}

double kappa_mu_cdf(const KappaMuParams& p, double x) {
  p.validate();
  if (x <= 0.0) return 0.0;
  const double zeta = p.mu * (1.0 + p.kappa);
  double sum = 0.0;
  const double mode = p.mu * p.kappa;
  for (int k = 0; k < p.series_terms; ++k) {
    const double w = std::exp(kappa_mu_log_weight(p.kappa, p.mu, k));
    const double term = w * boost::math::gamma_p(p.mu + k, zeta * x * x);
    sum += term;
    if (k > mode && w < kSeriesTol) return sum;
  }
  throw TruncationError("kappa_mu_cdf: Poisson mixture not converged within K terms");
}

double kappa_mu_series_pdf(const KappaMuParams& p, double x) {
  p.validate();
  if (x < 0.0) throw DomainError("kappa_mu_series_pdf: x must be >= 0");
  if (x == 0.0) return kappa_mu_pdf(p, 0.0);
  const double zeta = p.mu * (1.0 + p.kappa);
  const double lx = std::log(x), lz = std::log(zeta);
  const double mode = p.mu * p.kappa;
  double sum = 0.0;
  for (int k = 0; k < p.series_terms; ++k) {
    const double a = p.mu + k;
    const double lt = std::log(2.0) + kappa_mu_log_weight(p.kappa, p.mu, k) + a * lz + (2.0 * a - 1.0) * lx -
                      zeta * x * x - lgam(a);
    const double term = std::exp(lt);
    sum += term;
    if (k > mode && (term <= kSeriesTol * sum || p.kappa == 0.0)) return sum;
  }
  throw TruncationError("kappa_mu_series_pdf: tail term above 1e-12 of the partial sum after K terms");
}

double kappa_mu_series_pdf_printed(const KappaMuParams& p, double x) {
  p.validate();
  if (x <= 0.0) return 0.0;
  const double zeta = p.mu * (1.0 + p.kappa);
  const double mode = p.mu * p.kappa;
  double sum = 0.0;
  for (int k = 0; k < p.series_terms; ++k) {
    const double a = p.mu + k;
    double lpsi = (p.mu + 2.0 * k) * std::log(p.mu) + a * std::log1p(p.kappa) - p.mu * p.kappa -
                  lgam(k + 1.0) - std::log(a);
    if (k > 0) lpsi += k * std::log(p.kappa);
    const double term = std::exp(lpsi + (a - 1.0) * std::log(x) - zeta * x);
    sum += term;
    if (k > mode && term <= kSeriesTol * sum) break;
  }
  return sum;
}

int kappa_mu_terms_needed(double kappa, double mu, double tol, int max_terms) {
  KappaMuParams{kappa, mu, 1}.validate();
  if (kappa == 0.0) return 1;
  // Terms of the Poisson-weighted series, measured on the weights themselves.
  double partial = 0.0;
  const double mode = mu * kappa;
  for (int k = 0; k < max_terms; ++k) {
    const double w = std::exp(kappa_mu_log_weight(kappa, mu, k));
    partial += w;
    if (k > mode && w <= tol * partial) return k + 1;
  }
  throw TruncationError("kappa_mu_terms_needed: more than max_terms terms required");
}

specfun::FoxHParams dgg_foxh(const DGGParams& p) {
  specfun::FoxHParams h;
  h.m = 2;
  h.n = 0;
  h.lower = {{p.beta2(), 1.0 / p.alpha2()}, {p.beta1(), 1.0 / p.alpha1()}};
  return h;
}

double dgg_pdf(const DGGParams& p, double x) {
  if (!(x > 0.0)) throw DomainError("dgg_pdf: x must be positive");
  const double c = std::pow(p.phi(), 1.0 / p.alpha2());
  const double h = specfun::fox_h(dgg_foxh(p), c * x);
  return h / (x * std::exp(lgam(p.beta1()) + lgam(p.beta2())));
}

double gg_pdf(double alpha, double beta, double omega, double x) {
  if (!(x > 0.0)) return 0.0;
  return std::exp(std::log(alpha) + (alpha * beta - 1.0) * std::log(x) - std::pow(x, alpha) / omega -
                  beta * std::log(omega) - lgam(beta));
}

double genk_pdf(const GenKParams& p, double x) {
  if (!(x > 0.0)) throw DomainError("genk_pdf: x must be positive");
  const double bx = p.b() * x;
  const double nu = std::abs(p.M() - p.m());
  const double kv = std::cyl_bessel_k(nu, bx);
  if (kv == 0.0) return 0.0;
  return std::exp(std::log(2.0 * p.b()) - lgam(p.m()) - lgam(p.M()) + (p.M() + p.m() - 1.0) * std::log(bx / 2.0) +
                  std::log(kv));
}

double genk_pdf_meijer(const GenKParams& p, double x) {
  if (!(x > 0.0)) throw DomainError("genk_pdf_meijer: x must be positive");
  const std::array<double, 2> b{(p.M() - p.m()) / 2.0, (p.m() - p.M()) / 2.0};
  const auto g = specfun::meijer_g(2, 0, {}, b);
  const double bx = p.b() * x;
  const double gv = specfun::fox_h(g, bx * bx / 4.0);
  return p.b() / std::exp(lgam(p.m()) + lgam(p.M())) * std::pow(bx / 2.0, p.M() + p.m() - 1.0) * gv;
}

double rwp_pdf(const RWPTopology& t, double r) {
  if (r < 0.0 || r > t.dmax) throw DomainError("rwp_pdf: r outside [0, dmax]");
  double s = 0.0;
  for (int j = 0; j < t.n(); ++j) s += t.B(j) * std::pow(r / t.dmax, t.beta[j]);
  return s / t.dmax;
}

double rwp_cdf(const RWPTopology& t, double r) {
  if (r <= 0.0) return 0.0;
  if (r >= t.dmax) return 1.0;
  double s = 0.0;
  for (int j = 0; j < t.n(); ++j) s += t.B(j) * std::pow(r / t.dmax, t.beta[j] + 1) / (t.beta[j] + 1);
  return s;
}

double rwp_mean(const RWPTopology& t) {
  double s = 0.0;
  for (int j = 0; j < t.n(); ++j) s += t.B(j) / (t.beta[j] + 2);
  return s * t.dmax;
}

cplx phase_char(double q, cplx s) {
  if (!(q > 0.0) || q > 0.5) throw DomainError("phase_char: q must lie in (0, 1/2]");
  const cplx z = kPi * q * s;
  if (std::abs(z) < 1e-4) {
    const cplx z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

}  // namespace risfox::fading
