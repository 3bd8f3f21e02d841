#include "risfox/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "risfox/error.hpp"
#include "risfox/gamma.hpp"

namespace risfox::cascade {
namespace {

using specfun::JointGamma;
using specfun::ln_gamma;

constexpr double kPi = std::numbers::pi;
constexpr double kTailTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double lgam(double x) { return specfun::ln_gamma(x); }

struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5)), dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

const GaussLegendre& gauss_legendre(int n) {
  static const GaussLegendre g64(64), g256(256);
  return n <= 64 ? g64 : g256;
}

// Incremental complex log-sum-exp.
struct LogSum {
  double ref = -kInf;
  cplx sum = 0.0;
  void add(cplx lt) {
    if (lt.real() == -kInf) return;
    if (lt.real() > ref) {
      sum = sum * std::exp(ref - lt.real()) + std::exp(cplx(0.0, lt.imag()));
      ref = lt.real();
    } else {
      sum += std::exp(lt - ref);
    }
  }
  double log_abs() const { return ref + std::log(std::abs(sum)); }
  cplx value() const { return ref == -kInf ? cplx(-kInf, 0.0) : ref + std::log(sum); }
};

bool tied(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

}  // namespace

void ElementConfig::validate() const {
  first_hop.validate();
  phase.validate();
  if (!(path_exponent >= 2.0 && path_exponent <= 5.0)) throw DomainError("element: path-loss exponent must lie in [2, 5]");
  if (const auto* t = std::get_if<RWPTopology>(&mobility)) t->validate();
  if (const auto* f = std::get_if<fading::FixedDistance>(&mobility))
    if (!(f->r > 0.0)) throw DomainError("element: fixed distance must be positive");
}

double ElementConfig::reference_distance() const {
  if (const auto* t = std::get_if<RWPTopology>(&mobility)) return t->dmax;
  return std::get<fading::FixedDistance>(mobility).r;
}

ElementConfig ElementConfig::effective() const {
  ElementConfig e = *this;
  if (special_case == SpecialCase::full) return e;
  e.first_hop.kappa = 0.0;
  e.first_hop.mu = 1.0;
  e.second_hop = DGGParams(1.0, 2.0, second_hop.alpha2(), second_hop.beta2(), second_hop.msp1(), second_hop.msp2());
  if (special_case == SpecialCase::rayleigh_static)
    if (const auto* t = std::get_if<RWPTopology>(&mobility)) e.mobility = fading::FixedDistance{t->dmax / 2.0};
  return e;
}

void SNRConfig::validate() const {
  if (!(gbar_ris > 0.0)) throw DomainError("SNR: gbar_ris must be positive");
  if (direct && !(gbar_d > 0.0)) throw DomainError("SNR: gbar_d must be positive when the direct link is on");
  if (const auto* t = std::get_if<RWPTopology>(&direct_mobility)) t->validate();
}

MellinVariable kappa_mu_variable(const KappaMuParams& p) {
  p.validate();
  const double mu = p.mu, kappa = p.kappa;
  const double lz = std::log(mu * (1.0 + kappa));
  const int K = p.series_terms;
  std::vector<double> lw(K), lg(K);
  for (int k = 0; k < K; ++k) {
    lw[k] = fading::kappa_mu_log_weight(kappa, mu, k);
    lg[k] = lgam(mu + k);
  }
  const double mode = mu * kappa;
  auto f = [=](cplx s) {
    LogSum acc;
    for (int k = 0; k < K; ++k) {
      if (lw[k] == -kInf) return acc.value() - 0.5 * s * lz;
      const cplx lt = lw[k] + ln_gamma(mu + k + 0.5 * s) - lg[k];
      acc.add(lt);
      if (k > mode && lt.real() <= std::log(kTailTol) + acc.log_abs()) return acc.value() - 0.5 * s * lz;
    }
    throw TruncationError("kappa-mu moment series: tail term above 1e-12 of the partial sum after " +
                          std::to_string(K) + " terms");
  };
  DominantPole pole{2.0 * mu, 1, 2.0 * std::exp(lw[0] + mu * lz - lg[0])};
  return {f, Strip{-2.0 * mu, kInf}, pole, "kappa-mu"};
}

MellinVariable rayleigh_variable(double msp) {
  const double lm = std::log(msp);
  return {[lm](cplx s) { return ln_gamma(1.0 + 0.5 * s) + 0.5 * s * lm; }, Strip{-2.0, kInf},
          DominantPole{2.0, 1, 2.0 / msp}, "rayleigh"};
}

MellinVariable gg_variable(double alpha, double beta, double omega) {
  const double lo = std::log(omega), lgb = lgam(beta);
  return {[=](cplx s) { return s / alpha * lo + ln_gamma(beta + s / alpha) - lgb; }, Strip{-alpha * beta, kInf},
          DominantPole{alpha * beta, 1, alpha * std::exp(-beta * lo - lgb)}, "generalized-gamma"};
}

MellinVariable path_gain_variable(const Mobility& m, double a) {
  if (const auto* f = std::get_if<fading::FixedDistance>(&m)) {
    const double lr = std::log(f->r);
    return {[=](cplx s) { return -0.5 * a * s * lr; }, Strip{}, DominantPole{}, "fixed-distance"};
  }
  const auto& t = std::get<RWPTopology>(m);
  t.validate();
  std::vector<double> B(t.n()), be(t.n());
  int bmin = t.beta[0];
  for (int j = 0; j < t.n(); ++j) {
    B[j] = t.B(j);
    be[j] = t.beta[j];
    bmin = std::min(bmin, t.beta[j]);
  }
  const double ld = std::log(t.dmax);
  auto f = [=](cplx s) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < B.size(); ++j) acc += B[j] / (be[j] + 1.0 - 0.5 * a * s);
    return std::log(acc) - 0.5 * a * s * ld;
  };
  const Strip strip{-kInf, a > 0.0 ? 2.0 * (bmin + 1.0) / a : kInf};
  return {f, strip, DominantPole{}, "rwp-path-gain"};
}

MellinVariable phase_variable(const PhaseNoiseParams& p, PhaseModel model) {
  p.validate();
  if (p.perfect) return MellinVariable();
  const double q = p.q();
  if (model == PhaseModel::printed_sinc) {
    return {[q](cplx s) { return std::log(fading::phase_char(q, s)); }, Strip{}, DominantPole{}, "printed-sinc"};
  }
  if (q == 0.5) {
    const double half_log_pi = 0.5 * std::log(kPi);
    return {[=](cplx s) { return ln_gamma(0.5 + 0.5 * s) - half_log_pi - ln_gamma(1.0 + 0.5 * s); }, Strip{-1.0, kInf},
            DominantPole{1.0, 1, 2.0 / kPi}, "cos-projection"};
  }
  // E[cos^s theta] = (1/q pi) int_0^{q pi} cos^s, with cos bounded away from zero.
  auto f = [q](cplx s) {
    const auto& gl = gauss_legendre(std::abs(s.imag()) > 40.0 ? 256 : 64);
    const double h = 0.5 * q * kPi;
    LogSum acc;
    for (std::size_t i = 0; i < gl.x.size(); ++i)
      acc.add(std::log(0.5 * gl.w[i]) + s * std::log(std::cos(h * (1.0 + gl.x[i]))));
    return acc.value();
  };
  return {f, Strip{}, DominantPole{}, "cos-projection"};
}

MellinVariable genk_variable(const GenKParams& p) {
  const double m = p.m(), M = p.M();
  const double l2b = std::log(2.0 / p.b()), norm = lgam(m) + lgam(M);
  auto f = [=](cplx s) { return s * l2b + ln_gamma(m + 0.5 * s) + ln_gamma(M + 0.5 * s) - norm; };
  const double lo = std::min(m, M), hi = std::max(m, M);
  DominantPole pole;
  pole.location = 2.0 * lo;
  const double lead = 2.0 * lo * std::log(p.b() / 2.0) - norm;
  if (tied(m, M)) {
    pole.order = 2;
    pole.coefficient = 4.0 * std::exp(lead + norm - 2.0 * lgam(lo));
  } else {
    pole.order = 1;
    pole.coefficient = 2.0 * std::exp(lead + lgam(hi - lo));
  }
  return {f, Strip{-2.0 * lo, kInf}, pole, "generalized-K"};
}

MellinVariable element_variable(const ElementConfig& cfg) {
  cfg.validate();
  const ElementConfig e = cfg.effective();
  const auto& g = e.second_hop;
  std::vector<MellinVariable> parts;
  parts.push_back(cfg.special_case == SpecialCase::full ? kappa_mu_variable(e.first_hop) : rayleigh_variable(1.0));
  parts.push_back(gg_variable(g.alpha1(), g.beta1(), g.omega1()));
  parts.push_back(gg_variable(g.alpha2(), g.beta2(), g.omega2()));
  parts.push_back(path_gain_variable(e.mobility, e.path_exponent));
  parts.push_back(phase_variable(e.phase, e.phase_model));
  return MellinVariable::product(parts, "element");
}

MellinVariable direct_variable(const SNRConfig& s) {
  return MellinVariable::product({genk_variable(s.direct_fading), path_gain_variable(s.direct_mobility, s.direct_path_exponent)},
                                 "direct");
}

MellinVariable direct_snr_variable(const SNRConfig& s) { return direct_variable(s).power(2.0).scaled(s.gbar_d); }

MellinVariable geometric_mean_variable(const std::vector<ElementConfig>& cfgs) {
  if (cfgs.empty()) throw DimensionError("geometric mean of an empty element list");
  const double N = static_cast<double>(cfgs.size());
  std::vector<MellinVariable> parts;
  for (const auto& c : cfgs) parts.push_back(element_variable(c).power(1.0 / N));
  return MellinVariable::product(parts, "geometric-mean").scaled(N);
}

CascadeCoefficients cascade_coefficients(const ElementConfig& cfg, const SNRConfig* direct) {
  cfg.validate();
  const ElementConfig e = cfg.effective();
  const auto& g = e.second_hop;
  const double mu = e.first_hop.mu, kappa = e.first_hop.kappa, a = e.path_exponent;
  CascadeCoefficients c;
  c.zeta1 = mu * (1.0 + kappa);
  const double dist = e.reference_distance();
  c.zeta2 = std::pow(g.phi(), 1.0 / g.alpha2()) * std::pow(dist, a / 2.0);
  c.argument_scale = std::sqrt(c.zeta1) * c.zeta2;
  c.terms = std::min(fading::kappa_mu_terms_needed(kappa, mu, kTailTol), e.first_hop.series_terms);

  const auto* rwp = std::get_if<RWPTopology>(&e.mobility);
  c.mobility_terms = rwp ? rwp->n() : 1;
  const bool has_phase = !e.phase.perfect;
  const double q = e.phase.q();
  if (has_phase && e.phase_model == PhaseModel::projection && q != 0.5)
    throw DomainError("element series: the cosine projection has a closed Fox-H form only for q = 1/2");

  for (int k = 0; k < c.terms; ++k) {
    const double lw = fading::kappa_mu_log_weight(kappa, mu, k) - lgam(mu + k) - lgam(g.beta1()) - lgam(g.beta2());
    for (int j = 0; j < c.mobility_terms; ++j) {
      double psi = std::exp(lw) * (rwp ? rwp->B(j) : 1.0);
      specfun::FoxHParams h;
      h.lower = {{g.beta2(), 1.0 / g.alpha2()}, {g.beta1(), 1.0 / g.alpha1()}, {mu + k, 0.5}};
      if (has_phase && e.phase_model == PhaseModel::projection) {
        h.lower.push_back({0.5, 0.5});
        psi /= std::sqrt(kPi);
      }
      h.m = static_cast<int>(h.lower.size());
      if (rwp) {
        const double bj = rwp->beta[j];
        h.upper.push_back({-bj, a / 2.0});
        h.n = 1;
        h.lower.push_back({-1.0 - bj, a / 2.0});
      }
      if (has_phase) {
        if (e.phase_model == PhaseModel::projection) {
          h.upper.push_back({1.0, 0.5});
        } else {
          h.upper.push_back({1.0, q});
          h.lower.push_back({0.0, q});
        }
      }
      c.psi.push_back(psi);
      c.blocks.push_back(std::move(h));
    }
  }
  if (direct && direct->direct) {
    const double norm = lgam(direct->direct_fading.m()) + lgam(direct->direct_fading.M());
    if (const auto* t = std::get_if<RWPTopology>(&direct->direct_mobility)) {
      for (int j = 0; j < t->n(); ++j) c.psi_d.push_back(t->B(j) * std::exp(-norm));
    } else {
      c.psi_d.push_back(std::exp(-norm));
    }
  }
  return c;
}

Estimate mellin_pdf(const MellinVariable& v, double x, double rel_tol) {
  if (!(x > 0.0)) throw DomainError("density argument must be positive");
  const Strip us{-v.strip().hi, -v.strip().lo};
  if (us.empty()) throw NoContourError("empty Mellin strip");
  const double lx = std::log(x);
  specfun::LineOptions o;
  o.rel_tol = rel_tol;
  return specfun::line_integral([&](cplx u) { return v.log_moment(-u) + (u - 1.0) * lx; }, us.midpoint(), o);
}

Estimate mellin_cdf(const MellinVariable& v, double x, double rel_tol) {
  if (!(x > 0.0)) return {0.0, 0.0};
  const Strip us{std::max(0.0, -v.strip().hi), -v.strip().lo};
  if (us.empty()) throw NoContourError("empty Mellin strip");
  const double lx = std::log(x);
  specfun::LineOptions o;
  o.rel_tol = rel_tol;
  return specfun::line_integral([&](cplx u) { return v.log_moment(-u) + u * lx - std::log(u); }, us.midpoint(), o);
}

double mobility_link_pdf(const DGGParams& p, const RWPTopology& t, double a, double x) {
  if (!(x > 0.0)) throw DomainError("mobility_link_pdf: x must be positive");
  if (!(a >= 0.0)) throw DomainError("mobility_link_pdf: path-loss exponent must be non-negative");
  t.validate();
  const double zeta2 = std::pow(p.phi(), 1.0 / p.alpha2()) * std::pow(t.dmax, a / 2.0);
  const double norm = std::exp(-lgam(p.beta1()) - lgam(p.beta2()));
  double acc = 0.0;
  for (int j = 0; j < t.n(); ++j) {
    specfun::FoxHParams h;
    h.m = 2;
    h.n = 1;
    h.upper = {{-static_cast<double>(t.beta[j]), a / 2.0}};
    h.lower = {{p.beta2(), 1.0 / p.alpha2()}, {p.beta1(), 1.0 / p.alpha1()}, {-1.0 - t.beta[j], a / 2.0}};
    acc += t.B(j) * norm * specfun::fox_h(h, zeta2 * x);
  }
  return acc / x;
}

double zi_pdf(const ElementConfig& cfg, double x) { return mellin_pdf(element_variable(cfg), x).value; }

double zi_cdf(const ElementConfig& cfg, double x) { return mellin_cdf(element_variable(cfg), x).value; }

double zi_pdf_series(const ElementConfig& cfg, double x) {
  if (!(x > 0.0)) throw DomainError("zi_pdf_series: x must be positive");
  const CascadeCoefficients c = cascade_coefficients(cfg);
  double acc = 0.0;
  for (std::size_t i = 0; i < c.blocks.size(); ++i) acc += c.psi[i] * specfun::fox_h(c.blocks[i], c.argument_scale * x);
  return acc / x;
}

double zi_moment(const ElementConfig& cfg, double r) { return element_variable(cfg).moment(r); }

Estimate laplace_integral(const std::vector<SumTerm>& terms, const std::vector<JointGamma>& joint, double log_prefactor,
                          const MultiLimits& lim) {
  const std::size_t N = terms.size();
  if (N == 0) throw DimensionError("laplace_integral: no variables");
  if (static_cast<int>(N) > lim.max_dim)
    throw DimensionError("exact evaluation needs a " + std::to_string(N) + "-fold contour integral; limit is " +
                         std::to_string(lim.max_dim));
  std::vector<double> c(N);
  for (std::size_t i = 0; i < N; ++i) {
    const Strip us{std::max(0.0, -terms[i].var.strip().hi), -terms[i].var.strip().lo};
    if (us.empty()) throw NoContourError("laplace_integral: empty strip for variable " + std::to_string(i));
    c[i] = us.midpoint();
  }
  for (const auto& g : joint) {
    if (g.power < 0) continue;
    double re = g.shift;
    for (std::size_t i = 0; i < N; ++i) re += g.scales[i] * c[i];
    if (!(re > 0.0)) throw NoContourError("laplace_integral: joint gamma factor has no admissible contour");
  }
  specfun::MultiIntegrand f;
  for (const auto& t : terms) {
    const MellinVariable& v = t.var;
    const double b = t.log_base;
    f.per_dim.emplace_back([v, b](cplx u) { return ln_gamma(u) + v.log_moment(-u) + u * b; });
  }
  f.joint = joint;
  Estimate r;
  if (N == 1) {
    r = specfun::line_integral(
        [&](cplx u) {
          const cplx uu[1] = {u};
          return specfun::log_integrand(f, uu);
        },
        c[0]);
  } else {
    specfun::MultiOptions o;
    o.rel_tol = lim.rel_tol;
    o.strategy = static_cast<int>(N) <= lim.max_tensor_dim ? specfun::QuadratureStrategy::tensor
                                                           : specfun::QuadratureStrategy::quasi_random;
    r = specfun::multi_integral(f, c, o);
  }
  const double s = std::exp(log_prefactor);
  return {r.value * s, r.error * s};
}

double laplace_leading_term(const std::vector<SumTerm>& terms, const std::vector<JointGamma>& joint,
                            double log_prefactor) {
  double acc = log_prefactor;
  std::vector<double> p(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const DominantPole& pole = terms[i].var.pole();
    if (!pole.finite()) throw DomainError("asymptotic term needs a pole on the positive axis");
    p[i] = pole.location;
    const double b = terms[i].log_base;
    acc += lgam(p[i]) + std::log(pole.coefficient) + p[i] * b;
    if (pole.order > 1) {
      if (!(b < 0.0)) throw DomainError("asymptotic term with a repeated pole needs the small-argument regime");
      acc += (pole.order - 1) * std::log(-b) - lgam(pole.order);
    }
  }
  for (const auto& g : joint) {
    double re = g.shift;
    for (std::size_t i = 0; i < p.size(); ++i) re += g.scales[i] * p[i];
    acc += (g.power > 0 ? ln_gamma(cplx(re, 0.0)) : specfun::ln_rgamma(cplx(re, 0.0))).real();
  }
  return std::exp(acc);
}

namespace {

std::vector<double> ones(std::size_t n, double v = 1.0) { return std::vector<double>(n, v); }

}  // namespace

Estimate zris_exact(const std::vector<ElementConfig>& cfgs, double x, Which which, const MultiLimits& lim) {
  if (cfgs.empty()) throw DimensionError("zris_exact: no elements");
  if (!(x > 0.0)) return {0.0, 0.0};
  const double lx = std::log(x);
  std::vector<SumTerm> terms;
  for (const auto& c : cfgs) terms.push_back({element_variable(c), lx});
  const std::size_t N = cfgs.size();
  if (which == Which::cdf) return laplace_integral(terms, {{1.0, ones(N), -1}}, 0.0, lim);
  return laplace_integral(terms, {{0.0, ones(N), -1}}, -lx, lim);
}

Estimate zris_bound(const std::vector<ElementConfig>& cfgs, double x, Which which) {
  const MellinVariable v = geometric_mean_variable(cfgs);
  if (which == Which::cdf) return mellin_cdf(v, x);
  if (!(x > 0.0)) return {0.0, 0.0};
  return mellin_pdf(v, x);
}

double snr_transform(const SNRConfig& s, double gamma, Which which, const ZStatistic& source) {
  if (!(gamma > 0.0)) return 0.0;
  const double z = std::sqrt(gamma / s.gbar_ris);
  if (which == Which::cdf) return source(z, Which::cdf);
  return source(z, Which::pdf) / (2.0 * std::sqrt(s.gbar_ris * gamma));
}

double direct_snr_pdf(const GenKParams& dl, const Mobility& t, double a, double gbar_d, double gamma) {
  if (!(gamma > 0.0)) throw DomainError("direct_snr_pdf: gamma must be positive");
  if (!(gbar_d > 0.0)) throw DomainError("direct_snr_pdf: gbar_d must be positive");
  const double norm = std::exp(-lgam(dl.m()) - lgam(dl.M()));
  const double base = gbar_d * 4.0 / (dl.b() * dl.b());
  if (const auto* f = std::get_if<fading::FixedDistance>(&t)) {
    specfun::FoxHParams h;
    h.m = 2;
    h.lower = {{dl.m(), 1.0}, {dl.M(), 1.0}};
    const double c = base * std::pow(f->r, -a);
    return norm * specfun::fox_h(h, gamma / c) / gamma;
  }
  const auto& rwp = std::get<RWPTopology>(t);
  rwp.validate();
  const double c = base * std::pow(rwp.dmax, -a);
  double acc = 0.0;
  for (int j = 0; j < rwp.n(); ++j) {
    specfun::FoxHParams h;
    h.m = 2;
    h.n = 1;
    h.upper = {{-static_cast<double>(rwp.beta[j]), a}};
    h.lower = {{dl.m(), 1.0}, {dl.M(), 1.0}, {-1.0 - rwp.beta[j], a}};
    acc += rwp.B(j) * specfun::fox_h(h, gamma / c);
  }
  return norm * acc / gamma;
}

double direct_snr_cdf(const GenKParams& dl, const Mobility& t, double a, double gbar_d, double gamma) {
  SNRConfig s;
  s.direct = true;
  s.gbar_d = gbar_d;
  s.direct_fading = dl;
  s.direct_mobility = t;
  s.direct_path_exponent = a;
  return mellin_cdf(direct_snr_variable(s), gamma).value;
}

Estimate risd_snr(const SNRConfig& s, const std::vector<ElementConfig>& cfgs, double gamma, Which which, Method method,
                  const MultiLimits& lim) {
  s.validate();
  if (cfgs.empty()) throw DimensionError("risd_snr: no elements");
  if (!(gamma > 0.0)) return {0.0, 0.0};
  const std::size_t N = cfgs.size();
  if (!s.direct) {
    Estimate err{};
    auto src = [&](double z, Which w) {
      const Estimate e = method == Method::exact ? zris_exact(cfgs, z, w, lim) : zris_bound(cfgs, z, w);
      err = e;
      return e.value;
    };
    const double v = snr_transform(s, gamma, which, src);
    const double scale = which == Which::cdf ? 1.0 : 1.0 / (2.0 * std::sqrt(s.gbar_ris * gamma));
    return {v, err.error * scale};
  }
  const double lg = std::log(gamma);
  const MellinVariable W = direct_snr_variable(s);
  if (method == Method::bound) {
    const MellinVariable V = geometric_mean_variable(cfgs).power(2.0).scaled(s.gbar_ris);
    const std::vector<SumTerm> terms{{V, lg}, {W, lg}};
    if (which == Which::cdf) return laplace_integral(terms, {{1.0, {1.0, 1.0}, -1}}, 0.0, lim);
    return laplace_integral(terms, {{0.0, {1.0, 1.0}, -1}}, -lg, lim);
  }
  std::vector<SumTerm> terms;
  const double half_base = 0.5 * (lg - std::log(s.gbar_ris));
  for (const auto& c : cfgs) terms.push_back({element_variable(c), half_base});
  terms.push_back({W, lg});
  std::vector<double> half(N + 1, 0.5), unit(N + 1, 1.0), full(N + 1, 0.5);
  half[N] = 0.0;
  unit[N] = 0.0;
  full[N] = 1.0;
  std::vector<JointGamma> joint{{0.0, half, +1}, {0.0, unit, -1}};
  if (which == Which::cdf) {
    joint.push_back({1.0, full, -1});
    return laplace_integral(terms, joint, std::log(0.5), lim);
  }
  joint.push_back({0.0, full, -1});
  return laplace_integral(terms, joint, std::log(0.5) - lg, lim);
}

}  // namespace risfox::cascade
