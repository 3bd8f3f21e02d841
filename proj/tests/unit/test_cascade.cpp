#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "risfox/cascade.hpp"
#include "risfox/error.hpp"
#include "risfox/montecarlo.hpp"
#include "risfox/sampler.hpp"
#include "support.hpp"

using namespace risfox;
using cascade::ElementConfig;
using cascade::Which;
using fading::RWPTopology;

namespace {

double integrate_log(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-10) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 31>::integrate([&](double t) { return f(std::exp(t)) * std::exp(t); }, lo, hi, 12, tol);
}

mc::ScenarioConfig single(const ElementConfig& e, int N = 1) {
  mc::ScenarioConfig sc;
  sc.N = N;
  sc.element = e;
  if (std::holds_alternative<fading::FixedDistance>(e.mobility)) sc.topology = "static";
  return sc;
}

// Projected amplitudes sum_i Z_i cos(theta_i), one per trial.
std::vector<double> amplitudes(const mc::ScenarioConfig& sc, std::uint64_t seed, std::int64_t trials = 1000000) {
  mc::MCConfig m;
  m.trials = trials;
  m.seed = seed;
  m.amplitude = mc::AmplitudeModel::projection;
  auto ch = mc::simulate_channel(sc, m);
  for (auto& v : ch.ris) v = std::sqrt(v);
  return ch.ris;
}

cascade::MellinVariable no_phase_product(const ElementConfig& c) {
  const auto& d = c.second_hop;
  return cascade::MellinVariable::product({cascade::kappa_mu_variable(c.first_hop),
                                           cascade::gg_variable(d.alpha1(), d.beta1(), d.omega1()),
                                           cascade::gg_variable(d.alpha2(), d.beta2(), d.omega2()),
                                           cascade::path_gain_variable(c.mobility, c.path_exponent)});
}

}  // namespace

TEST_CASE("mobility-averaged dGG link") {
  const fading::DGGParams d;
  const auto t = RWPTopology::one_d(100.0);
  CHECK(std::abs(integrate_log([&](double x) { return cascade::mobility_link_pdf(d, t, 2.0, x); }, -30.0, 8.0) - 1.0) <= 1e-4);
  for (double x : {0.01, 0.05, 0.2}) CHECK(cascade::mobility_link_pdf(d, t, 1e-9, x) == doctest::Approx(fading::dgg_pdf(d, x)).epsilon(1e-4));

  mc::Variates v(31, 0);
  std::vector<double> s(1000000);
  for (auto& e : s) e = mc::sample(d, v) / mc::sample(t, v);
  const auto var = cascade::MellinVariable::product({cascade::gg_variable(d.alpha1(), d.beta1(), d.omega1()),
                                                     cascade::gg_variable(d.alpha2(), d.beta2(), d.omega2()),
                                                     cascade::path_gain_variable(t, 2.0)});
  CHECK(cascade::mobility_link_pdf(d, t, 2.0, 0.05) == doctest::Approx(cascade::mellin_pdf(var, 0.05).value).epsilon(1e-6));
  // Histogram on [0, 0.1], which contains x = 0.05.
  CHECK(test::binned_sup_norm(s, [&](double x) { return x <= 0.0 ? 0.0 : cascade::mellin_cdf(var, x).value; }, 0.0, 0.1, 50) <= 0.02);
}

TEST_CASE("element density") {
  const ElementConfig cfg;
  for (double x : {0.002, 0.01, 0.03, 0.1}) CHECK(cascade::zi_pdf(cfg, x) == doctest::Approx(cascade::zi_pdf_series(cfg, x)).epsilon(1e-6));

  ElementConfig perfect = cfg;
  perfect.phase = fading::PhaseNoiseParams::perfect_phase();
  const auto prod = no_phase_product(perfect);
  for (double x : {0.002, 0.01, 0.03, 0.1})
    CHECK(std::abs(cascade::zi_pdf(perfect, x) - cascade::mellin_pdf(prod, x).value) <= 1e-4 * cascade::mellin_pdf(prod, x).value);

  const auto z = amplitudes(single(cfg), 32);
  const mc::StepCDF F(z);
  CHECK(test::binned_sup_norm(z, [&](double x) { return x <= 0.0 ? 0.0 : cascade::zi_cdf(cfg, x); }, 0.0, F.quantile(0.99), 50) <= 0.02);
  for (int i = 0; i < 50; ++i) CHECK(cascade::zi_pdf(cfg, 0.001 + 0.002 * i) >= 0.0);
}

TEST_CASE("Rayleigh special cases collapse to the general pipeline") {
  const ElementConfig cfg;
  ElementConfig lim = cfg;
  lim.first_hop = {1e-9, 1.0, 60};
  lim.second_hop = fading::DGGParams(1.0, 2.0, 2.0, 2.0);
  ElementConfig ray_mob = cfg;
  ray_mob.special_case = cascade::SpecialCase::rayleigh_mobility;
  for (int i = 1; i <= 10; ++i) {
    const double x = 0.004 * i;
    CHECK(std::abs(cascade::zi_cdf(ray_mob, x) - cascade::zi_cdf(lim, x)) <= 1e-3);
  }
  ElementConfig ray_st = cfg;
  ray_st.special_case = cascade::SpecialCase::rayleigh_static;
  lim.mobility = fading::FixedDistance{50.0};
  for (int i = 1; i <= 10; ++i) {
    const double x = 0.004 * i;
    CHECK(std::abs(cascade::zi_cdf(ray_st, x) - cascade::zi_cdf(lim, x)) <= 1e-3);
    CHECK(std::abs(cascade::zi_pdf(ray_st, x) - cascade::zi_pdf(lim, x)) <= 1e-3 * cascade::zi_pdf(lim, x));
  }
}

TEST_CASE("element moments") {
  const ElementConfig cfg;
  CHECK(cascade::zi_moment(cfg, 0.0) == doctest::Approx(1.0).epsilon(1e-6));
  const auto z = amplitudes(single(cfg), 33);
  const auto m1 = test::mean_of(z, [](double x) { return x; });
  CHECK(std::abs(cascade::zi_moment(cfg, 1.0) - m1.mean) <= 3.0 * m1.stderr_);
  // 1-D mobility with a = 2 puts density 6r near r = 0, so E[1/r^2] and E[Z^2] diverge.
  CHECK_THROWS_AS(cascade::zi_moment(cfg, 2.0), StripError);

  ElementConfig st = cfg;
  st.mobility = fading::FixedDistance{50.0};
  const auto zs = amplitudes(single(st), 34);
  const auto m2 = test::mean_of(zs, [](double x) { return x * x; });
  CHECK(std::abs(cascade::zi_moment(st, 2.0) - m2.mean) <= 3.0 * m2.stderr_);

  for (const auto& c : {cfg, st}) {
    const double a = std::log(cascade::zi_moment(c, 0.5)), b = std::log(cascade::zi_moment(c, 1.0)),
                 d = std::log(cascade::zi_moment(c, 1.5));
    CHECK(b <= 0.5 * (a + d));
  }
}

TEST_CASE("coefficients") {
  ElementConfig cfg;
  const auto cc = cascade::cascade_coefficients(cfg);
  // psi carries the sign of the mobility coefficient B_j (B = {6, -6} in 1-D).
  const auto t = RWPTopology::one_d(100.0);
  for (int k = 0; k < cc.terms; ++k)
    for (int j = 0; j < cc.mobility_terms; ++j) CHECK(cc.psi[k * cc.mobility_terms + j] / t.B(j) > 0.0);
  CHECK(cc.zeta1 == doctest::Approx(10.0));
  CHECK(cc.zeta2 > 0.0);
  cfg.phase = fading::PhaseNoiseParams::perfect_phase();
  const auto pc = cascade::cascade_coefficients(cfg);
  // beta2, beta1, mu + k and the mobility pair.
  CHECK(pc.blocks.front().q() == 4);
}

TEST_CASE("exact sum statistics") {
  const ElementConfig cfg;
  const std::vector<ElementConfig> one{cfg};
  for (double x : {0.005, 0.02, 0.06}) {
    const double quad = integrate_log([&](double y) { return cascade::zi_pdf(cfg, y); }, -25.0, std::log(x));
    CHECK(std::abs(cascade::zris_exact(one, x, Which::cdf).value - quad) <= 1e-3);
  }
  const std::vector<ElementConfig> two(2, cfg);
  const auto s = amplitudes(single(cfg, 2), 35);
  const mc::StepCDF G(s);
  CHECK(cascade::zris_exact(two, G.quantile(0.5), Which::cdf).value == doctest::Approx(0.5).epsilon(0.04));
  double prev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double v = cascade::zris_exact(two, G.quantile(0.049 * i), Which::cdf).value;
    CHECK(v >= prev - 1e-6);
    CHECK(v <= 1.0 + 1e-6);
    prev = v;
  }
}

TEST_CASE("AM-GM bound") {
  const ElementConfig cfg;
  const std::vector<ElementConfig> one{cfg};
  for (double x : {0.005, 0.02, 0.06})
    CHECK(std::abs(cascade::zris_bound(one, x, Which::cdf).value - cascade::zris_exact(one, x, Which::cdf).value) <= 1e-3);
  for (int N : {2, 3}) {
    const std::vector<ElementConfig> cs(N, cfg);
    const auto s = amplitudes(single(cfg, N), 36 + N);
    const mc::StepCDF G(s);
    for (int i = 1; i <= 10; ++i) {
      const double x = G.quantile(0.09 * i);
      const double b = cascade::zris_bound(cs, x, Which::cdf).value;
      CHECK(b >= G(x) - 0.01);
      if (N == 2) CHECK(b >= cascade::zris_exact(cs, x, Which::cdf).value - 1e-3);
    }
  }
}

TEST_CASE("SNR transform") {
  const ElementConfig cfg;
  cascade::SNRConfig s;
  s.gbar_ris = 250.0;
  const cascade::ZStatistic src = [&](double z, Which w) { return w == Which::cdf ? cascade::zi_cdf(cfg, z) : cascade::zi_pdf(cfg, z); };
  mc::RandomStream rng(40, 0);
  for (int i = 0; i < 10; ++i) {
    const double z = 0.001 + 0.1 * rng.uniform();
    CHECK(cascade::snr_transform(s, s.gbar_ris * z * z, Which::cdf, src) == doctest::Approx(cascade::zi_cdf(cfg, z)).epsilon(1e-12));
  }
  CHECK(std::abs(integrate_log([&](double g) { return cascade::snr_transform(s, g, Which::pdf, src); }, -25.0, 12.0) - 1.0) <= 1e-3);

  const auto z = amplitudes(single(cfg), 41);
  std::vector<double> g(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) g[i] = s.gbar_ris * z[i] * z[i];
  const mc::StepCDF G(g);
  for (int i = 1; i <= 10; ++i) {
    const double x = G.quantile(0.09 * i);
    CHECK(std::abs(cascade::snr_transform(s, x, Which::cdf, src) - G(x)) <= 0.02);
  }
}

TEST_CASE("direct-link SNR") {
  const fading::GenKParams gk;
  const double d = std::hypot(50.0, 100.0);
  const auto t = RWPTopology::one_d(d);
  const double gbar = 1e4;
  CHECK(std::abs(integrate_log([&](double x) { return cascade::direct_snr_pdf(gk, t, 2.0, gbar, x); }, -40.0, 15.0) - 1.0) <= 1e-3);
  for (double x : {1e-2, 1.0, 40.0})
    CHECK(std::abs(cascade::direct_snr_pdf(gk, t, 2.0, 4.0 * gbar, x) - 0.25 * cascade::direct_snr_pdf(gk, t, 2.0, gbar, x / 4.0)) <=
          1e-6 * cascade::direct_snr_pdf(gk, t, 2.0, 4.0 * gbar, x));

  mc::Variates v(42, 0);
  std::vector<double> s(1000000);
  for (auto& e : s) {
    const double h = mc::sample(gk, v) / mc::sample(t, v);
    e = gbar * h * h;
  }
  const mc::StepCDF G(s);
  CHECK(test::binned_sup_norm(s, [&](double x) { return x <= 0.0 ? 0.0 : cascade::direct_snr_cdf(gk, t, 2.0, gbar, x); }, 0.0,
                              G.quantile(0.9), 50) <= 0.02);
}

TEST_CASE("combined RIS and direct SNR") {
  mc::ScenarioConfig sc;
  sc.direct = true;
  auto s = sc.snr_config();
  s.gbar_ris = 1e4;
  s.gbar_d = 1.0;
  const auto cfgs = sc.element_configs();
  mc::MCConfig m;
  m.seed = 43;
  m.amplitude = mc::AmplitudeModel::projection;
  const auto ch = mc::simulate_channel(sc, m);
  const mc::StepCDF G(ch.snr(s.gbar_ris, s.gbar_d, true));

  // 1-D mobility with a = 2 leaves a 1/gamma tail: about 0.998 at 1e3 medians, past 0.999 at 1e4.
  const double med = G.quantile(0.5);
  CHECK(std::abs(cascade::risd_snr(s, cfgs, 1e3 * med, Which::cdf, cascade::Method::exact).value - G(1e3 * med)) <= 1e-3);
  CHECK(cascade::risd_snr(s, cfgs, 1e4 * med, Which::cdf, cascade::Method::exact).value >= 0.999);
  for (int i = 1; i <= 10; ++i) {
    const double x = G.quantile(0.09 * i);
    const double e = cascade::risd_snr(s, cfgs, x, Which::cdf, cascade::Method::exact).value;
    CHECK(std::abs(e - G(x)) <= 0.02);
    CHECK(cascade::risd_snr(s, cfgs, x, Which::cdf, cascade::Method::bound).value >= e - 1e-3);
  }

  sc.N = 2;
  const auto two = sc.element_configs();
  for (int i = 1; i <= 5; ++i) {
    const double x = 0.2 * i * G.quantile(0.5);
    CHECK(cascade::risd_snr(s, two, x, Which::cdf, cascade::Method::bound).value >=
          cascade::risd_snr(s, two, x, Which::cdf, cascade::Method::exact).value - 1e-3);
  }
}

TEST_CASE("more phase noise means a stochastically smaller channel") {
  ElementConfig l1, l2, pf;
  l2.phase = fading::PhaseNoiseParams::quantized(2);
  pf.phase = fading::PhaseNoiseParams::perfect_phase();
  const auto z1 = amplitudes(single(l1), 44), z2 = amplitudes(single(l2), 44), zp = amplitudes(single(pf), 44);
  const mc::StepCDF F1(z1), F2(z2), Fp(zp);
  for (int i = 1; i <= 10; ++i) {
    const double x = Fp.quantile(0.09 * i);
    const double a1 = cascade::zi_cdf(l1, x), a2 = cascade::zi_cdf(l2, x), ap = cascade::zi_cdf(pf, x);
    CHECK(a1 >= a2);
    CHECK(a2 >= ap);
    CHECK(F1(x) >= F2(x));
    CHECK(F2(x) >= Fp(x));
  }
}
