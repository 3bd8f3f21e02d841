#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "risfox/cascade.hpp"
#include "risfox/error.hpp"
#include "risfox/fading.hpp"
#include "risfox/sampler.hpp"
#include "support.hpp"

using namespace risfox;
using fading::RWPTopology;

namespace {

constexpr int kSamples = 1000000;

template <class P>
std::vector<double> draw(const P& p, std::uint64_t seed, int n = kSamples) {
  mc::Variates v(seed, 0);
  std::vector<double> x(n);
  for (auto& e : x) e = mc::sample(p, v);
  return x;
}

double integrate_log(const std::function<double(double)>& f, double lo, double hi) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate([&](double t) { return f(std::exp(t)) * std::exp(t); }, lo, hi, 15, 1e-13);
}

double nakagami_pdf(double mu, double x) {
  return 2.0 * std::pow(mu, mu) * std::pow(x, 2.0 * mu - 1.0) * std::exp(-mu * x * x) / std::tgamma(mu);
}

}  // namespace

TEST_CASE("kappa-mu density") {
  CHECK(fading::kappa_mu_pdf({1e-9, 1.0, 60}, 1.0) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-7));
  const fading::KappaMuParams p;
  CHECK(std::abs(integrate_log([&](double x) { return fading::kappa_mu_pdf(p, x); }, -40.0, 3.0) - 1.0) <= 1e-8);
  const auto m2 = test::mean_of(draw(p, 11), [](double x) { return x * x; });
  CHECK(std::abs(m2.mean - 1.0) <= 3.0 * m2.stderr_);
  CHECK(fading::kappa_mu_cdf(p, 1e3) == doctest::Approx(1.0));
}

TEST_CASE("kappa-mu series") {
  const fading::KappaMuParams p;
  CHECK(std::abs(fading::kappa_mu_series_pdf(p, 0.5) - fading::kappa_mu_pdf(p, 0.5)) <= 1e-9);
  const fading::KappaMuParams small{1e-12, 2.0, 60};
  double sup = 0.0;
  for (int i = 1; i <= 300; ++i) {
    const double x = 0.01 * i;
    sup = std::max(sup, std::abs(fading::kappa_mu_series_pdf(small, x) - nakagami_pdf(2.0, x)));
  }
  CHECK(sup <= 1e-6);
  // The typeset kernel does not reproduce the density.
  CHECK(std::abs(fading::kappa_mu_series_pdf_printed(p, 0.5) - fading::kappa_mu_pdf(p, 0.5)) > 1e-2);

  const int k4 = fading::kappa_mu_terms_needed(4.0, 2.0);
  MESSAGE("terms needed at kappa = 4, mu = 2: " << k4);
  CHECK(k4 > 0);
  CHECK(k4 <= 60);
  int prev = 0;
  for (double kappa : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    const int k = fading::kappa_mu_terms_needed(kappa, 2.0);
    CHECK(k >= prev);
    prev = k;
  }
  fading::KappaMuParams short_series = p;
  short_series.series_terms = 3;
  CHECK_THROWS_AS(fading::kappa_mu_series_pdf(short_series, 1.0), TruncationError);
}

TEST_CASE("dGG density") {
  const fading::DGGParams d;
  CHECK(std::abs(integrate_log([&](double x) { return fading::dgg_pdf(d, x); }, -30.0, 4.0) - 1.0) <= 1e-6);
  const fading::DGGParams dr(2.0, 1.0, 2.0, 1.0);
  const auto x = draw(dr, 12);
  const auto v = cascade::MellinVariable::product(
      {cascade::gg_variable(2.0, 1.0, dr.omega1()), cascade::gg_variable(2.0, 1.0, dr.omega2())});
  const double sup = test::binned_sup_norm(
      x, [&](double y) { return y <= 0.0 ? 0.0 : cascade::mellin_cdf(v, y).value; }, 0.0, 3.0, 60);
  CHECK(sup <= 0.02);
  // Double Rayleigh: 4 x K_0(2 x) with unit powers.
  for (double y : {0.2, 0.7, 1.5}) CHECK(fading::dgg_pdf(dr, y) == doctest::Approx(4.0 * y * std::cyl_bessel_k(0.0, 2.0 * y)).epsilon(1e-8));
}

TEST_CASE("generalized-K density") {
  const fading::GenKParams g(1.0, 2.5454, 1.0);
  CHECK(std::abs(integrate_log([&](double x) { return fading::genk_pdf(g, x); }, -40.0, 5.0) - 1.0) <= 1e-8);
  for (double x : {0.1, 1.0, 2.0}) CHECK(std::abs(fading::genk_pdf(g, x) - fading::genk_pdf_meijer(g, x)) <= 1e-8);
  // With b = 2 sqrt(m / m0) the mean power is m0 M.
  const double second = integrate_log([&](double x) { return x * x * fading::genk_pdf(g, x); }, -40.0, 6.0);
  CHECK(second == doctest::Approx(g.m0() * g.M()).epsilon(1e-8));
  const auto m2 = test::mean_of(draw(g, 13), [](double x) { return x * x; });
  CHECK(std::abs(m2.mean - second) <= 3.0 * m2.stderr_);
  CHECK(fading::GenKParams::shadowing_from_sigma_db(4.0) == doctest::Approx(4.233).epsilon(1e-3));
  CHECK_THROWS_AS(fading::GenKParams::from_sigma_db(1.0, 4.0, 1.0, 2.5454), DomainError);
  const auto ok = fading::GenKParams::from_sigma_db(1.0, 4.0, 1.0, fading::GenKParams::shadowing_from_sigma_db(4.0));
  CHECK(ok.sigma_db().has_value());
}

TEST_CASE("random waypoint distance") {
  const double d = 100.0;
  const auto t1 = RWPTopology::one_d(d);
  CHECK(fading::rwp_pdf(t1, d) == doctest::Approx(0.0));
  CHECK(fading::rwp_pdf(t1, d / 2) == doctest::Approx(1.5 / d));
  CHECK_THROWS_AS(fading::rwp_pdf(t1, d * 1.01), DomainError);
  CHECK_THROWS_AS(fading::rwp_pdf(t1, -1.0), DomainError);
  for (const char* n : {"1d", "2d", "3d"}) {
    const auto t = RWPTopology::by_name(n, d);
    const auto [num, den] = t.normalization_exact();
    CHECK(num == 1);
    CHECK(den == 1);
    for (int i = 0; i <= 1000; ++i) CHECK(fading::rwp_pdf(t, d * i / 1000.0) >= 0.0);
  }
  CHECK(RWPTopology::two_d(d).B_den == 73);
  CHECK(RWPTopology::three_d(d).B_den == 72);
  CHECK_FALSE(RWPTopology::two_d_misprint(d).normalized());

  const auto r = draw(t1, 14);
  const auto m = test::mean_of(r, [](double x) { return x; });
  CHECK(std::abs(m.mean - d / 2) <= 3.0 * m.stderr_);
  CHECK(fading::rwp_mean(t1) == doctest::Approx(d / 2));
}

TEST_CASE("phase characteristic") {
  CHECK(fading::phase_char(0.5, 1e-12).real() == doctest::Approx(1.0));
  CHECK(fading::phase_char(0.5, 0.0).real() == 1.0);
  CHECK(fading::phase_char(0.5, 1.0).real() == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-14));
  for (double q : {0.5, 0.25, 0.125})
    for (int i = 0; i <= 50; ++i) {
      const double s = 0.2 * i;
      CHECK(fading::phase_char(q, s).real() == doctest::Approx(fading::phase_char(q, -s).real()));
      CHECK(std::abs(fading::phase_char(q, s)) <= 1.0);
    }
  const auto th = draw(fading::PhaseNoiseParams::quantized(1), 15, 10000000);
  const auto m = test::mean_of(th, [](double x) { return std::cos(x); });
  CHECK(std::abs(m.mean - 2.0 / std::numbers::pi) <= 3.0 * m.stderr_);
}

TEST_CASE("samplers are deterministic") {
  const fading::KappaMuParams p;
  CHECK(draw(p, 99, 1000) == draw(p, 99, 1000));
  CHECK(draw(p, 99, 1000) != draw(p, 98, 1000));
  CHECK(draw(RWPTopology::three_d(10.0), 5, 1000) == draw(RWPTopology::three_d(10.0), 5, 1000));
}

TEST_CASE("samplers pass Kolmogorov-Smirnov at 1e6 samples") {
  const double tol = 0.005;
  const fading::KappaMuParams km;
  CHECK(test::ks_distance(draw(km, 21), [&](double x) { return fading::kappa_mu_cdf(km, x); }) <= tol);

  const fading::DGGParams d;
  const auto dv = cascade::MellinVariable::product(
      {cascade::gg_variable(d.alpha1(), d.beta1(), d.omega1()), cascade::gg_variable(d.alpha2(), d.beta2(), d.omega2())});
  CHECK(test::ks_distance(draw(d, 22), [&](double x) { return cascade::mellin_cdf(dv, x).value; }) <= tol);

  const fading::GenKParams g;
  const auto gv = cascade::genk_variable(g);
  CHECK(test::ks_distance(draw(g, 23), [&](double x) { return cascade::mellin_cdf(gv, x).value; }) <= tol);

  const fading::RayleighParams ray{2.0};
  CHECK(test::ks_distance(draw(ray, 24), [](double x) { return 1.0 - std::exp(-x * x / 2.0); }) <= tol);

  for (const char* n : {"1d", "2d", "3d"}) {
    const auto t = RWPTopology::by_name(n, 100.0);
    CAPTURE(n);
    CHECK(test::ks_distance(draw(t, 25), [&](double r) { return fading::rwp_cdf(t, r); }) <= tol);
  }
  for (int L : {1, 2, 3}) {
    const auto ph = fading::PhaseNoiseParams::quantized(L);
    const double half = ph.q() * std::numbers::pi;
    CHECK(test::ks_distance(draw(ph, 26), [&](double x) { return (x + half) / (2.0 * half); }) <= tol);
  }
}
