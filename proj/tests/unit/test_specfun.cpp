#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "risfox/cascade.hpp"
#include "risfox/error.hpp"
#include "risfox/fading.hpp"
#include "risfox/foxh.hpp"
#include "risfox/gamma.hpp"
#include "risfox/rng.hpp"

using namespace risfox;
using specfun::cplx;
using specfun::FoxHParams;

namespace {

FoxHParams exp_kernel() {
  FoxHParams p;
  p.m = 1;
  p.lower = {{0.0, 1.0}};
  return p;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("ln_gamma trivial values") {
  CHECK(std::abs(specfun::ln_gamma(cplx(1.0, 0.0))) < 1e-15);
  CHECK(specfun::ln_gamma(cplx(0.5, 0.0)).real() == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
  CHECK(specfun::ln_gamma(cplx(4.0, 0.0)).real() == doctest::Approx(std::log(6.0)).epsilon(1e-14));
  CHECK(specfun::ln_gamma(4.0) == doctest::Approx(std::log(6.0)).epsilon(1e-14));
}

TEST_CASE("ln_gamma against a 30-digit reference table") {
  struct Row {
    cplx z, v;
  };
  // mpmath loggamma, 30 digits.
  const Row table[] = {
      {{0.5, 0.0}, {0.57236494292470008707, 0.0}},
      {{3.7, 0.0}, {1.4280723266653881292, 0.0}},
      {{1.0, 1.0}, {-0.65092319930185633889, -0.30164032046753319789}},
      {{-2.5, 0.3}, {-0.43208889261320192052, -9.0933454212897415073}},
      {{0.1, -20.0}, {-31.695265907346562615, -39.284410010649361162}},
      {{30.0, 5.0}, {70.835355390297644948, 16.945919923982195726}},
      {{-7.3, -2.0}, {-13.327732047581360053, 20.373400309173530449}},
      {{0.001, 0.001}, {6.5606044738375526187, -0.78597373492965343485}},
  };
  for (const auto& r : table) {
    CAPTURE(r.z);
    const cplx got = specfun::ln_gamma(r.z);
    CHECK(std::abs(got - r.v) <= 1e-12 * std::max(1.0, std::abs(r.v)));
  }
}

TEST_CASE("ln_gamma recurrence on 1000 random points") {
  mc::RandomStream rng(7, 0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const cplx z(0.05 + 20.0 * rng.uniform(), -20.0 + 40.0 * rng.uniform());
    const cplx lhs = std::exp(specfun::ln_gamma(z + 1.0));
    const cplx rhs = z * std::exp(specfun::ln_gamma(z));
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("ln_gamma poles") {
  for (double z : {0.0, -1.0, -7.0}) {
    CHECK_THROWS_AS(specfun::ln_gamma(cplx(z, 0.0)), PoleError);
    CHECK(std::isinf(specfun::ln_rgamma(cplx(z, 0.0)).real()));
  }
  CHECK(specfun::is_gamma_pole(cplx(-3.0, 0.0)));
  CHECK_FALSE(specfun::is_gamma_pole(cplx(-3.0, 1e-9)));
}

TEST_CASE("fox_h reduces to exp(-x) on a log grid") {
  const auto p = exp_kernel();
  const auto c = specfun::auto_contour(p, 1e-10);
  CHECK(c.abscissa[0] > 0.0);
  CHECK(specfun::fox_h(p, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
  double worst = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double x = std::pow(10.0, -3.0 + 4.0 * i / 40.0);
    worst = std::max(worst, rel(specfun::fox_h(p, x, c).value, std::exp(-x)));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("Meijer G Bessel K_1/2 identity") {
  const double b[2] = {0.25, -0.25};
  const auto g = specfun::meijer_g(2, 0, {}, b);
  const double k = 0.5 * specfun::fox_h(g, 0.25);
  CHECK(k == doctest::Approx(std::sqrt(std::numbers::pi / 2.0) * std::exp(-1.0)).epsilon(1e-9));
  CHECK(k == doctest::Approx(0.4610685).epsilon(1e-6));
}

TEST_CASE("H^{1,1}_{1,1} is 1/(1+x)") {
  FoxHParams p;
  p.m = 1;
  p.n = 1;
  p.upper = {{0.0, 1.0}};
  p.lower = {{0.0, 1.0}};
  for (double x : {0.01, 0.3, 1.0, 4.0, 50.0}) CHECK(rel(specfun::fox_h(p, x), 1.0 / (1.0 + x)) <= 1e-8);
}

TEST_CASE("dGG H-form equals product-distribution quadrature at x = 1") {
  const fading::DGGParams d(2.0, 1.0, 2.0, 2.0);
  using boost::math::quadrature::gauss_kronrod;
  // f(x) = int f1(y) f2(x / y) / y dy over y = e^t.
  auto integrand = [&](double t) {
    const double y = std::exp(t);
    return fading::gg_pdf(d.alpha1(), d.beta1(), d.omega1(), y) * fading::gg_pdf(d.alpha2(), d.beta2(), d.omega2(), 1.0 / y);
  };
  const double brute = gauss_kronrod<double, 61>::integrate(integrand, -20.0, 20.0, 15, 1e-14);
  CHECK(std::abs(fading::dgg_pdf(d, 1.0) - brute) <= 1e-6);
}

TEST_CASE("auto_contour on the element kernel block") {
  cascade::ElementConfig cfg;
  cfg.phase = fading::PhaseNoiseParams::perfect_phase();
  const auto cc = cascade::cascade_coefficients(cfg);
  const auto& blk = cc.blocks.front();
  const auto strip = specfun::admissible_strip(blk);
  const auto c = specfun::auto_contour(blk);
  CHECK(strip.contains(c.abscissa[0]));
  // With 1-D mobility and a = 2 the pole families sit at 2 (x^{-s} side) and at -min{2 mu, a1 b1, a2 b2} = -2.
  CHECK(strip.hi == doctest::Approx(2.0));
  CHECK(strip.lo == doctest::Approx(-2.0));
}

TEST_CASE("overlapping pole families have no contour") {
  FoxHParams p;
  p.m = 1;
  p.n = 1;
  p.lower = {{0.0, 1.0}};   // poles at s <= 0
  p.upper = {{3.0, 1.0}};   // poles at s >= -2
  CHECK_THROWS_AS(specfun::auto_contour(p), NoContourError);
}

TEST_CASE("contour invariance within the admissible strip") {
  const auto p = exp_kernel();
  const auto base = specfun::auto_contour(p, 1e-10);
  for (double x : {0.1, 1.0, 3.0}) {
    const auto e0 = specfun::fox_h(p, x, base);
    for (double c : {0.3, 1.7, 3.5}) {
      auto cs = base;
      cs.abscissa[0] = c;
      const auto e1 = specfun::fox_h(p, x, cs);
      CAPTURE(x);
      CAPTURE(c);
      CHECK(std::abs(e1.value - e0.value) <= std::max(e0.error, e1.error));
    }
  }
}

TEST_CASE("node doubling converges monotonically") {
  const double b[2] = {0.25, -0.25};
  const std::vector<FoxHParams> corpus{exp_kernel(), specfun::meijer_g(2, 0, {}, b),
                                       fading::dgg_foxh(fading::DGGParams{})};
  for (const auto& p : corpus) {
    auto c = specfun::auto_contour(p, 1e-10);
    c.nodes[0] = 16;
    const auto lv = specfun::fox_h_levels(p, 0.7, c, 6);
    double prev = INFINITY;
    for (std::size_t i = 1; i < lv.size(); ++i) {
      const double d = std::abs(lv[i] - lv[i - 1]);
      if (d < 1e-13 * std::abs(lv[i])) break;  // rounding floor reached
      CHECK(d < prev);
      prev = d;
    }
  }
}

TEST_CASE("multivariate H: one-dimensional block equals fox_h") {
  const auto p = fading::dgg_foxh(fading::DGGParams{});
  specfun::MultiFoxHParams mp;
  mp.per_var = {p};
  const auto c = specfun::auto_contour(mp, 1e-10);
  for (int i = 0; i < 10; ++i) {
    const double x = 0.05 + 0.35 * i;
    const double xs[1] = {x};
    CHECK(std::abs(specfun::fox_h_multi(mp, xs, c).value - specfun::fox_h(p, x)) <= 1e-8);
  }
}

TEST_CASE("multivariate H: separable kernel is a product") {
  const auto p1 = exp_kernel();
  const double b[2] = {0.25, -0.25};
  const auto p2 = specfun::meijer_g(2, 0, {}, b);
  specfun::MultiFoxHParams mp;
  mp.per_var = {p1, p2};
  const double xs[2] = {0.8, 0.25};
  const double want = specfun::fox_h(p1, 0.8) * specfun::fox_h(p2, 0.25);
  CHECK(std::abs(specfun::fox_h_multi(mp, xs) - want) <= 1e-6);
}

TEST_CASE("multivariate H: dimension limit") {
  specfun::MultiFoxHParams mp;
  mp.per_var.assign(6, exp_kernel());
  const std::vector<double> xs(6, 1.0);
  CHECK_THROWS_AS(specfun::fox_h_multi(mp, xs), DimensionError);
  mp.per_var.resize(4);
  specfun::FoxHLimits lim;
  lim.max_dim = 3;
  CHECK_THROWS_AS(specfun::auto_contour(mp, 1e-4, lim), DimensionError);
}

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using P = mc::Philox4x32;
  CHECK(P::block({0, 0, 0, 0}, {0, 0}) == P::ctr_type{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(P::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
        P::ctr_type{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(P::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
        P::ctr_type{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("random streams are reproducible and distinct") {
  mc::RandomStream a(42, 3), b(42, 3), c(42, 4);
  bool differ = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a(), y = b(), z = c();
    CHECK(x == y);
    differ = differ || x != z;
  }
  CHECK(differ);
}
