#include "risfox/sampler.hpp"

#include <cmath>
#include <numbers>

namespace risfox::mc {

double sample(const fading::KappaMuParams& p, Variates& v) {
  const double mu = p.mu, k = p.kappa;
  const double imu = std::round(mu);
  if (imu == mu && mu <= 16.0) {
    const int clusters = static_cast<int>(imu);
    const double sigma = std::sqrt(0.5 / (mu * (1.0 + k)));
    const double dom = std::sqrt(k / ((1.0 + k) * clusters));
    double r2 = 0.0;
    for (int c = 0; c < clusters; ++c) {
      const double x = dom + sigma * v.normal();
      const double y = sigma * v.normal();
      r2 += x * x + y * y;
    }
    return std::sqrt(r2);
  }
  const unsigned extra = v.poisson(mu * k);
  return std::sqrt(v.gamma(mu + extra) / (mu * (1.0 + k)));
}

namespace {

// y^{1/alpha} with the common shapes taken off the slow path.
double root(double y, double alpha) {
  if (alpha == 2.0) return std::sqrt(y);
  if (alpha == 1.0) return y;
  return std::pow(y, 1.0 / alpha);
}

double ipow(double x, int n) {
  double r = 1.0;
  for (; n > 0; n >>= 1, x *= x)
    if (n & 1) r *= x;
  return r;
}

}  // namespace

double sample(const fading::DGGParams& p, Variates& v) {
  return root(p.omega1() * v.gamma(p.beta1()), p.alpha1()) * root(p.omega2() * v.gamma(p.beta2()), p.alpha2());
}

double sample(const fading::GenKParams& p, Variates& v) {
  const double gm = v.gamma(p.m());
  const double gM = v.gamma(p.M());
  return std::sqrt(p.m0() / p.m() * gm * gM);
}

double sample(const fading::RayleighParams& p, Variates& v) { return std::sqrt(-p.msp * std::log(v.uniform())); }

double sample(const fading::FadingDistribution& d, Variates& v) {
  return std::visit([&v](const auto& p) { return sample(p, v); }, d);
}

double rwp_inverse_cdf(const fading::RWPTopology& t, double u) {
  // 1-D: F(y) = 3y^2 - 2y^3 inverts in closed form.
  if (t.n() == 2 && t.beta[0] == 1 && t.beta[1] == 2 && t.B(0) == 6.0 && t.B(1) == -6.0)
    return (0.5 - std::sin(std::asin(1.0 - 2.0 * u) / 3.0)) * t.dmax;
  double lo = 0.0, hi = 1.0, x = u;
  auto F = [&](double y) {
    double s = 0.0;
    for (int j = 0; j < t.n(); ++j) s += t.B(j) * ipow(y, t.beta[j] + 1) / (t.beta[j] + 1);
    return s;
  };
  auto f = [&](double y) {
    double s = 0.0;
    for (int j = 0; j < t.n(); ++j) s += t.B(j) * ipow(y, t.beta[j]);
    return s;
  };
  for (int it = 0; it < 60; ++it) {
    const double r = F(x) - u;
    if (r > 0.0) hi = x; else lo = x;
    const double d = f(x);
    double nx = d > 0.0 ? x - r / d : 0.5 * (lo + hi);
    if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
    if (std::abs(nx - x) < 1e-15) {
      x = nx;
      break;
    }
    x = nx;
  }
  return x * t.dmax;
}

double sample(const fading::RWPTopology& t, Variates& v) { return rwp_inverse_cdf(t, v.uniform()); }

double sample(const fading::PhaseNoiseParams& p, Variates& v) {
  if (p.perfect) return 0.0;
  return p.q() * std::numbers::pi * (2.0 * v.uniform() - 1.0);
}

}  // namespace risfox::mc
