#pragma once

#include <random>

#include "risfox/fading.hpp"
#include "risfox/rng.hpp"

namespace risfox::mc {

// A random stream together with the distribution objects that carry state between draws.
class Variates {
 public:
  Variates(std::uint64_t seed, std::uint64_t stream) : rng_(seed, stream) {}

  double uniform() noexcept { return rng_.uniform(); }
  double normal() { return normal_(rng_); }
  double gamma(double shape) { return std::gamma_distribution<double>(shape, 1.0)(rng_); }
  unsigned poisson(double mean) { return mean > 0.0 ? std::poisson_distribution<unsigned>(mean)(rng_) : 0u; }
  RandomStream& engine() noexcept { return rng_; }

 private:
  RandomStream rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// kappa-mu amplitude with unit mean power.
double sample(const fading::KappaMuParams& p, Variates& v);
double sample(const fading::DGGParams& p, Variates& v);
double sample(const fading::GenKParams& p, Variates& v);
double sample(const fading::RayleighParams& p, Variates& v);
double sample(const fading::FadingDistribution& d, Variates& v);
// Distance on [0, dmax].
double sample(const fading::RWPTopology& t, Variates& v);
// Residual phase on (-q pi, q pi); zero for perfect phase.
double sample(const fading::PhaseNoiseParams& p, Variates& v);

double rwp_inverse_cdf(const fading::RWPTopology& t, double u);

}  // namespace risfox::mc
