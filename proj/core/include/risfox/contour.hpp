#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace risfox::specfun {

using cplx = std::complex<double>;

// Open interval of real parts on which a Mellin-Barnes integrand is pole free.
struct Strip {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool empty() const noexcept { return !(lo < hi); }
  bool contains(double c) const noexcept { return c > lo && c < hi; }
  // Midpoint. An unbounded side, or a strip wider than 2*clip, is replaced by a window of
  // width clip at the edge nearest the origin.
  double midpoint(double clip = 2.0) const noexcept;
};

Strip intersect(const Strip& a, const Strip& b) noexcept;

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

// Logarithm of an integrand, evaluated at a complex point of the integration line.
using LogIntegrand = std::function<cplx(cplx)>;

struct LineOptions {
  double rel_tol = 1e-8;
  double tail_ratio = 1e-16;
  double truncation = 0.0;  // half-length T of the line; 0 selects it adaptively
  int nodes = 16;           // initial trapezoid panels on [0, T]
  int max_levels = 16;
  double max_truncation = 5000.0;
};

// Smallest scanned T with |f(c + it)| < tail_ratio * peak for the last few scan points.
double find_truncation(const LogIntegrand& log_f, double c, double tail_ratio, double max_t);

// (1/2 pi i) times the integral of exp(log_f(u)) along Re u = c.
// log_f must be conjugate symmetric so that the integral is real.
Estimate line_integral(const LogIntegrand& log_f, double c, const LineOptions& opt = {});

// Trapezoid values at successive halvings of the step, without a stopping rule.
std::vector<double> line_integral_levels(const LogIntegrand& log_f, double c, const LineOptions& opt, int levels);

// Gamma(shift + sum_i scales[i] * u_i) raised to `power` (+1 numerator, -1 denominator).
struct JointGamma {
  double shift = 0.0;
  std::vector<double> scales;
  int power = 1;
};

struct MultiIntegrand {
  std::vector<LogIntegrand> per_dim;  // each conjugate symmetric
  std::vector<JointGamma> joint;
};

enum class QuadratureStrategy { tensor, quasi_random };

struct MultiOptions {
  double rel_tol = 1e-4;
  double tail_ratio = 1e-16;
  std::vector<double> truncation;  // per dimension; empty selects adaptively
  int nodes = 16;
  int max_levels = 7;
  QuadratureStrategy strategy = QuadratureStrategy::tensor;
  std::uint64_t max_points = 400'000'000ULL;
  std::uint64_t seed = 0x7f4a7c15ULL;
  int replicas = 8;
};

cplx log_integrand(const MultiIntegrand& f, std::span<const cplx> u);

// (1/2 pi i)^N times the N-fold integral over the product of lines Re u_i = c_i.
Estimate multi_integral(const MultiIntegrand& f, std::span<const double> c, const MultiOptions& opt = {});

std::vector<double> truncations(const MultiIntegrand& f, std::span<const double> c, double tail_ratio,
                                double max_t = 5000.0);

}  // namespace risfox::specfun
