#include "risfox/foxh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "risfox/error.hpp"
#include "risfox/gamma.hpp"

namespace risfox::specfun {
namespace {

LineOptions line_options(const ContourSpec& c) {
  LineOptions o;
  o.rel_tol = c.rel_tol;
  if (!c.truncation.empty()) o.truncation = c.truncation[0];
  if (!c.nodes.empty()) o.nodes = c.nodes[0];
  return o;
}

int nodes_for(double rel_tol) {
  const double digits = std::max(1.0, -std::log10(rel_tol));
  return std::max(16, static_cast<int>(4 * digits));
}

void check_contour(const ContourSpec& c, std::size_t dim) {
  if (c.abscissa.size() != dim) throw DimensionError("contour abscissa count does not match the dimension");
  for (double t : c.truncation)
    if (!(t > 0.0)) throw DomainError("contour truncation must be positive");
  for (int k : c.nodes)
    if (k < 16) throw DomainError("contour needs at least 16 nodes");
}

}  // namespace

void FoxHParams::validate() const {
  if (m < 0 || n < 0 || m > q() || n > p()) throw DomainError("Fox H: need 0 <= m <= q and 0 <= n <= p");
  for (const auto& g : upper)
    if (!std::isfinite(g.a) || !(g.A >= 0.0)) throw DomainError("Fox H: upper pair needs finite a and A >= 0");
  for (const auto& g : lower)
    if (!std::isfinite(g.a) || !(g.A >= 0.0)) throw DomainError("Fox H: lower pair needs finite b and B >= 0");
}

void MultiFoxHParams::validate() const {
  if (per_var.empty()) throw DimensionError("multivariate Fox H needs at least one variable");
  const std::size_t N = per_var.size();
  if (joint_n < 0 || joint_n > static_cast<int>(joint_upper.size()))
    throw DomainError("multivariate Fox H: joint_n out of range");
  for (const auto* block : {&joint_upper, &joint_lower})
    for (const auto& j : *block) {
      if (j.scales.size() != N) throw DimensionError("joint scale vector length differs from dimension");
      for (double s : j.scales)
        if (!std::isfinite(s)) throw DomainError("joint scale not finite");
    }
  for (const auto& p : per_var) p.validate();
}

cplx log_theta(const FoxHParams& p, cplx s) {
  cplx acc = 0.0;
  for (int j = 0; j < p.q(); ++j) {
    const auto& b = p.lower[j];
    acc += j < p.m ? ln_gamma(b.a + b.A * s) : ln_rgamma(1.0 - b.a - b.A * s);
  }
  for (int j = 0; j < p.p(); ++j) {
    const auto& a = p.upper[j];
    acc += j < p.n ? ln_gamma(1.0 - a.a - a.A * s) : ln_rgamma(a.a + a.A * s);
  }
  return acc;
}

Strip admissible_strip(const FoxHParams& p) {
  p.validate();
  Strip s;
  for (int j = 0; j < p.m; ++j) {
    const auto& b = p.lower[j];
    if (b.A > 0.0) {
      s.lo = std::max(s.lo, -b.a / b.A);
    } else if (is_gamma_pole(b.a)) {
      throw NoContourError("constant gamma factor sits on a pole");
    }
  }
  for (int j = 0; j < p.n; ++j) {
    const auto& a = p.upper[j];
    if (a.A > 0.0) {
      s.hi = std::min(s.hi, (1.0 - a.a) / a.A);
    } else if (is_gamma_pole(1.0 - a.a)) {
      throw NoContourError("constant gamma factor sits on a pole");
    }
  }
  return s;
}

Strip admissible_strip_multi(const FoxHParams& p) {
  const Strip s = admissible_strip(p);
  return {-s.hi, -s.lo};
}

ContourSpec auto_contour(const FoxHParams& p, double rel_tol) {
  const Strip s = admissible_strip(p);
  if (s.empty()) throw NoContourError("Fox H: pole strips overlap, no admissible contour");
  ContourSpec c;
  c.abscissa = {s.midpoint()};
  const double x0 = c.abscissa[0];
  c.truncation = {find_truncation([&](cplx z) { return log_theta(p, z); }, x0, 1e-16, 5000.0)};
  c.nodes = {nodes_for(rel_tol)};
  c.rel_tol = rel_tol;
  return c;
}

namespace {

MultiIntegrand multi_integrand(const MultiFoxHParams& p, std::span<const double> x) {
  MultiIntegrand f;
  const std::size_t N = p.per_var.size();
  for (std::size_t i = 0; i < N; ++i) {
    const FoxHParams& blk = p.per_var[i];
    const double lx = std::log(x[i]);
    f.per_dim.emplace_back([&blk, lx](cplx s) { return log_theta(blk, -s) + s * lx; });
  }
  for (std::size_t j = 0; j < p.joint_upper.size(); ++j) {
    const auto& J = p.joint_upper[j];
    if (static_cast<int>(j) < p.joint_n) {
      f.joint.push_back({1.0 - J.a, J.scales, +1});
    } else {
      std::vector<double> neg(J.scales);
      for (double& v : neg) v = -v;
      f.joint.push_back({J.a, neg, -1});
    }
  }
  for (const auto& J : p.joint_lower) f.joint.push_back({1.0 - J.a, J.scales, -1});
  return f;
}

}  // namespace

ContourSpec auto_contour(const MultiFoxHParams& p, double rel_tol, const FoxHLimits& limits) {
  p.validate();
  const int N = p.dim();
  if (N > limits.max_dim) throw DimensionError("multivariate Fox H dimension " + std::to_string(N) + " above limit");
  ContourSpec c;
  c.strategy = N <= limits.max_tensor_dim ? QuadratureStrategy::tensor : QuadratureStrategy::quasi_random;
  c.rel_tol = rel_tol;
  for (const auto& blk : p.per_var) {
    const Strip s = admissible_strip_multi(blk);
    if (s.empty()) throw NoContourError("multivariate Fox H: per-variable strip is empty");
    c.abscissa.push_back(s.midpoint());
  }
  // Joint numerator gammas must stay off their poles on the chosen lines.
  for (int j = 0; j < p.joint_n; ++j) {
    double re = 1.0 - p.joint_upper[j].a;
    for (int i = 0; i < N; ++i) re += p.joint_upper[j].scales[i] * c.abscissa[i];
    if (!(re > 0.0)) throw NoContourError("multivariate Fox H: joint numerator strip excludes the midpoint contour");
  }
  const std::vector<double> ones(N, 1.0);
  const MultiIntegrand f = multi_integrand(p, ones);
  c.truncation = truncations(f, c.abscissa, 1e-16);
  c.nodes.assign(N, nodes_for(rel_tol));
  return c;
}

Estimate fox_h(const FoxHParams& p, double x, const ContourSpec& contour) {
  if (!(x > 0.0)) throw DomainError("fox_h: x must be positive");
  check_contour(contour, 1);
  const Strip s = admissible_strip(p);
  if (!s.contains(contour.abscissa[0])) throw NoContourError("fox_h: contour abscissa outside the admissible strip");
  const double lx = std::log(x);
  return line_integral([&](cplx z) { return log_theta(p, z) - z * lx; }, contour.abscissa[0], line_options(contour));
}

double fox_h(const FoxHParams& p, double x) { return fox_h(p, x, auto_contour(p)).value; }

std::vector<double> fox_h_levels(const FoxHParams& p, double x, const ContourSpec& contour, int levels) {
  check_contour(contour, 1);
  const double lx = std::log(x);
  return line_integral_levels([&](cplx z) { return log_theta(p, z) - z * lx; }, contour.abscissa[0],
                              line_options(contour), levels);
}

Estimate fox_h_multi(const MultiFoxHParams& p, std::span<const double> x, const ContourSpec& contour,
                     const FoxHLimits& limits) {
  p.validate();
  const int N = p.dim();
  if (static_cast<int>(x.size()) != N) throw DimensionError("fox_h_multi: argument count differs from dimension");
  if (N > limits.max_dim) throw DimensionError("fox_h_multi: dimension above limit");
  if (contour.strategy == QuadratureStrategy::tensor && N > limits.max_tensor_dim)
    throw DimensionError("fox_h_multi: tensor quadrature limited to " + std::to_string(limits.max_tensor_dim) +
                         " variables");
  check_contour(contour, N);
  for (int i = 0; i < N; ++i) {
    if (!(x[i] > 0.0)) throw DomainError("fox_h_multi: arguments must be positive");
    if (!admissible_strip_multi(p.per_var[i]).contains(contour.abscissa[i]))
      throw NoContourError("fox_h_multi: contour abscissa outside the admissible strip");
  }
  const MultiIntegrand f = multi_integrand(p, x);
  MultiOptions o;
  o.rel_tol = contour.rel_tol;
  o.truncation = contour.truncation;
  if (!contour.nodes.empty()) o.nodes = *std::min_element(contour.nodes.begin(), contour.nodes.end());
  o.strategy = contour.strategy;
  return multi_integral(f, contour.abscissa, o);
}

double fox_h_multi(const MultiFoxHParams& p, std::span<const double> x) {
  return fox_h_multi(p, x, auto_contour(p)).value;
}

FoxHParams meijer_g(int m, int n, std::span<const double> a, std::span<const double> b) {
  FoxHParams p;
  p.m = m;
  p.n = n;
  for (double v : a) p.upper.push_back({v, 1.0});
  for (double v : b) p.lower.push_back({v, 1.0});
  p.validate();
  return p;
}

}  // namespace risfox::specfun
