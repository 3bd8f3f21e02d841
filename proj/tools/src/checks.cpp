#include "risfox/cli/checks.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "risfox/error.hpp"

namespace risfox::cli {

double integrate_log_axis(const std::function<double(double)>& f, double log_lo, double log_hi, double tol) {
  auto g = [&](double t) {
    const double x = std::exp(t);
    return f(x) * x;
  };
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, log_lo, log_hi, 12, tol, &err);
  if (!std::isfinite(v)) throw QuadratureError("integrate_log_axis: non-finite result");
  return v;
}

double scaled_histogram_sup_norm(const std::vector<double>& samples, const std::function<double(double)>& cdf,
                                 double lo, double hi, int bins) {
  if (samples.empty() || bins < 1 || !(hi > lo)) throw DomainError("histogram: bad arguments");
  const double w = (hi - lo) / bins, n = static_cast<double>(samples.size());
  std::vector<double> count(bins, 0.0);
  for (double x : samples) {
    if (x < lo || x >= hi) continue;
    count[std::min(bins - 1, static_cast<int>((x - lo) / w))] += 1.0;
  }
  double peak = 0.0, gap = 0.0, prev = cdf(lo);
  for (int b = 0; b < bins; ++b) {
    const double next = cdf(lo + (b + 1) * w);
    const double analytic = (next - prev) / w;
    prev = next;
    peak = std::max(peak, analytic);
    gap = std::max(gap, std::abs(analytic - count[b] / (n * w)));
  }
  return gap / peak;
}

MomentEstimate sample_moment(const std::vector<double>& samples, double r) {
  double s = 0.0, s2 = 0.0;
  for (double x : samples) {
    const double v = std::pow(x, r);
    s += v;
    s2 += v * v;
  }
  const double n = static_cast<double>(samples.size());
  const double mean = s / n;
  return {mean, std::sqrt(std::max(0.0, s2 / n - mean * mean) / n)};
}

}  // namespace risfox::cli
