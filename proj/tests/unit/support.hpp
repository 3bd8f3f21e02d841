#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace risfox::test {

// Kolmogorov-Smirnov distance evaluated at `points` order statistics spread over the sample.
inline double ks_distance(std::vector<double> x, const std::function<double(double)>& cdf, int points = 400) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (int i = 0; i < points; ++i) {
    const std::size_t k = static_cast<std::size_t>((i + 0.5) / points * n);
    const double F = cdf(x[k]);
    d = std::max({d, std::abs(F - k / n), std::abs(F - (k + 1) / n)});
  }
  return d;
}

struct MeanEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

inline MeanEstimate mean_of(const std::vector<double>& x, const std::function<double(double)>& g) {
  double m = 0.0, s = 0.0;
  std::size_t n = 0;
  for (double v : x) {
    const double y = g(v);
    ++n;
    const double d = y - m;
    m += d / n;
    s += d * (y - m);
  }
  return {m, std::sqrt(s / (n - 1) / n)};
}

// Largest gap between empirical and analytic bin densities on [lo, hi], relative to the largest analytic one.
inline double binned_sup_norm(const std::vector<double>& x, const std::function<double(double)>& cdf, double lo,
                              double hi, int bins) {
  std::vector<double> count(bins, 0.0);
  const double w = (hi - lo) / bins;
  for (double v : x) {
    const auto b = static_cast<long>(std::floor((v - lo) / w));
    if (b >= 0 && b < bins) count[b] += 1.0;
  }
  double peak = 0.0, gap = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double a = (cdf(lo + (b + 1) * w) - cdf(lo + b * w)) / w;
    peak = std::max(peak, a);
    gap = std::max(gap, std::abs(a - count[b] / (x.size() * w)));
  }
  return gap / peak;
}

}  // namespace risfox::test
