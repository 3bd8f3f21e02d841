#pragma once

#include <functional>
#include <vector>

namespace risfox::cli {

// int_0^inf f(x) dx as int f(e^t) e^t dt over [log_lo, log_hi], adaptive Gauss-Kronrod.
double integrate_log_axis(const std::function<double(double)>& f, double log_lo, double log_hi, double tol = 1e-10);

// Largest gap between the empirical and analytic bin densities, divided by the largest analytic bin density.
// Analytic bin densities come from CDF differences, so both sides are averages over the same bins.
double scaled_histogram_sup_norm(const std::vector<double>& samples, const std::function<double(double)>& cdf,
                                 double lo, double hi, int bins);

struct MomentEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};
MomentEstimate sample_moment(const std::vector<double>& samples, double r);

}  // namespace risfox::cli
