#pragma once

#include <span>
#include <vector>

#include "risfox/contour.hpp"

namespace risfox::specfun {

// (a, A) entering Gamma(a + A s) or Gamma(1 - a - A s).
struct GammaPair {
  double a = 0.0;
  double A = 1.0;
};

// H^{m,n}_{p,q}(x) = (1/2 pi i) \int Theta(s) x^{-s} ds with
// Theta(s) = prod_{j<=m} G(b_j + B_j s) prod_{j<=n} G(1 - a_j - A_j s)
//          / prod_{j>m} G(1 - b_j - B_j s) prod_{j>n} G(a_j + A_j s).
struct FoxHParams {
  int m = 0;
  int n = 0;
  std::vector<GammaPair> upper;  // a_j, length p
  std::vector<GammaPair> lower;  // b_j, length q

  int p() const noexcept { return static_cast<int>(upper.size()); }
  int q() const noexcept { return static_cast<int>(lower.size()); }
  void validate() const;
};

// Shift plus one scale per variable.
struct JointPair {
  double a = 0.0;
  std::vector<double> scales;
};

// N-variate H with integrand
//   prod_{j<=n} G(1 - a_j + sum_i A_ji s_i) / prod_{j>n} G(a_j - sum_i A_ji s_i)
//   / prod_j G(1 - b_j + sum_i B_ji s_i) * prod_i theta_i(s_i) x_i^{s_i},
// where theta_i(s) is the univariate Theta of per_var[i] evaluated at -s.
struct MultiFoxHParams {
  int joint_n = 0;
  std::vector<JointPair> joint_upper;
  std::vector<JointPair> joint_lower;
  std::vector<FoxHParams> per_var;

  int dim() const noexcept { return static_cast<int>(per_var.size()); }
  void validate() const;
};

struct ContourSpec {
  std::vector<double> abscissa;    // s-variable of the respective definition above
  std::vector<double> truncation;  // imaginary half-length per variable
  std::vector<int> nodes;
  QuadratureStrategy strategy = QuadratureStrategy::tensor;
  double rel_tol = 1e-8;
};

struct FoxHLimits {
  int max_tensor_dim = 3;
  int max_dim = 5;
};

cplx log_theta(const FoxHParams& p, cplx s);
Strip admissible_strip(const FoxHParams& p);
// Strip of the multivariate per-variable factor, i.e. of theta_i(-s).
Strip admissible_strip_multi(const FoxHParams& p);

ContourSpec auto_contour(const FoxHParams& p, double rel_tol = 1e-8);
ContourSpec auto_contour(const MultiFoxHParams& p, double rel_tol = 1e-4, const FoxHLimits& limits = {});

Estimate fox_h(const FoxHParams& p, double x, const ContourSpec& contour);
double fox_h(const FoxHParams& p, double x);

Estimate fox_h_multi(const MultiFoxHParams& p, std::span<const double> x, const ContourSpec& contour,
                     const FoxHLimits& limits = {});
double fox_h_multi(const MultiFoxHParams& p, std::span<const double> x);

// Trapezoid values at successive node doublings, for convergence studies.
std::vector<double> fox_h_levels(const FoxHParams& p, double x, const ContourSpec& contour, int levels);

// Meijer G^{m,n}_{p,q}: all scales equal to one.
FoxHParams meijer_g(int m, int n, std::span<const double> a, std::span<const double> b);

}  // namespace risfox::specfun
