#include "risfox/gamma.hpp"

#include <math.h>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "risfox/error.hpp"

namespace risfox::specfun {
namespace {

// Lanczos g = 7, n = 9.
constexpr double kG = 7.0;
constexpr std::array<double, 9> kCoef = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double kHalfLog2Pi = 0.91893853320467274178;

// Beyond this many unit steps the recurrence is replaced by reflection.
constexpr int kMaxRecurrence = 256;

cplx lanczos(cplx z) {
  z -= 1.0;
  cplx sum = kCoef[0];
  for (std::size_t i = 1; i < kCoef.size(); ++i) sum += kCoef[i] / (z + static_cast<double>(i));
  const cplx t = z + kG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(sum);
}

}  // namespace

bool is_gamma_pole(cplx z) noexcept {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

cplx ln_gamma(cplx z) {
  if (is_gamma_pole(z)) throw PoleError("ln_gamma: pole at non-positive integer " + std::to_string(z.real()));
  if (z.real() >= 0.5) return lanczos(z);

  const double steps = std::ceil(0.5 - z.real());
  if (steps <= kMaxRecurrence) {
    // Gamma(z) = Gamma(z+n) / (z (z+1) ... (z+n-1)); summing logs term by term keeps the principal branch.
    cplx acc = 0.0;
    cplx w = z;
    for (int k = 0; k < static_cast<int>(steps); ++k, w += 1.0) acc += std::log(w);
    return lanczos(w) - acc;
  }
  // Far left: reflection. Only the exponential is meaningful here, the imaginary part may differ by 2*pi*k.
  return std::log(std::numbers::pi) - std::log(std::sin(std::numbers::pi * z)) - lanczos(1.0 - z);
}

cplx ln_rgamma(cplx z) {
  if (is_gamma_pole(z)) return {-std::numeric_limits<double>::infinity(), 0.0};
  return -ln_gamma(z);
}

double ln_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw PoleError("ln_gamma: pole at non-positive integer " + std::to_string(x));
  int sign = 0;
  return ::lgamma_r(x, &sign);  // reentrant: std::lgamma writes the global signgam
}

}  // namespace risfox::specfun
