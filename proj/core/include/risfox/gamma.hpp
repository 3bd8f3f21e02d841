#pragma once

#include <complex>

namespace risfox::specfun {

using cplx = std::complex<double>;

// Principal branch of log Gamma(z). Throws PoleError at z = 0, -1, -2, ...
cplx ln_gamma(cplx z);

// log(1/Gamma(z)); returns -inf at the poles of Gamma instead of throwing.
cplx ln_rgamma(cplx z);

double ln_gamma(double x);

bool is_gamma_pole(cplx z) noexcept;

}  // namespace risfox::specfun
