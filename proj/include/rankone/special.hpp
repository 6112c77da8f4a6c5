#pragma once

#include <complex>

namespace rankone {

using cplx = std::complex<double>;

// log Gamma(z) for complex z, Lanczos (g = 607/128, 15 terms) with
// reflection for Re(z) < 1/2. Accurate to ~1e-14 relative on the strip
// |Im z| <= 250 used by the Plancherel weights. The imaginary part is
// not branch-tracked; exp(log_gamma(z)) is always Gamma(z).
cplx log_gamma(cplx z);

cplx gamma_fn(cplx z);

}  // namespace rankone
