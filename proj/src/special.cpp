#include "rankone/special.hpp"

#include <cmath>
#include <stdexcept>

namespace rankone {

namespace {

// Godfrey's coefficients for g = 607/128, N = 15.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

constexpr double kLogSqrt2Pi = 0.91893853320467274178;

// log(sin(pi z)) without overflow for large |Im z|; branch not tracked.
cplx log_sin_pi(cplx z) {
  const cplx ipz = cplx{0, 1} * M_PI * z;
  if (z.imag() > 1.0) {
    // sin(pi z) = -e^{-i pi z} (1 - e^{2 i pi z}) / (2i)
    return -ipz + std::log(1.0 - std::exp(2.0 * ipz)) -
           std::log(cplx{0, 2}) + cplx{0, M_PI};
  }
  if (z.imag() < -1.0) {
    return ipz + std::log(1.0 - std::exp(-2.0 * ipz)) - std::log(cplx{0, 2});
  }
  return std::log(std::sin(M_PI * z));
}

cplx lanczos_log_gamma(cplx z) {
  // valid for Re(z) >= 0.5
  cplx acc = kLanczos[0];
  for (int i = 1; i < 15; ++i) acc += kLanczos[i] / (z + cplx(i - 1, 0));
  const cplx t = z + (kLanczosG - 0.5);
  return kLogSqrt2Pi + (z - 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

cplx log_gamma(cplx z) {
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  if (z.imag() == 0.0 && z.real() == std::floor(z.real()))
    throw std::domain_error("log_gamma pole at non-positive integer");
  // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
  return std::log(cplx{M_PI, 0}) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
}

cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

}  // namespace rankone
