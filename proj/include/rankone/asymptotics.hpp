#pragma once

#include <vector>

#include "rankone/patterson_sullivan.hpp"

namespace rankone {

// Leading-order stationary phase data for the N-fiber integral behind
// L_lambda. The phase psi(nbar) = <H(nbar), H0> = log(1 + |u|^2) has its
// unique critical point at the identity; the oscillation enters as
// e^{-i lambda psi}, so the effective phase Hessian is -psi''(e) and the
// leading constant is C = |det psi''|^{-1/2} e^{-i pi s / 4}.
struct MspLeading {
  double hessian_det;   // det of psi''(e): 2 (H2), 4 (H3)
  int signature;        // signature of the effective phase -psi: -s
  cplx constant_C;
  int s;                // dim N
  double measure_const; // dn chart constant (1/pi)
};

// Analytic Hessian data; the finite-difference cross-check lives in
// phase_hessian_fd.
MspLeading phase_hessian(Model model);

// Second differences of psi(u) = iwasawa_H(nbar_u) at e; returns the
// (diagonal) Hessian entries.
std::vector<double> phase_hessian_fd(Model model, double step);

// Leading MSP value C (2 pi / lambda)^{s/2} * measure_const * f(g);
// rejects lambda <= 0.
cplx msp_leading(const PhaseSpaceFunction& f, const GroupElement& g,
                 SpectralParameter lambda, Model model);

// Least-squares slope of log |l_lambda/msp_leading - 1| against
// log lambda over the grid; the k=1 correction of the MSP expansion
// predicts slope -1. Requires >= 5 grid points, lambda >= 20, and
// |f(g)| > 1e-8.
struct RateFit {
  double slope;
  std::vector<double> lambdas;
  std::vector<cplx> ratios;      // l_lambda / msp_leading
  std::vector<double> abs_devs;  // |ratio - 1|
};

RateFit msp_rate_fit(const PhaseSpaceFunction& f, const GroupElement& g,
                     const std::vector<double>& lambda_grid,
                     const QuadratureSpec& spec = {});

// Least-squares slope of log|l_lambda| itself; the prefactor
// (2 pi/lambda)^{s/2} makes this -s/2.
RateFit msp_prefactor_fit(const PhaseSpaceFunction& f, const GroupElement& g,
                          const std::vector<double>& lambda_grid,
                          const QuadratureSpec& spec = {});

}  // namespace rankone
