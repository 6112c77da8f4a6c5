#pragma once

#include "rankone/transforms.hpp"

namespace rankone {

// Zero-order symbol a(z, lambda, b), compactly supported in z. Symbols
// used by the verification suites come from the built-in family in
// verify.hpp; lambda-independent principal parts are the common case.
struct Symbol {
  std::function<cplx(const SpacePoint&, double, const BoundaryPoint&)> eval;
  SupportBall z_support;
  int smooth_order = -1;  // -1: C^infinity

  cplx operator()(const SpacePoint& z, double lambda,
                  const BoundaryPoint& b) const {
    if (!z_support.contains(z)) return {0, 0};
    return eval(z, lambda, b);
  }
};

// Compactly supported window chi: X -> [0,1]. Stands in for the smooth
// fundamental-domain cutoffs of the cocompact theory; no Gamma-sums
// happen here.
struct Cutoff {
  std::function<double(const SpacePoint&)> eval;
  SupportBall support;

  double operator()(const SpacePoint& z) const {
    if (!support.contains(z)) return 0.0;
    return eval(z);
  }
};

// Op(a) on an eigenfunction with boundary data T:
//   Op(a) phi(z) = int_B a(z,b) e^{(i lambda + rho)<z,b>} T(db).
// Atom part is an exact finite sum; densities go through the boundary
// quadrature.
std::function<cplx(const SpacePoint&)> op_apply_eigen(
    const Symbol& a, SpectralParameter lambda, const BoundaryDistribution& T,
    Model model, int boundary_points = 256);

// Wigner matrix element
//   W = int_X chi(z) (Op(a) phi_j)(z) phi_k(z) dz
// with phi_i = P_{lambda_i}(T_i), dz the model's normalized volume.
// Bilinear in (T_j, T_k): the pairing follows the real-eigenfunction
// convention and does NOT conjugate the second factor.
cplx wigner_bilinear(const Symbol& a, SpectralParameter lambda_j,
                     const BoundaryDistribution& T_j, SpectralParameter lambda_k,
                     const BoundaryDistribution& T_k, const Cutoff& chi,
                     Model model, const QuadratureSpec& spec = {});

}  // namespace rankone
