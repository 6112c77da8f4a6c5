#pragma once

#include "rankone/quantization.hpp"

namespace rankone {

// Compactly supported function on SX = G/M, queried through a group
// representative (M-invariance is the caller's contract, spot-checked in
// tests). The support ball bounds the base-point projection z = g.o and
// drives the quadrature truncations: f(g) != 0 implies
// |H(g)| = |<g.o, g.M>| <= origin_bound() by the horocycle-bracket bound
// |<x,b>| <= d(o,x).
struct PhaseSpaceFunction {
  std::function<cplx(const GroupElement&)> eval;
  SupportBall support;

  cplx operator()(const GroupElement& g) const { return eval(g); }
};

// lift of a windowed symbol to G/M: g -> chi(g.o) a(g.o, lambda, g.M)
PhaseSpaceFunction lift_symbol(const Symbol& a, const Cutoff& chi,
                               double lambda);

// Intermediate value d_lambda(gMA) = e^{(i lambda + rho)(H(g) + H(gw))};
// MA-invariant.
cplx d_lambda(const GroupElement& g, SpectralParameter lambda);
cplx d_lambda(const GeodesicFrame& frame, SpectralParameter lambda);

// Off-diagonal weight d_{lambda,mu}(g) = e^{(i lambda + rho)H(g)}
// e^{(i mu + rho)H(gw)}. Not A-invariant: satisfies the defect law
// d_{lambda,mu}(g a_t m) = d_{lambda,mu}(g) e^{i(lambda-mu)t} exactly.
cplx d_lambda_mu(const GroupElement& g, SpectralParameter lambda,
                 SpectralParameter mu);

// Radon transform R f(b,b') = int_A f(g(b,b') a_t M) dt.
cplx radon(const PhaseSpaceFunction& f, const BoundaryPoint& b,
           const BoundaryPoint& b_prime, const QuadratureSpec& spec = {});

// Weighted Radon transform (R_{lambda,mu} f)(b,b') =
// int_A d_{lambda,mu}(g a) f(g a) da; independent of the frame
// representative (the d-defect cancels the A-shift), and equal to
// d_lambda(b,b') (R f)(b,b') on the diagonal lambda = mu.
cplx weighted_radon(const PhaseSpaceFunction& f, SpectralParameter lambda,
                    SpectralParameter mu, const BoundaryPoint& b,
                    const BoundaryPoint& b_prime,
                    const QuadratureSpec& spec = {});

// L_lambda f(g) = int_N e^{-(i lambda + rho) H(n w)} f(g n) dn. In chart
// coordinates H(n_u w) = log(1 + |u|^2) and dn = du/pi (H2) resp.
// d^2u/pi (H3).
cplx l_lambda(const PhaseSpaceFunction& f, SpectralParameter lambda,
              const GroupElement& g, const QuadratureSpec& spec = {});

// L_lambda as a phase-space function (the N-integral runs on demand);
// inherits the support descriptor of f, which keeps the |H(g)| bound
// needed by the Radon truncations valid.
PhaseSpaceFunction l_lambda_function(const PhaseSpaceFunction& f,
                                     SpectralParameter lambda,
                                     const QuadratureSpec& spec = {});

// Patterson-Sullivan pairing for atomic boundary data:
//   PS = sum_{i,l} c_i c'_l (R_{lambda_j,lambda_k} f)(b_i, b'_l).
// Every atom pair must be off-diagonal. The diagonal case
// PS_{lambda,lambda} is PS_lambda.
cplx ps_pairing(const PhaseSpaceFunction& f, SpectralParameter lambda_j,
                const BoundaryDistribution& T_j, SpectralParameter lambda_k,
                const BoundaryDistribution& T_k,
                const QuadratureSpec& spec = {});

}  // namespace rankone
