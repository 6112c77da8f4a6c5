#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "rankone/rng.hpp"

namespace rankone {

using cplx = std::complex<double>;

// The two instantiated models:
//   H2: G = SL(2,R), K = SO(2),  M = {+-I}
//   H3: G = SL(2,C), K = SU(2),  M = diag(e^{i mu}, e^{-i mu})
enum class Model : int { H2 = 0, H3 = 1 };

const char* model_name(Model m);

// Root data and measure constants in the curvature -1 normalization:
// a_t = exp(t H0) = diag(e^{t/2}, e^{-t/2}), alpha(H0) = 1, so
// rho = m_alpha/2 identifies with 1/2 (H2) resp. 1 (H3) and the Laplace
// eigenvalue of a lambda-plane wave is -(lambda^2 + rho^2).
struct ModelParams {
  int m_alpha;
  int m_2alpha;
  double rho;
  int dim_n;               // s = dim N
  double c0;               // c-function constant
  double n_measure_const;  // dn = const * du so that int e^{-2 rho H(nbar)} dnbar = 1
  double x_measure_const;  // dx = const * (hyperbolic volume); equals n_measure_const
};

const ModelParams& model_params(Model m);

// Row-major 2x2 complex matrix.
struct Mat2 {
  cplx a, b, c, d;

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
            c * o.b + d * o.d};
  }
  cplx det() const { return a * d - b * c; }
  Mat2 inv_unimodular() const { return {d, -b, -c, a}; }       // valid when det = 1
  Mat2 adjoint() const {
    return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
  }
};

// Element of G with det renormalized to 1 after every product. For the
// H2 model the entries are kept real (enforced on construction).
class GroupElement {
 public:
  GroupElement(Model model, const Mat2& m);
  static GroupElement identity(Model model);

  Model model() const { return model_; }
  const Mat2& mat() const { return m_; }

  GroupElement operator*(const GroupElement& o) const;
  GroupElement inverse() const;

  double max_abs_diff(const GroupElement& o) const;

 private:
  GroupElement(Model model, const Mat2& m, bool /*trusted*/)
      : model_(model), m_(m) {}
  Model model_;
  Mat2 m_;
};

// KAN coordinates: g = k * exp(t H0) * n with n = [[1, nu],[0,1]].
struct IwasawaCoords {
  GroupElement k;
  double t;
  cplx nu;

  GroupElement reassemble() const;
};

IwasawaCoords iwasawa_kan(const GroupElement& g);

// Iwasawa projection H(g) identified with the scalar t. Equals
// log |g e1|^2 by the Gram identity g^H g = n^H a^2 n.
double iwasawa_H(const GroupElement& g);

// K-part of g, canonicalized modulo nothing (raw representative).
GroupElement iwasawa_k(const GroupElement& g);

// The nontrivial Weyl representative w = [[0,-1],[1,0]]; w a_t w^{-1} = a_{-t}.
GroupElement weyl_element(Model model);

GroupElement a_element(Model model, double t);
GroupElement n_element(Model model, cplx x);      // upper unipotent
GroupElement nbar_element(Model model, cplx x);   // lower unipotent
GroupElement k_rotation(double psi);              // SO(2), H2 only

// Reproducible pseudo-random g = n_x a_t k with all coordinates uniform
// in [-radius, radius]; radius = 0 gives the identity.
GroupElement random_element(Model model, std::uint64_t seed, double radius);
GroupElement random_element(Model model, Rng& rng, double radius);

// Random element of K (same coordinate convention as random_element).
GroupElement random_k(Model model, Rng& rng, double radius);

}  // namespace rankone
