#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rankone/boundary.hpp"
#include "rankone/quadrature.hpp"

namespace rankone {

// Rank-one spectral parameter, identified with a real number via
// lambda -> lambda(H0). The eigenvalue map is lambda^2 + rho^2.
struct SpectralParameter {
  double lambda;

  explicit SpectralParameter(double l) : lambda(l) {
    if (!std::isfinite(l))
      throw std::invalid_argument("spectral parameter must be finite");
  }
  double eigenvalue(Model m) const {
    const double rho = model_params(m).rho;
    return lambda * lambda + rho * rho;
  }
};

// Finite atomic measure plus optional smooth density on B = K/M.
struct BoundaryDistribution {
  std::vector<std::pair<cplx, BoundaryPoint>> atoms;
  std::function<cplx(const BoundaryPoint&)> density;  // against db (mass 1)

  void validate(Model m) const;
  bool atomic_only() const { return !density; }
};

inline constexpr double kAtomGapTol = 1e-8;

// e_{lambda,b}(z) = e^{(i lambda + rho) <z,b>}
cplx plane_wave(const SpacePoint& z, SpectralParameter lambda,
                const BoundaryPoint& b);

// Eigenfunction P_lambda(T): atoms as finite sums, density by circle /
// sphere quadrature.
class Eigenfunction {
 public:
  Eigenfunction(Model model, SpectralParameter lambda, BoundaryDistribution T,
                int boundary_points = 256);

  Model model() const { return model_; }
  double lambda() const { return lambda_.lambda; }
  const BoundaryDistribution& boundary_data() const { return T_; }

  cplx operator()(const SpacePoint& z) const;

 private:
  Model model_;
  SpectralParameter lambda_;
  BoundaryDistribution T_;
  int nb_;
};

Eigenfunction poisson_transform(const BoundaryDistribution& T,
                                SpectralParameter lambda, Model model);

// Compact support descriptor in chart coordinates: hyperbolic ball.
struct SupportBall {
  SpacePoint center;
  double radius;

  bool contains(const SpacePoint& z, double slack = 0.0) const {
    return center.dist(z) <= radius + slack;
  }
  // max distance from the origin over the ball
  double origin_bound() const {
    return center.dist(SpacePoint::origin(center.model())) + radius;
  }
};

// Helgason Fourier transform u~(lambda,b) = int_X u(x) e^{(-i lambda +
// rho)<x,b>} dx over the declared support, with the model's dx
// normalization. H2 integrates the half-plane chart, H3 the half-space
// chart (inner 2D in (x1,x2), outer 1D in y).
cplx helgason_fourier(const std::function<cplx(const SpacePoint&)>& u,
                      const SupportBall& support, SpectralParameter lambda,
                      const BoundaryPoint& b, const QuadratureSpec& spec = {});

// Harish-Chandra c-function in the Gamma-quotient form, with
// <i lambda, alpha_0> identified with i lambda. Pole at lambda = 0.
cplx c_function(SpectralParameter lambda, Model model);

// Plancherel weight |c(lambda)|^{-2}; closed forms: pi lambda
// tanh(pi lambda) for H2, lambda^2 for H3 (used as oracle in tests, the
// implementation goes through log_gamma).
double plancherel_weight(SpectralParameter lambda, Model model);

// Compact-picture principal series (pi_lambda(g) f)(kM) =
// f(k(g^{-1}k)M) e^{-(i lambda + rho) H(g^{-1} k)}.
std::function<cplx(const BoundaryPoint&)> principal_series_apply(
    const GroupElement& g, SpectralParameter lambda,
    std::function<cplx(const BoundaryPoint&)> f);

// L^2(K/M) norm by spectral boundary quadrature.
double boundary_l2_norm(Model model,
                        const std::function<cplx(const BoundaryPoint&)>& f,
                        int n_points = 256);

// Central-difference hyperbolic Laplacian, O(h^2):
//   H2: y^2 (f_xx + f_yy)
//   H3: y^2 (f_x1x1 + f_x2x2 + f_yy) - y f_y
cplx laplacian_fd(const std::function<cplx(const SpacePoint&)>& phi,
                  const SpacePoint& z, double h);

// Inversion u(z) = (2 pi |W|)^{-1} int_{|lambda|<=Lambda} int_B
// e^{(i lambda + rho)<z,b>} u~(lambda,b) |c|^{-2} db dlambda on a
// trapezoid lambda-grid and spectral boundary grid (H2). The
// truncation Lambda = 30 / 121 lambda points are the documented
// defaults; the composition is the loosest link in the library and is
// certified at the 5% level only.
struct FourierInversionGrid {
  double lambda_max = 30.0;
  int n_lambda = 121;
  int n_boundary = 64;

  double lambda_node(int i) const {
    return -lambda_max + 2.0 * lambda_max * i / (n_lambda - 1);
  }
  BoundaryPoint boundary_node(int j) const {
    return BoundaryPoint::angle(2.0 * M_PI * j / n_boundary);
  }
};

// table[i][j] = u~(lambda_i, b_j) on the grid nodes above
cplx fourier_invert(const std::vector<std::vector<cplx>>& table,
                    const SpacePoint& z, const FourierInversionGrid& grid);

}  // namespace rankone
