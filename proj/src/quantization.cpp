#include "rankone/quantization.hpp"

#include <cmath>

namespace rankone {

std::function<cplx(const SpacePoint&)> op_apply_eigen(
    const Symbol& a, SpectralParameter lambda, const BoundaryDistribution& T,
    Model model, int boundary_points) {
  T.validate(model);
  return [a, lambda, T, model, boundary_points](const SpacePoint& z) -> cplx {
    cplx acc{0, 0};
    for (const auto& [w, b] : T.atoms)
      acc += w * a(z, lambda.lambda, b) * plane_wave(z, lambda, b);
    if (T.density) {
      if (model == Model::H2) {
        acc += integrate_circle(
            [&](double th) {
              const BoundaryPoint b = BoundaryPoint::angle(th);
              return T.density(b) * a(z, lambda.lambda, b) *
                     plane_wave(z, lambda, b);
            },
            boundary_points);
      } else {
        acc += integrate_sphere(
            [&](double x1, double x2, double x3) {
              const BoundaryPoint b = BoundaryPoint::direction(x1, x2, x3);
              return T.density(b) * a(z, lambda.lambda, b) *
                     plane_wave(z, lambda, b);
            },
            boundary_points / 2, boundary_points);
      }
    }
    return acc;
  };
}

cplx wigner_bilinear(const Symbol& a, SpectralParameter lambda_j,
                     const BoundaryDistribution& T_j, SpectralParameter lambda_k,
                     const BoundaryDistribution& T_k, const Cutoff& chi,
                     Model model, const QuadratureSpec& spec) {
  T_j.validate(model);
  T_k.validate(model);
  if (!(chi.support.radius > 0) || !std::isfinite(chi.support.radius) ||
      !std::isfinite(a.z_support.radius))
    throw std::invalid_argument("wigner_bilinear needs bounded supports");

  const ModelParams& mp = model_params(model);
  auto op_phi_j = op_apply_eigen(a, lambda_j, T_j, model);
  const Eigenfunction phi_k = poisson_transform(T_k, lambda_k, model);

  // integrate over the smaller of the two support balls
  const SupportBall dom_ball =
      a.z_support.origin_bound() < chi.support.origin_bound() ? a.z_support
                                                              : chi.support;
  const auto c = dom_ball.center.coords();
  const double R = dom_ball.radius;

  if (model == Model::H2) {
    const double xr = c[1] * std::sinh(R);
    Rect dom{c[0] - xr, c[0] + xr, c[1] * std::exp(-R), c[1] * std::exp(R)};
    auto f = [&](double x, double y) -> cplx {
      const SpacePoint z = SpacePoint::half_plane(x, y);
      if (!dom_ball.contains(z)) return {0, 0};
      const double w = chi(z);
      if (w == 0.0) return {0, 0};
      return w * op_phi_j(z) * phi_k(z) / (y * y);
    };
    QuadratureResult r = integrate_2d(f, dom, spec);
    if (!r.converged)
      throw QuadratureError("wigner_bilinear: 2d quadrature did not converge");
    return r.value * mp.x_measure_const;
  }

  // H3: outer y, inner (x1,x2)
  const double xr = c[2] * std::sinh(R);
  QuadratureSpec inner = spec;
  inner.rel_tol *= 0.1;
  inner.abs_tol *= 0.1;
  bool inner_ok = true;
  auto fy = [&](double y) -> cplx {
    auto fxx = [&](double x1, double x2) -> cplx {
      const SpacePoint z = SpacePoint::half_space(x1, x2, y);
      if (!dom_ball.contains(z)) return {0, 0};
      const double w = chi(z);
      if (w == 0.0) return {0, 0};
      return w * op_phi_j(z) * phi_k(z);
    };
    Rect dom{c[0] - xr, c[0] + xr, c[1] - xr, c[1] + xr};
    QuadratureResult r = integrate_2d(fxx, dom, inner);
    if (!r.converged) inner_ok = false;
    return r.value / (y * y * y);
  };
  QuadratureResult r = integrate_1d(
      fy, Interval{c[2] * std::exp(-R), c[2] * std::exp(R)}, spec);
  if (!r.converged || !inner_ok)
    throw QuadratureError("wigner_bilinear: 3d quadrature did not converge");
  return r.value * mp.x_measure_const;
}

}  // namespace rankone
