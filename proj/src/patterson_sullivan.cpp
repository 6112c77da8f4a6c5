#include "rankone/patterson_sullivan.hpp"

#include <cmath>

namespace rankone {

PhaseSpaceFunction lift_symbol(const Symbol& a, const Cutoff& chi,
                               double lambda) {
  // the tighter ball is enough: the lift vanishes outside both
  const SupportBall ball =
      a.z_support.origin_bound() < chi.support.origin_bound() ? a.z_support
                                                              : chi.support;
  auto eval = [a, chi, lambda](const GroupElement& g) -> cplx {
    const SpacePoint z(g);
    const double w = chi(z);
    if (w == 0.0) return {0, 0};
    return w * a(z, lambda, PhaseSpacePoint(g).forward());
  };
  return PhaseSpaceFunction{std::move(eval), ball};
}

cplx d_lambda(const GroupElement& g, SpectralParameter lambda) {
  const double rho = model_params(g.model()).rho;
  const double s = iwasawa_H(g) + iwasawa_H(g * weyl_element(g.model()));
  return std::exp(cplx{rho * s, lambda.lambda * s});
}

cplx d_lambda(const GeodesicFrame& frame, SpectralParameter lambda) {
  const double rho = model_params(frame.g.model()).rho;
  const double s = frame.h_g + frame.h_gw;
  return std::exp(cplx{rho * s, lambda.lambda * s});
}

cplx d_lambda_mu(const GroupElement& g, SpectralParameter lambda,
                 SpectralParameter mu) {
  const double rho = model_params(g.model()).rho;
  const double h1 = iwasawa_H(g);
  const double h2 = iwasawa_H(g * weyl_element(g.model()));
  return std::exp(cplx{rho * (h1 + h2), lambda.lambda * h1 + mu.lambda * h2});
}

namespace {

// t-range with f(g a_t) possibly nonzero: |H(g) + t| <= origin bound
Interval a_truncation(const PhaseSpaceFunction& f, const GroupElement& g) {
  const double D = f.support.origin_bound() + 1e-6;
  const double hg = iwasawa_H(g);
  return {-hg - D, -hg + D};
}

void require_converged(const QuadratureResult& r, const char* what) {
  if (!r.converged) throw QuadratureError(std::string(what) + ": quadrature did not converge");
}

}  // namespace

cplx radon(const PhaseSpaceFunction& f, const BoundaryPoint& b,
           const BoundaryPoint& b_prime, const QuadratureSpec& spec) {
  const GeodesicFrame fr = geodesic_frame(b, b_prime);
  const Interval dom = a_truncation(f, fr.g);
  const Model m = fr.g.model();
  QuadratureResult r = integrate_1d(
      [&](double t) { return f(fr.g * a_element(m, t)); }, dom, spec);
  require_converged(r, "radon");
  return r.value;
}

cplx weighted_radon(const PhaseSpaceFunction& f, SpectralParameter lambda,
                    SpectralParameter mu, const BoundaryPoint& b,
                    const BoundaryPoint& b_prime, const QuadratureSpec& spec) {
  const GeodesicFrame fr = geodesic_frame(b, b_prime);
  const Interval dom = a_truncation(f, fr.g);
  const Model m = fr.g.model();
  QuadratureResult r = integrate_1d(
      [&](double t) {
        const GroupElement ga = fr.g * a_element(m, t);
        return d_lambda_mu(ga, lambda, mu) * f(ga);
      },
      dom, spec);
  require_converged(r, "weighted_radon");
  return r.value;
}

cplx l_lambda(const PhaseSpaceFunction& f, SpectralParameter lambda,
              const GroupElement& g, const QuadratureSpec& spec) {
  const Model m = g.model();
  const ModelParams& mp = model_params(m);
  // u-range: d(o, n_u.o) <= radius + d(o, g^{-1} center)
  const SpacePoint pulled(g.inverse() * f.support.center.rep());
  const double D =
      f.support.radius + pulled.dist(SpacePoint::origin(m)) + 1e-6;
  const double U = 2.0 * std::sinh(0.5 * D);
  const cplx expo{-mp.rho, -lambda.lambda};

  if (m == Model::H2) {
    QuadratureResult r = integrate_1d(
        [&](double u) {
          return std::exp(expo * std::log1p(u * u)) * f(g * n_element(m, u));
        },
        Interval{-U, U}, spec);
    require_converged(r, "l_lambda");
    return r.value * mp.n_measure_const;
  }
  QuadratureResult r = integrate_2d(
      [&](double u1, double u2) {
        return std::exp(expo * std::log1p(u1 * u1 + u2 * u2)) *
               f(g * n_element(m, cplx{u1, u2}));
      },
      Rect{-U, U, -U, U}, spec);
  require_converged(r, "l_lambda");
  return r.value * mp.n_measure_const;
}

PhaseSpaceFunction l_lambda_function(const PhaseSpaceFunction& f,
                                     SpectralParameter lambda,
                                     const QuadratureSpec& spec) {
  auto eval = [f, lambda, spec](const GroupElement& g) -> cplx {
    return l_lambda(f, lambda, g, spec);
  };
  return PhaseSpaceFunction{std::move(eval), f.support};
}

cplx ps_pairing(const PhaseSpaceFunction& f, SpectralParameter lambda_j,
                const BoundaryDistribution& T_j, SpectralParameter lambda_k,
                const BoundaryDistribution& T_k, const QuadratureSpec& spec) {
  if (!T_j.atomic_only() || !T_k.atomic_only())
    throw std::invalid_argument("ps_pairing expects atomic boundary data");
  for (const auto& [cj, bj] : T_j.atoms)
    for (const auto& [ck, bk] : T_k.atoms)
      if (bj.chordal_distance(bk) < kDiagonalTol)
        throw std::domain_error("ps_pairing: atom pair on the diagonal of BxB");

  cplx acc{0, 0};
  for (const auto& [cj, bj] : T_j.atoms)
    for (const auto& [ck, bk] : T_k.atoms)
      acc += cj * ck * weighted_radon(f, lambda_j, lambda_k, bj, bk, spec);
  return acc;
}

}  // namespace rankone
