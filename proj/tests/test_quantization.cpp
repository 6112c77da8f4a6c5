#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "rankone/patterson_sullivan.hpp"
#include "rankone/verify.hpp"

using namespace rankone;

namespace {
BoundaryPoint rand_b(Model m, Rng& rng) {
  if (m == Model::H2) return BoundaryPoint::angle(rng.uniform(0, 2 * M_PI));
  const double c = rng.uniform(-1, 1);
  const double az = rng.uniform(0, 2 * M_PI);
  const double s = std::sqrt(1 - c * c);
  return BoundaryPoint::direction(s * std::cos(az), s * std::sin(az), c);
}

SpacePoint rand_z(Model m, Rng& rng) {
  if (m == Model::H2)
    return SpacePoint::half_plane(rng.uniform(-1.0, 1.0), rng.uniform(0.5, 2.0));
  return SpacePoint::half_space(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                                rng.uniform(0.5, 2.0));
}
}  // namespace

TEST_CASE("symbol property: Op on a delta multiplies the plane wave") {
  for (Model m : {Model::H2, Model::H3}) {
    Rng rng(2);
    const Symbol a = make_symbol(SymbolSpec{}, m);
    const BoundaryPoint b0 = rand_b(m, rng);
    BoundaryDistribution T;
    T.atoms.emplace_back(cplx{1, 0}, b0);
    const SpectralParameter l(3.1);
    auto op_phi = op_apply_eigen(a, l, T, m);
    for (int i = 0; i < 100; ++i) {
      const SpacePoint z = rand_z(m, rng);
      const cplx expect = a(z, l.lambda, b0) * plane_wave(z, l, b0);
      CHECK(std::abs(op_phi(z) - expect) < 1e-13);
    }
  }
}

TEST_CASE("unit symbol acts as the identity on its support") {
  const Model m = Model::H2;
  Rng rng(3);
  Symbol one{[](const SpacePoint&, double, const BoundaryPoint&) {
               return cplx{1, 0};
             },
             SupportBall{SpacePoint::half_plane(0, 1), 2.0}, -1};
  BoundaryDistribution T;
  T.atoms.emplace_back(cplx{0.7, 0.1}, BoundaryPoint::angle(0.4));
  T.atoms.emplace_back(cplx{-0.3, 0.0}, BoundaryPoint::angle(2.8));
  const SpectralParameter l(1.9);
  auto op_phi = op_apply_eigen(one, l, T, m);
  const Eigenfunction phi = poisson_transform(T, l, m);
  for (int i = 0; i < 50; ++i) {
    SpacePoint z = rand_z(m, rng);
    while (!one.z_support.contains(z)) z = rand_z(m, rng);
    CHECK(std::abs(op_phi(z) - phi(z)) < 1e-13);
  }
}

TEST_CASE("op is linear in the boundary data") {
  const Model m = Model::H2;
  Rng rng(5);
  const Symbol a = make_symbol(SymbolSpec{}, m);
  const SpectralParameter l(2.2);
  BoundaryDistribution T1, T2, T12;
  T1.atoms.emplace_back(cplx{0.9, -0.2}, BoundaryPoint::angle(0.5));
  T2.atoms.emplace_back(cplx{-0.4, 0.7}, BoundaryPoint::angle(3.0));
  T12.atoms = {T1.atoms[0], T2.atoms[0]};
  auto op1 = op_apply_eigen(a, l, T1, m);
  auto op2 = op_apply_eigen(a, l, T2, m);
  auto op12 = op_apply_eigen(a, l, T12, m);
  for (int i = 0; i < 50; ++i) {
    const SpacePoint z = rand_z(m, rng);
    CHECK(std::abs(op12(z) - op1(z) - op2(z)) < 1e-12);
  }
}

TEST_CASE("wigner of the zero symbol vanishes") {
  const Model m = Model::H2;
  Symbol zero = make_symbol(SymbolSpec{}, m);
  zero.eval = [](const SpacePoint&, double, const BoundaryPoint&) {
    return cplx{0, 0};
  };
  const Cutoff chi = make_cutoff(CutoffSpec{}, SymbolSpec{}, m);
  BoundaryDistribution T1, T2;
  T1.atoms.emplace_back(cplx{1, 0}, BoundaryPoint::angle(0.5));
  T2.atoms.emplace_back(cplx{1, 0}, BoundaryPoint::angle(3.0));
  const cplx w = wigner_bilinear(zero, SpectralParameter(1.0), T1,
                                 SpectralParameter(2.0), T2, chi, m);
  CHECK(std::abs(w) < 1e-12);
}

TEST_CASE("wigner on single atoms equals the unfolded integral") {
  const Model m = Model::H2;
  const Symbol a = make_symbol(SymbolSpec{}, m);
  const Cutoff chi = make_cutoff(CutoffSpec{}, SymbolSpec{}, m);
  const BoundaryPoint b1 = BoundaryPoint::angle(0.7);
  const BoundaryPoint b2 = BoundaryPoint::angle(3.9);
  BoundaryDistribution T1, T2;
  T1.atoms.emplace_back(cplx{1, 0}, b1);
  T2.atoms.emplace_back(cplx{1, 0}, b2);
  const SpectralParameter lj(2.0), lk(3.0);
  QuadratureSpec qs;
  qs.rel_tol = 1e-9;
  const cplx w = wigner_bilinear(a, lj, T1, lk, T2, chi, m, qs);

  // unfolded: direct 2D quadrature of chi a(z,b1) e^{...b1} e^{...b2}
  const auto& ball = a.z_support;
  const auto c = ball.center.coords();
  const double R = ball.radius;
  const double xr = c[1] * std::sinh(R);
  const double rho = model_params(m).rho;
  auto f = [&](double x, double y) -> cplx {
    const SpacePoint z = SpacePoint::half_plane(x, y);
    const double br1 = horocycle_bracket(z, b1);
    const double br2 = horocycle_bracket(z, b2);
    return chi(z) * a(z, lj.lambda, b1) *
           std::exp(cplx{rho * (br1 + br2), lj.lambda * br1 + lk.lambda * br2}) /
           (y * y);
  };
  auto r = integrate_2d(
      f, Rect{c[0] - xr, c[0] + xr, c[1] * std::exp(-R), c[1] * std::exp(R)}, qs);
  const cplx direct = r.value * model_params(m).x_measure_const;
  CHECK(std::abs(w - direct) <= 1e-8 * std::abs(direct));
}

TEST_CASE("wigner is bilinear in the boundary data") {
  const Model m = Model::H2;
  const Symbol a = make_symbol(SymbolSpec{}, m);
  const Cutoff chi = make_cutoff(CutoffSpec{}, SymbolSpec{}, m);
  BoundaryDistribution Tj1, Tj2, Tj12, Tk;
  Tj1.atoms.emplace_back(cplx{0.8, 0.1}, BoundaryPoint::angle(0.4));
  Tj2.atoms.emplace_back(cplx{-0.5, 0.3}, BoundaryPoint::angle(1.6));
  Tj12.atoms = {Tj1.atoms[0], Tj2.atoms[0]};
  Tk.atoms.emplace_back(cplx{1.0, 0}, BoundaryPoint::angle(3.7));
  const SpectralParameter lj(1.5), lk(2.5);
  QuadratureSpec qs;
  qs.rel_tol = 1e-9;
  const cplx w12 = wigner_bilinear(a, lj, Tj12, lk, Tk, chi, m, qs);
  const cplx w1 = wigner_bilinear(a, lj, Tj1, lk, Tk, chi, m, qs);
  const cplx w2 = wigner_bilinear(a, lj, Tj2, lk, Tk, chi, m, qs);
  CHECK(std::abs(w12 - w1 - w2) <= 1e-7 * (std::abs(w1) + std::abs(w2)));
}

TEST_CASE("wigner unchanged when the cutoff is enlarged beyond the symbol") {
  const Model m = Model::H2;
  SymbolSpec sspec;
  sspec.width = 0.4;  // support radius 1.2
  const Symbol a = make_symbol(sspec, m);
  CutoffSpec c1, c2;
  c1.plateau = 1.4;
  c1.radius = 2.0;
  c2.plateau = 1.8;
  c2.radius = 3.2;
  const Cutoff chi1 = make_cutoff(c1, sspec, m);
  const Cutoff chi2 = make_cutoff(c2, sspec, m);
  BoundaryDistribution T1, T2;
  T1.atoms.emplace_back(cplx{1, 0}, BoundaryPoint::angle(0.9));
  T2.atoms.emplace_back(cplx{1, 0}, BoundaryPoint::angle(4.2));
  const SpectralParameter lj(2.0), lk(5.0);
  QuadratureSpec qs;
  qs.rel_tol = 1e-9;
  const cplx w1 = wigner_bilinear(a, lj, T1, lk, T2, chi1, m, qs);
  const cplx w2 = wigner_bilinear(a, lj, T1, lk, T2, chi2, m, qs);
  CHECK(std::abs(w1 - w2) <= 1e-7 * std::abs(w1));
}

TEST_CASE("flagship cross-check: wigner equals the PS pairing at (2,3)") {
  const Model m = Model::H2;
  const Symbol a = make_symbol(SymbolSpec{}, m);
  const Cutoff chi = make_cutoff(CutoffSpec{}, SymbolSpec{}, m);
  BoundaryDistribution Tj, Tk;
  Tj.atoms.emplace_back(cplx{1.0, 0}, BoundaryPoint::angle(0.7));
  Tj.atoms.emplace_back(cplx{-0.6, 0}, BoundaryPoint::angle(2.1));
  Tk.atoms.emplace_back(cplx{0.8, 0}, BoundaryPoint::angle(3.9));
  Tk.atoms.emplace_back(cplx{0.5, 0}, BoundaryPoint::angle(5.3));
  const SpectralParameter lj(2.0), lk(3.0);
  QuadratureSpec qs;
  qs.rel_tol = 1e-9;
  const cplx lhs = wigner_bilinear(a, lj, Tj, lk, Tk, chi, m, qs);
  const PhaseSpaceFunction f = lift_symbol(a, chi, lj.lambda);
  QuadratureSpec ls = qs;
  ls.rel_tol = 1e-10;
  const PhaseSpaceFunction Lf = l_lambda_function(f, lk, ls);
  const cplx rhs = ps_pairing(Lf, lj, Tj, lk, Tk, qs);
  CHECK(std::abs(lhs - rhs) <= 1e-6 * std::abs(rhs));
}

TEST_CASE("wigner rejects unbounded supports") {
  const Model m = Model::H2;
  Symbol a = make_symbol(SymbolSpec{}, m);
  a.z_support.radius = std::numeric_limits<double>::infinity();
  const Cutoff chi = make_cutoff(CutoffSpec{}, SymbolSpec{}, m);
  BoundaryDistribution T1, T2;
  T1.atoms.emplace_back(cplx{1, 0}, BoundaryPoint::angle(0.5));
  T2.atoms.emplace_back(cplx{1, 0}, BoundaryPoint::angle(3.0));
  CHECK_THROWS_AS(wigner_bilinear(a, SpectralParameter(1), T1,
                                  SpectralParameter(2), T2, chi, m),
                  std::invalid_argument);
}
