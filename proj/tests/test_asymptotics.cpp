#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rankone/asymptotics.hpp"
#include "rankone/verify.hpp"

using namespace rankone;

namespace {
// plateau window on X lifted to G/M (b-independent)
PhaseSpaceFunction plateau_lift(Model m, double r0, double r1) {
  auto eval = [m, r0, r1](const GroupElement& g) -> cplx {
    const double d = SpacePoint(g).dist(SpacePoint::origin(m));
    if (d >= r1) return {0, 0};
    if (d <= r0) return {1, 0};
    const double s = (d - r0) / (r1 - r0);
    return {std::exp(-s * s / (1 - s * s)), 0};
  };
  return PhaseSpaceFunction{eval, SupportBall{SpacePoint::origin(m), r1}};
}

PhaseSpaceFunction gaussian_lift(Model m, double w, double r1) {
  auto eval = [m, w, r1](const GroupElement& g) -> cplx {
    const double d = SpacePoint(g).dist(SpacePoint::origin(m));
    if (d >= r1) return {0, 0};
    const double s = d / r1;
    return {std::exp(-(d / w) * (d / w)) * std::exp(-s * s / (1 - s * s)), 0};
  };
  return PhaseSpaceFunction{eval, SupportBall{SpacePoint::origin(m), r1}};
}
}  // namespace

TEST_CASE("phase hessian analytic values and fd cross-check") {
  const MspLeading h2 = phase_hessian(Model::H2);
  CHECK(h2.s == 1);
  CHECK(h2.hessian_det == doctest::Approx(2.0));
  CHECK(h2.signature == -1);
  CHECK(std::abs(h2.constant_C -
                 std::polar(1.0 / std::sqrt(2.0), -M_PI / 4)) < 1e-15);
  CHECK(h2.measure_const == doctest::Approx(1.0 / M_PI));

  const MspLeading h3 = phase_hessian(Model::H3);
  CHECK(h3.s == 2);
  CHECK(h3.hessian_det == doctest::Approx(4.0));
  CHECK(h3.signature == -2);
  CHECK(std::abs(h3.constant_C - cplx{0, -0.5}) < 1e-15);

  for (Model m : {Model::H2, Model::H3}) {
    const auto diag = phase_hessian_fd(m, 1e-4);
    for (double d : diag) CHECK(std::abs(d - 2.0) < 1e-6);
    CHECK(std::abs(iwasawa_H(nbar_element(m, 0.0))) == 0.0);
  }
}

TEST_CASE("msp leading: zero amplitude, rejection, scaling") {
  for (Model m : {Model::H2, Model::H3}) {
    const PhaseSpaceFunction f = plateau_lift(m, 0.5, 1.2);
    PhaseSpaceFunction zero{[](const GroupElement&) { return cplx{0, 0}; },
                            f.support};
    const GroupElement e = GroupElement::identity(m);
    CHECK(std::abs(msp_leading(zero, e, SpectralParameter(50), m)) == 0.0);
    CHECK_THROWS_AS(msp_leading(f, e, SpectralParameter(-3), m),
                    std::invalid_argument);
    CHECK_THROWS_AS(msp_leading(f, e, SpectralParameter(0), m),
                    std::invalid_argument);
    const cplx v1 = msp_leading(f, e, SpectralParameter(50), m);
    const cplx v2 = msp_leading(f, e, SpectralParameter(100), m);
    const double s = model_params(m).dim_n;
    CHECK(std::abs(v2 / v1 - std::pow(2.0, -s / 2.0)) < 1e-13);
  }
}

TEST_CASE("l_lambda approaches the msp leading term (H2, lambda = 100)") {
  const Model m = Model::H2;
  const PhaseSpaceFunction f = plateau_lift(m, 0.8, 2.0);
  const GroupElement e = GroupElement::identity(m);
  QuadratureSpec qs;
  qs.rel_tol = 1e-11;
  const SpectralParameter l(100.0);
  const cplx num = l_lambda(f, l, e, qs);
  const cplx den = msp_leading(f, e, l, m);
  CHECK(std::abs(num / den - 1.0) < 0.05);
}

TEST_CASE("rate fit: slope -1 on the log-spaced grid (H2)") {
  const Model m = Model::H2;
  const PhaseSpaceFunction f = gaussian_lift(m, 0.5, 1.5);
  const GroupElement e = GroupElement::identity(m);
  QuadratureSpec qs;
  qs.rel_tol = 1e-11;
  const std::vector<double> grid = {20.0, 28.284271247461902, 40.0,
                                    56.568542494923804, 80.0,
                                    113.13708498984761, 160.0};
  const RateFit fit = msp_rate_fit(f, e, grid, qs);
  CHECK(std::abs(fit.slope + 1.0) < 0.15);
  // deviations decay monotonically beyond lambda = 40
  for (size_t i = 3; i < fit.abs_devs.size(); ++i)
    CHECK(fit.abs_devs[i] < fit.abs_devs[i - 1]);
}

TEST_CASE("rate fit preconditions") {
  const Model m = Model::H2;
  const PhaseSpaceFunction f = plateau_lift(m, 0.5, 1.2);
  const GroupElement e = GroupElement::identity(m);
  CHECK_THROWS_AS(msp_rate_fit(f, e, {20, 40, 80, 160}), std::invalid_argument);
  CHECK_THROWS_AS(msp_rate_fit(f, e, {10, 20, 40, 80, 160}),
                  std::invalid_argument);
  PhaseSpaceFunction zero{[](const GroupElement&) { return cplx{0, 0}; },
                          f.support};
  CHECK_THROWS_AS(msp_rate_fit(zero, e, {20, 30, 40, 60, 80}),
                  std::invalid_argument);
}

TEST_CASE("flat fiber section has a smaller deviation than a curved one") {
  // the k=1 correction involves second transverse derivatives; a plateau
  // that is constant near the critical point beats a sharply curved bump
  const Model m = Model::H2;
  const GroupElement e = GroupElement::identity(m);
  QuadratureSpec qs;
  qs.rel_tol = 1e-11;
  const SpectralParameter l(80.0);
  const PhaseSpaceFunction flat = plateau_lift(m, 1.0, 2.2);
  const PhaseSpaceFunction curved = gaussian_lift(m, 0.35, 1.2);
  const double dev_flat =
      std::abs(l_lambda(flat, l, e, qs) / msp_leading(flat, e, l, m) - 1.0);
  const double dev_curved =
      std::abs(l_lambda(curved, l, e, qs) / msp_leading(curved, e, l, m) - 1.0);
  CHECK(dev_flat < dev_curved);
}

TEST_CASE("oscillatory tail: no critical point in the support means rapid decay") {
  const Model m = Model::H2;
  // support centered at n_2.o misses the fiber's critical point u = 0
  const SpacePoint c(n_element(m, 2.0));
  PhaseSpaceFunction off{
      [m, c](const GroupElement& g) -> cplx {
        const double d = SpacePoint(g).dist(c);
        if (d >= 1.0) return {0, 0};
        return {std::exp(-d * d / (1 - d * d)), 0};
      },
      SupportBall{c, 1.0}};
  // the integral is tiny by cancellation, so only an absolute floor is
  // meaningful here
  QuadratureSpec qs;
  qs.rel_tol = 1e-8;
  qs.abs_tol = 5e-15;
  const GroupElement e = GroupElement::identity(m);
  const double l20 = std::abs(l_lambda(off, SpectralParameter(20), e, qs));
  const double l160 = std::abs(l_lambda(off, SpectralParameter(160), e, qs));
  CHECK(l160 < l20 * std::pow(8.0, -3.0));
}

TEST_CASE("H3 prefactor fit: |L_lambda| decays like lambda^{-s/2} = 1/lambda") {
  const Model m = Model::H3;
  const PhaseSpaceFunction f = gaussian_lift(m, 0.5, 1.4);
  const GroupElement e = GroupElement::identity(m);
  QuadratureSpec qs;
  qs.rel_tol = 1e-8;
  const std::vector<double> grid = {20.0, 28.284271247461902, 40.0,
                                    56.568542494923804, 80.0};
  const RateFit fit = msp_prefactor_fit(f, e, grid, qs);
  CHECK(std::abs(fit.slope + 1.0) < 0.15);
  // and the ratio against the full leading term approaches 1
  const cplx r = l_lambda(f, SpectralParameter(80), e, qs) /
                 msp_leading(f, e, SpectralParameter(80), m);
  CHECK(std::abs(r - 1.0) < 0.1);
}
