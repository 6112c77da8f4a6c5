#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>

namespace rankone {

using cplx = std::complex<double>;

// Deterministic adaptive integration used by every transform in the
// library. The engine is a Gauss-Kronrod panel scheme (7-15 or 10-21
// pairs) with a worst-panel-first refinement queue. Real-line domains
// are mapped to (-1,1) by an algebraic substitution: the integrands we
// meet (Iwasawa weights like (1+x^2)^{-(i*lambda+rho)}) have algebraic
// tails, which an exponential map would undersample.
struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  int max_depth = 30;    // panel subdivision cap
  int rule_order = 15;   // points per panel: 15 or 21
  int min_panels = 8;    // initial uniform panels; guards against narrow
                         // support slivers slipping between the nodes of
                         // a single panel and faking convergence

  void validate() const;
};

struct QuadratureResult {
  cplx value{0.0, 0.0};
  double err_est = 0.0;
  bool converged = true;
  long n_evals = 0;
};

// Thrown when an integrand produces NaN/Inf; names the evaluation point.
class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by higher-level transforms when a sub-integral did not converge.
class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

struct Interval {
  double lo, hi;
};

enum class Compactification {
  Rational,     // x = u/(1-u^2)
  AbsRational,  // x = u/(1-|u|)
};

struct RealLine {
  Compactification map = Compactification::Rational;
};

using Domain1D = std::variant<Interval, RealLine>;

using Integrand1D = std::function<cplx(double)>;
using Integrand2D = std::function<cplx(double, double)>;

QuadratureResult integrate_1d(const Integrand1D& f, const Domain1D& domain,
                              const QuadratureSpec& spec = {});

struct Rect {
  double x_lo, x_hi, y_lo, y_hi;
};
struct Plane {};              // R^2
struct HalfPlaneDomain {};    // x in R, y in (0, inf)

using Domain2D = std::variant<Rect, Plane, HalfPlaneDomain>;

// Iterated 1D integration (outer x, inner y) with per-axis error
// budgeting: the inner pass runs at a tenth of the requested tolerance
// and its worst error estimate is folded into the reported estimate.
QuadratureResult integrate_2d(const Integrand2D& f, const Domain2D& domain,
                              const QuadratureSpec& spec = {});

// Trapezoidal rule on [0,2pi) against the *normalized* measure
// dtheta/(2pi) (total mass 1), spectrally accurate for smooth periodic
// integrands. Rejects n_points < 4.
cplx integrate_circle(const std::function<cplx(double)>& f, int n_points);

// Product rule on S^2 against the normalized round measure (total mass
// 1): Gauss-Legendre in cos(polar) x trapezoid in azimuth.
cplx integrate_sphere(const std::function<cplx(double, double, double)>& f,
                      int n_polar, int n_azimuth);

namespace detail {
// Gauss-Legendre nodes/weights on [-1,1], Newton on the recurrence.
void gauss_legendre(int n, double* nodes, double* weights);
}  // namespace detail

}  // namespace rankone
