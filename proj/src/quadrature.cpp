#include "rankone/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace rankone {

namespace {

// QUADPACK abscissae/weights. xgk holds the nonnegative Kronrod nodes,
// even indices are the embedded Gauss nodes.
constexpr double kXgk15[8] = {
    .991455371120812639206854697526329, .949107912342758524526189684047851,
    .864864423359769072789712788640926, .741531185599394439863864773280788,
    .586087235467691130294144838258730, .405845151377397166906606412076961,
    .207784955007898467600689403773245, 0.};
constexpr double kWgk15[8] = {
    .022935322010529224963732008058970, .063092092629978553290700663189204,
    .104790010322250183839876322541518, .140653259715525918745189590510238,
    .169004726639267902826583426598550, .190350578064785409913256402421014,
    .204432940075298892414161999234649, .209482141084727828012999174891714};
constexpr double kWg15[4] = {
    .129484966168869693270611432679082, .279705391489276667901467771423780,
    .381830050505118944950369775488975, .417959183673469387755102040816327};

constexpr double kXgk21[11] = {
    .995657163025808080735527280689003, .973906528517171720077964012084452,
    .930157491355708226001207180059508, .865063366688984510732096688423493,
    .780817726586416897063717578345042, .679409568299024406234327365114874,
    .562757134668604683339000099272694, .433395394129247190799265943165784,
    .294392862701460198131126603103866, .148874338981631210884826001129720,
    0.};
constexpr double kWgk21[11] = {
    .011694638867371874278064396062192, .032558162307964727478818972459390,
    .054755896574351996031381300244580, .075039674810919952767043140916190,
    .093125454583697605535065465083366, .109387158802297641899210590325805,
    .123491976262065851077958109831074, .134709217311473325928054001771707,
    .142775938577060080797094273138717, .147739104901338491374841515972068,
    .149445554002916905664936468389821};
constexpr double kWg21[5] = {
    .066671344308688137593568809893332, .149451349150580593145776339657697,
    .219086362515982043995534934228163, .269266719309996355091226921569469,
    .295524224714752870173892994651338};

struct GkRule {
  int half;  // nodes in xgk (nonnegative half)
  const double* xgk;
  const double* wgk;
  const double* wg;
};

GkRule rule_for(int order) {
  if (order == 15) return {8, kXgk15, kWgk15, kWg15};
  if (order == 21) return {11, kXgk21, kWgk21, kWg21};
  throw std::invalid_argument("QuadratureSpec.rule_order must be 15 or 21");
}

[[noreturn]] void throw_eval(double x, cplx v) {
  std::ostringstream os;
  os << "integrand returned non-finite value (" << v.real() << "," << v.imag()
     << ") at x = " << x;
  throw EvalError(os.str());
}

struct Panel {
  double lo, hi;
  cplx value;
  double err;
  double resasc;
  int depth;
};

struct PanelWorse {
  bool operator()(const Panel& a, const Panel& b) const { return a.err < b.err; }
};

class Evaluator {
 public:
  Evaluator(const Integrand1D& f, const GkRule& rule) : f_(f), rule_(rule) {}

  Panel eval(double lo, double hi, int depth) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    cplx resk{0, 0}, resg{0, 0};
    cplx fv[21];
    const int half = rule_.half;
    const int nk = 2 * half - 1;
    for (int i = 0; i < half; ++i) {
      const double xi = rule_.xgk[i];
      if (i == half - 1) {
        fv[half - 1] = call(c);
        break;
      }
      fv[i] = call(c - h * xi);           // left node
      fv[nk - 1 - i] = call(c + h * xi);  // right node
    }
    for (int i = 0; i < half; ++i) {
      cplx s = (i == half - 1) ? fv[half - 1] : fv[i] + fv[nk - 1 - i];
      resk += rule_.wgk[i] * s;
      if (i % 2 == 1) resg += rule_.wg[i / 2] * s;
    }
    // QUADPACK-style error estimate, on complex values via |.|
    const cplx reskh = resk * 0.5;
    double resasc = 0.0;
    for (int i = 0; i < half; ++i) {
      if (i == half - 1) {
        resasc += rule_.wgk[i] * std::abs(fv[half - 1] - reskh);
      } else {
        resasc += rule_.wgk[i] *
                  (std::abs(fv[i] - reskh) + std::abs(fv[nk - 1 - i] - reskh));
      }
    }
    resasc *= h;
    double err = std::abs(resk - resg) * h;
    if (resasc != 0.0 && err != 0.0)
      err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    n_evals += nk;
    return {lo, hi, resk * h, err, resasc, depth};
  }

  long n_evals = 0;

 private:
  cplx call(double x) {
    cplx v = f_(x);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw_eval(x, v);
    return v;
  }

  const Integrand1D& f_;
  const GkRule& rule_;
};

QuadratureResult adapt(const Integrand1D& f, double lo, double hi, bool split_mid,
                       const QuadratureSpec& spec) {
  const GkRule rule = rule_for(spec.rule_order);
  Evaluator ev(f, rule);
  std::vector<Panel> heap;
  const PanelWorse cmp;

  cplx total{0, 0};
  double total_err = 0.0;
  auto push = [&](Panel p) {
    total += p.value;
    total_err += p.err;
    heap.push_back(p);
    std::push_heap(heap.begin(), heap.end(), cmp);
  };

  int n0 = std::max(1, spec.min_panels);
  if (split_mid && n0 % 2) ++n0;  // keep the seam at the midpoint
  for (int i = 0; i < n0; ++i) {
    const double a = lo + (hi - lo) * i / n0;
    const double b = lo + (hi - lo) * (i + 1) / n0;
    push(ev.eval(a, b, 0));
  }

  constexpr long kMaxPanels = 400000;
  bool converged = true;
  while (true) {
    const double tol = std::max(spec.rel_tol * std::abs(total), spec.abs_tol);
    if (total_err <= tol) break;
    const Panel worst = heap.front();
    if (worst.depth >= spec.max_depth ||
        static_cast<long>(heap.size()) >= kMaxPanels) {
      converged = false;
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), cmp);
    heap.pop_back();
    total -= worst.value;
    total_err -= worst.err;
    const double mid = 0.5 * (worst.lo + worst.hi);
    push(ev.eval(worst.lo, mid, worst.depth + 1));
    push(ev.eval(mid, worst.hi, worst.depth + 1));
  }
  // final pass kills the roundoff drift of the running sums
  total = cplx{0, 0};
  total_err = 0.0;
  for (const Panel& p : heap) {
    total += p.value;
    total_err += p.err;
  }
  return {total, total_err, converged, ev.n_evals};
}

// Algebraic compactifications of the real line onto (-1,1).
Integrand1D compactify(const Integrand1D& f, Compactification map) {
  if (map == Compactification::Rational) {
    // x = u/(1-u^2), dx = (1+u^2)/(1-u^2)^2 du
    return [&f](double u) -> cplx {
      const double d = 1.0 - u * u;
      const double x = u / d;
      const double w = (1.0 + u * u) / (d * d);
      return f(x) * w;
    };
  }
  // x = u/(1-|u|), dx = du/(1-|u|)^2
  return [&f](double u) -> cplx {
    const double d = 1.0 - std::abs(u);
    const double x = u / d;
    const double w = 1.0 / (d * d);
    return f(x) * w;
  };
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0)) throw std::invalid_argument("rel_tol must be > 0");
  if (!(abs_tol >= 0)) throw std::invalid_argument("abs_tol must be >= 0");
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  if (min_panels < 1) throw std::invalid_argument("min_panels must be >= 1");
  rule_for(rule_order);
}

QuadratureResult integrate_1d(const Integrand1D& f, const Domain1D& domain,
                              const QuadratureSpec& spec) {
  spec.validate();
  if (std::holds_alternative<Interval>(domain)) {
    const auto iv = std::get<Interval>(domain);
    if (!(iv.lo <= iv.hi)) throw std::invalid_argument("interval with lo > hi");
    if (iv.lo == iv.hi) return {cplx{0, 0}, 0.0, true, 0};
    return adapt(f, iv.lo, iv.hi, false, spec);
  }
  const auto line = std::get<RealLine>(domain);
  Integrand1D g = compactify(f, line.map);
  // seed two panels: the substitution is only piecewise smooth at u=0
  // and the split also localizes the two tails early
  return adapt(g, -1.0, 1.0, true, spec);
}

QuadratureResult integrate_2d(const Integrand2D& f, const Domain2D& domain,
                              const QuadratureSpec& spec) {
  spec.validate();
  QuadratureSpec inner = spec;
  inner.rel_tol = spec.rel_tol * 0.1;
  inner.abs_tol = spec.abs_tol * 0.1;

  double worst_inner = 0.0;
  bool inner_ok = true;

  Domain1D ydom{};
  Domain1D xdom{};
  if (std::holds_alternative<Rect>(domain)) {
    const auto r = std::get<Rect>(domain);
    xdom = Interval{r.x_lo, r.x_hi};
    ydom = Interval{r.y_lo, r.y_hi};
  } else if (std::holds_alternative<Plane>(domain)) {
    xdom = RealLine{};
    ydom = RealLine{};
  } else {
    xdom = RealLine{};
    ydom = Interval{0.0, 1.0};  // replaced below by a half-line map
  }
  const bool half_plane = std::holds_alternative<HalfPlaneDomain>(domain);

  long evals = 0;
  Integrand1D outer = [&](double x) -> cplx {
    Integrand1D slice;
    if (half_plane) {
      // y = v/(1-v), dy = dv/(1-v)^2 over v in (0,1)
      slice = [&f, x](double v) -> cplx {
        const double d = 1.0 - v;
        return f(x, v / d) / (d * d);
      };
    } else {
      slice = [&f, x](double y) -> cplx { return f(x, y); };
    }
    QuadratureResult r = integrate_1d(slice, ydom, inner);
    evals += r.n_evals;
    worst_inner = std::max(worst_inner, r.err_est);
    if (!r.converged) inner_ok = false;
    return r.value;
  };

  QuadratureResult out = integrate_1d(outer, xdom, spec);
  out.n_evals = evals;
  // crude but safe per-axis budget: inner estimates enter through the
  // outer panel sums with total node weight = domain width
  double width = 2.0;
  if (std::holds_alternative<Rect>(domain)) {
    const auto r = std::get<Rect>(domain);
    width = r.x_hi - r.x_lo;
  }
  out.err_est += worst_inner * width;
  out.converged = out.converged && inner_ok;
  return out;
}

cplx integrate_circle(const std::function<cplx(double)>& f, int n_points) {
  if (n_points < 4)
    throw std::invalid_argument("integrate_circle requires n_points >= 4");
  cplx acc{0, 0};
  const double h = 2.0 * M_PI / n_points;
  for (int j = 0; j < n_points; ++j) {
    const double th = h * j;
    cplx v = f(th);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw_eval(th, v);
    acc += v;
  }
  return acc / static_cast<double>(n_points);
}

namespace detail {

void gauss_legendre(int n, double* nodes, double* weights) {
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev initial guess, Newton on P_n
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

}  // namespace detail

cplx integrate_sphere(const std::function<cplx(double, double, double)>& f,
                      int n_polar, int n_azimuth) {
  if (n_polar < 2 || n_azimuth < 4)
    throw std::invalid_argument("integrate_sphere requires n_polar >= 2, n_azimuth >= 4");
  std::vector<double> c(n_polar), w(n_polar);
  detail::gauss_legendre(n_polar, c.data(), w.data());
  cplx acc{0, 0};
  const double haz = 2.0 * M_PI / n_azimuth;
  for (int i = 0; i < n_polar; ++i) {
    const double x3 = c[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - x3 * x3));
    cplx ring{0, 0};
    for (int j = 0; j < n_azimuth; ++j) {
      const double az = haz * j;
      cplx v = f(s * std::cos(az), s * std::sin(az), x3);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw_eval(az, v);
      ring += v;
    }
    acc += w[i] * ring / static_cast<double>(n_azimuth);
  }
  return acc * 0.5;  // GL weights sum to 2; normalized measure has mass 1
}

}  // namespace rankone
