#include "rankone/transforms.hpp"

#include <cmath>
#include <sstream>

#include "rankone/special.hpp"

namespace rankone {

void BoundaryDistribution::validate(Model m) const {
  if (atoms.empty() && !density)
    throw std::invalid_argument(
        "boundary distribution needs at least one atom or a density");
  for (const auto& [w, b] : atoms)
    if (b.model() != m)
      throw std::invalid_argument("boundary atom from the wrong model");
  for (size_t i = 0; i < atoms.size(); ++i)
    for (size_t j = i + 1; j < atoms.size(); ++j)
      if (atoms[i].second.chordal_distance(atoms[j].second) <= kAtomGapTol) {
        std::ostringstream os;
        os << "boundary atoms " << i << " and " << j
           << " coincide (chordal gap below " << kAtomGapTol << ")";
        throw std::invalid_argument(os.str());
      }
}

cplx plane_wave(const SpacePoint& z, SpectralParameter lambda,
                const BoundaryPoint& b) {
  const double rho = model_params(z.model()).rho;
  const double br = horocycle_bracket(z, b);
  return std::exp(cplx{rho * br, lambda.lambda * br});
}

Eigenfunction::Eigenfunction(Model model, SpectralParameter lambda,
                             BoundaryDistribution T, int boundary_points)
    : model_(model), lambda_(lambda), T_(std::move(T)), nb_(boundary_points) {
  T_.validate(model_);
}

cplx Eigenfunction::operator()(const SpacePoint& z) const {
  cplx acc{0, 0};
  for (const auto& [w, b] : T_.atoms) acc += w * plane_wave(z, lambda_, b);
  if (T_.density) {
    if (model_ == Model::H2) {
      acc += integrate_circle(
          [&](double th) {
            const BoundaryPoint b = BoundaryPoint::angle(th);
            return T_.density(b) * plane_wave(z, lambda_, b);
          },
          nb_);
    } else {
      acc += integrate_sphere(
          [&](double x1, double x2, double x3) {
            const BoundaryPoint b = BoundaryPoint::direction(x1, x2, x3);
            return T_.density(b) * plane_wave(z, lambda_, b);
          },
          nb_ / 2, nb_);
    }
  }
  return acc;
}

Eigenfunction poisson_transform(const BoundaryDistribution& T,
                                SpectralParameter lambda, Model model) {
  return Eigenfunction(model, lambda, T);
}

namespace {

void require_converged(const QuadratureResult& r, const char* what) {
  if (!r.converged) {
    std::ostringstream os;
    os << what << ": quadrature did not converge (err_est = " << r.err_est
       << ")";
    throw QuadratureError(os.str());
  }
}

}  // namespace

cplx helgason_fourier(const std::function<cplx(const SpacePoint&)>& u,
                      const SupportBall& support, SpectralParameter lambda,
                      const BoundaryPoint& b, const QuadratureSpec& spec) {
  const Model m = support.center.model();
  const ModelParams& mp = model_params(m);
  const auto c = support.center.coords();
  const double R = support.radius;

  if (m == Model::H2) {
    const double xr = c[1] * std::sinh(R);
    Rect dom{c[0] - xr, c[0] + xr, c[1] * std::exp(-R), c[1] * std::exp(R)};
    auto f = [&](double x, double y) -> cplx {
      const SpacePoint z = SpacePoint::half_plane(x, y);
      if (!support.contains(z)) return {0, 0};
      const double br = horocycle_bracket(z, b);
      return u(z) * std::exp(cplx{mp.rho * br, -lambda.lambda * br}) / (y * y);
    };
    QuadratureResult r = integrate_2d(f, dom, spec);
    require_converged(r, "helgason_fourier");
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
      if (!support.contains(z)) return {0, 0};
      const double br = horocycle_bracket(z, b);
      return u(z) * std::exp(cplx{mp.rho * br, -lambda.lambda * br});
    };
    Rect dom{c[0] - xr, c[0] + xr, c[1] - xr, c[1] + xr};
    QuadratureResult r = integrate_2d(fxx, dom, inner);
    if (!r.converged) inner_ok = false;
    return r.value / (y * y * y);
  };
  QuadratureResult r = integrate_1d(
      fy, Interval{c[2] * std::exp(-R), c[2] * std::exp(R)}, spec);
  if (!inner_ok) r.converged = false;
  require_converged(r, "helgason_fourier");
  return r.value * mp.x_measure_const;
}

cplx c_function(SpectralParameter lambda, Model model) {
  if (lambda.lambda == 0.0)
    throw std::domain_error("c_function pole at lambda = 0");
  const ModelParams& mp = model_params(model);
  const cplx il{0.0, lambda.lambda};
  const cplx g1 = log_gamma(il);
  const cplx g2 = log_gamma(0.25 * mp.m_alpha + 0.5 + 0.5 * il);
  const cplx g3 = log_gamma(0.25 * mp.m_alpha + 0.5 * mp.m_2alpha + 0.5 * il);
  return mp.c0 * std::exp(-il * std::log(2.0) + g1 - g2 - g3);
}

double plancherel_weight(SpectralParameter lambda, Model model) {
  if (lambda.lambda == 0.0) return 0.0;  // |c|^{-2} extends by 0 at the pole
  const cplx c = c_function(lambda, model);
  return 1.0 / std::norm(c);
}

std::function<cplx(const BoundaryPoint&)> principal_series_apply(
    const GroupElement& g, SpectralParameter lambda,
    std::function<cplx(const BoundaryPoint&)> f) {
  const GroupElement ginv = g.inverse();
  const double rho = model_params(g.model()).rho;
  const double l = lambda.lambda;
  return [ginv, rho, l, f = std::move(f)](const BoundaryPoint& b) -> cplx {
    const GroupElement gk = ginv * b.k_rep();
    const IwasawaCoords kan = iwasawa_kan(gk);
    const double H = kan.t;
    return f(BoundaryPoint::from_k(kan.k)) * std::exp(cplx{-rho * H, -l * H});
  };
}

double boundary_l2_norm(Model model,
                        const std::function<cplx(const BoundaryPoint&)>& f,
                        int n_points) {
  cplx v;
  if (model == Model::H2) {
    v = integrate_circle(
        [&](double th) { return cplx{std::norm(f(BoundaryPoint::angle(th))), 0}; },
        n_points);
  } else {
    v = integrate_sphere(
        [&](double x1, double x2, double x3) {
          return cplx{std::norm(f(BoundaryPoint::direction(x1, x2, x3))), 0};
        },
        n_points / 2, n_points);
  }
  return std::sqrt(v.real());
}

cplx laplacian_fd(const std::function<cplx(const SpacePoint&)>& phi,
                  const SpacePoint& z, double h) {
  if (!(h > 0)) throw std::invalid_argument("laplacian_fd needs h > 0");
  const auto c = z.coords();
  if (z.model() == Model::H2) {
    const double x = c[0], y = c[1];
    const cplx f0 = phi(z);
    const cplx fxp = phi(SpacePoint::half_plane(x + h, y));
    const cplx fxm = phi(SpacePoint::half_plane(x - h, y));
    const cplx fyp = phi(SpacePoint::half_plane(x, y + h));
    const cplx fym = phi(SpacePoint::half_plane(x, y - h));
    return y * y * (fxp + fxm + fyp + fym - 4.0 * f0) / (h * h);
  }
  const double x1 = c[0], x2 = c[1], y = c[2];
  const cplx f0 = phi(z);
  const cplx f1p = phi(SpacePoint::half_space(x1 + h, x2, y));
  const cplx f1m = phi(SpacePoint::half_space(x1 - h, x2, y));
  const cplx f2p = phi(SpacePoint::half_space(x1, x2 + h, y));
  const cplx f2m = phi(SpacePoint::half_space(x1, x2 - h, y));
  const cplx fyp = phi(SpacePoint::half_space(x1, x2, y + h));
  const cplx fym = phi(SpacePoint::half_space(x1, x2, y - h));
  const cplx lap_eucl = (f1p + f1m + f2p + f2m + fyp + fym - 6.0 * f0) / (h * h);
  const cplx dy = (fyp - fym) / (2.0 * h);
  return y * y * lap_eucl - y * dy;
}

cplx fourier_invert(const std::vector<std::vector<cplx>>& table,
                    const SpacePoint& z, const FourierInversionGrid& grid) {
  if (z.model() != Model::H2)
    throw std::invalid_argument("fourier_invert is implemented for H2");
  if (static_cast<int>(table.size()) != grid.n_lambda)
    throw std::invalid_argument("fourier_invert: table/grid mismatch");
  const double rho = model_params(Model::H2).rho;
  // cache brackets per boundary node
  std::vector<double> brs(grid.n_boundary);
  for (int j = 0; j < grid.n_boundary; ++j)
    brs[j] = horocycle_bracket(z, grid.boundary_node(j));

  const double dl = 2.0 * grid.lambda_max / (grid.n_lambda - 1);
  cplx acc{0, 0};
  for (int i = 0; i < grid.n_lambda; ++i) {
    const double l = grid.lambda_node(i);
    const double wl = plancherel_weight(SpectralParameter(l), Model::H2);
    const double trap = (i == 0 || i == grid.n_lambda - 1) ? 0.5 : 1.0;
    cplx ring{0, 0};
    for (int j = 0; j < grid.n_boundary; ++j)
      ring += table[i][j] * std::exp(cplx{rho * brs[j], l * brs[j]});
    acc += trap * wl * ring / static_cast<double>(grid.n_boundary);
  }
  // |W| = 2: u = (1/(4 pi)) int over the full lambda line
  return acc * dl / (4.0 * M_PI);
}

}  // namespace rankone
