#include "rankone/asymptotics.hpp"

#include <cmath>

namespace rankone {

MspLeading phase_hessian(Model model) {
  const ModelParams& mp = model_params(model);
  const int s = mp.dim_n;
  // psi(u) = log(1 + |u|^2): Hessian at 0 is 2*I_s
  const double det = std::pow(2.0, s);
  const cplx C = std::polar(1.0 / std::sqrt(det), -0.25 * M_PI * s);
  return MspLeading{det, -s, C, s, mp.n_measure_const};
}

std::vector<double> phase_hessian_fd(Model model, double step) {
  if (!(step > 0)) throw std::invalid_argument("phase_hessian_fd needs step > 0");
  auto psi = [model](cplx u) { return iwasawa_H(nbar_element(model, u)); };
  std::vector<double> diag;
  const double p0 = psi(cplx{0, 0});
  diag.push_back((psi(cplx{step, 0}) - 2 * p0 + psi(cplx{-step, 0})) /
                 (step * step));
  if (model == Model::H3)
    diag.push_back((psi(cplx{0, step}) - 2 * p0 + psi(cplx{0, -step})) /
                   (step * step));
  return diag;
}

cplx msp_leading(const PhaseSpaceFunction& f, const GroupElement& g,
                 SpectralParameter lambda, Model model) {
  if (!(lambda.lambda > 0))
    throw std::invalid_argument("msp_leading needs lambda > 0");
  const MspLeading lead = phase_hessian(model);
  const double pref = std::pow(2.0 * M_PI / lambda.lambda, 0.5 * lead.s);
  return lead.constant_C * pref * lead.measure_const * f(g);
}

namespace {

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void check_grid(const PhaseSpaceFunction& f, const GroupElement& g,
                const std::vector<double>& grid) {
  if (grid.size() < 5)
    throw std::invalid_argument("rate fit needs a grid of >= 5 lambda values");
  for (double l : grid)
    if (!(l >= 20.0))
      throw std::invalid_argument("rate fit needs lambda >= 20");
  if (std::abs(f(g)) < 1e-8)
    throw std::invalid_argument("rate fit is ill-conditioned: |f(g)| < 1e-8");
}

}  // namespace

RateFit msp_rate_fit(const PhaseSpaceFunction& f, const GroupElement& g,
                     const std::vector<double>& lambda_grid,
                     const QuadratureSpec& spec) {
  check_grid(f, g, lambda_grid);
  const Model model = g.model();
  RateFit fit;
  std::vector<double> lx, ly;
  for (double l : lambda_grid) {
    const SpectralParameter sl(l);
    const cplx num = l_lambda(f, sl, g, spec);
    const cplx den = msp_leading(f, g, sl, model);
    const cplx ratio = num / den;
    fit.lambdas.push_back(l);
    fit.ratios.push_back(ratio);
    fit.abs_devs.push_back(std::abs(ratio - 1.0));
    lx.push_back(std::log(l));
    ly.push_back(std::log(std::abs(ratio - 1.0)));
  }
  fit.slope = ls_slope(lx, ly);
  return fit;
}

RateFit msp_prefactor_fit(const PhaseSpaceFunction& f, const GroupElement& g,
                          const std::vector<double>& lambda_grid,
                          const QuadratureSpec& spec) {
  check_grid(f, g, lambda_grid);
  RateFit fit;
  std::vector<double> lx, ly;
  for (double l : lambda_grid) {
    const SpectralParameter sl(l);
    const cplx num = l_lambda(f, sl, g, spec);
    fit.lambdas.push_back(l);
    fit.ratios.push_back(num);
    fit.abs_devs.push_back(std::abs(num));
    lx.push_back(std::log(l));
    ly.push_back(std::log(std::abs(num)));
  }
  fit.slope = ls_slope(lx, ly);
  return fit;
}

}  // namespace rankone
