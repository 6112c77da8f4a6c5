#include "rankone/group.hpp"

#include <cmath>
#include <sstream>

namespace rankone {

namespace {
constexpr double kDetTol = 1e-9;
constexpr double kRealTol = 1e-11;

bool finite(const Mat2& m) {
  auto ok = [](cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  };
  return ok(m.a) && ok(m.b) && ok(m.c) && ok(m.d);
}
}  // namespace

const char* model_name(Model m) { return m == Model::H2 ? "h2" : "h3"; }

const ModelParams& model_params(Model m) {
  static const ModelParams h2{1, 0, 0.5, 1, M_SQRT2, 1.0 / M_PI, 1.0 / M_PI};
  // c0 = 2^{m_alpha/2 + m_2alpha} Gamma((m_alpha + m_2alpha + 1)/2) = 2 Gamma(3/2)
  static const ModelParams h3{2, 0, 1.0, 2, std::sqrt(M_PI), 1.0 / M_PI,
                              1.0 / M_PI};
  return m == Model::H2 ? h2 : h3;
}

GroupElement::GroupElement(Model model, const Mat2& m) : model_(model), m_(m) {
  if (!finite(m)) throw std::invalid_argument("group element has non-finite entries");
  const cplx det = m.det();
  if (std::abs(det - cplx{1, 0}) > kDetTol) {
    std::ostringstream os;
    os << "matrix is not unimodular: det = (" << det.real() << "," << det.imag()
       << ")";
    throw std::invalid_argument(os.str());
  }
  if (model == Model::H2) {
    const double im = std::abs(m.a.imag()) + std::abs(m.b.imag()) +
                      std::abs(m.c.imag()) + std::abs(m.d.imag());
    if (im > kRealTol)
      throw std::invalid_argument("H2 group element must have real entries");
    m_ = {m.a.real(), m.b.real(), m.c.real(), m.d.real()};
  }
  // renormalize det to 1 exactly-ish
  const cplx s = std::sqrt(m_.det());
  m_ = {m_.a / s, m_.b / s, m_.c / s, m_.d / s};
}

GroupElement GroupElement::identity(Model model) {
  return GroupElement(model, Mat2{1, 0, 0, 1}, true);
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  Mat2 p = m_ * o.m_;
  const cplx s = std::sqrt(p.det());
  p = {p.a / s, p.b / s, p.c / s, p.d / s};
  return GroupElement(model_, p, true);
}

GroupElement GroupElement::inverse() const {
  return GroupElement(model_, m_.inv_unimodular(), true);
}

double GroupElement::max_abs_diff(const GroupElement& o) const {
  return std::max(std::max(std::abs(m_.a - o.m_.a), std::abs(m_.b - o.m_.b)),
                  std::max(std::abs(m_.c - o.m_.c), std::abs(m_.d - o.m_.d)));
}

GroupElement IwasawaCoords::reassemble() const {
  return k * a_element(k.model(), t) * n_element(k.model(), nu);
}

IwasawaCoords iwasawa_kan(const GroupElement& g) {
  const Mat2& m = g.mat();
  // Gram identity: (g^H g)_{11} = e^t, first column of k = g e1 / e^{t/2}
  const double et = std::norm(m.a) + std::norm(m.c);
  const double t = std::log(et);
  const double r = std::sqrt(et);
  const cplx alpha = m.a / r;
  const cplx beta = m.c / r;
  GroupElement k(g.model(),
                 Mat2{alpha, -std::conj(beta), beta, std::conj(alpha)});
  // n = a^{-1} k^H g; upper-triangular by construction, read off n12
  const cplx n12 = (std::conj(alpha) * m.b + std::conj(beta) * m.d) / r;
  return IwasawaCoords{k, t, n12};
}

double iwasawa_H(const GroupElement& g) {
  const Mat2& m = g.mat();
  return std::log(std::norm(m.a) + std::norm(m.c));
}

GroupElement iwasawa_k(const GroupElement& g) { return iwasawa_kan(g).k; }

GroupElement weyl_element(Model model) {
  return GroupElement(model, Mat2{0, -1, 1, 0});
}

GroupElement a_element(Model model, double t) {
  const double e = std::exp(0.5 * t);
  return GroupElement(model, Mat2{e, 0, 0, 1.0 / e});
}

GroupElement n_element(Model model, cplx x) {
  if (model == Model::H2 && std::abs(x.imag()) > kRealTol)
    throw std::invalid_argument("H2 N-coordinate must be real");
  return GroupElement(model, Mat2{1, x, 0, 1});
}

GroupElement nbar_element(Model model, cplx x) {
  if (model == Model::H2 && std::abs(x.imag()) > kRealTol)
    throw std::invalid_argument("H2 N-coordinate must be real");
  return GroupElement(model, Mat2{1, 0, x, 1});
}

GroupElement k_rotation(double psi) {
  const double c = std::cos(psi), s = std::sin(psi);
  return GroupElement(Model::H2, Mat2{c, -s, s, c});
}

namespace {
// SU(2) from Euler-style angles: z-rotation, y-rotation, z-rotation
GroupElement su2(double p1, double p2, double p3) {
  const cplx e1 = std::polar(1.0, p1), e3 = std::polar(1.0, p3);
  const double c = std::cos(p2), s = std::sin(p2);
  Mat2 m{e1 * c * e3, -e1 * s / e3, s / e1 * e3, c / (e1 * e3)};
  return GroupElement(Model::H3, m);
}
}  // namespace

GroupElement random_k(Model model, Rng& rng, double radius) {
  if (model == Model::H2) return k_rotation(rng.uniform(-radius, radius));
  const double p1 = rng.uniform(-radius, radius);
  const double p2 = rng.uniform(-radius, radius);
  const double p3 = rng.uniform(-radius, radius);
  return su2(p1, p2, p3);
}

GroupElement random_element(Model model, Rng& rng, double radius) {
  if (radius < 0) throw std::invalid_argument("radius must be >= 0");
  cplx x;
  if (model == Model::H2) {
    x = rng.uniform(-radius, radius);
  } else {
    x = cplx{rng.uniform(-radius, radius), rng.uniform(-radius, radius)};
  }
  const double t = rng.uniform(-radius, radius);
  GroupElement k = random_k(model, rng, radius);
  return n_element(model, x) * a_element(model, t) * k;
}

GroupElement random_element(Model model, std::uint64_t seed, double radius) {
  Rng rng(seed);
  return random_element(model, rng, radius);
}

}  // namespace rankone
