#include "rankone/boundary.hpp"

#include <cmath>
#include <sstream>

namespace rankone {

namespace {

double wrap_2pi(double t) {
  t = std::fmod(t, 2.0 * M_PI);
  if (t < 0) t += 2.0 * M_PI;
  return t;
}

// quaternion z + w j with z, w complex; multiplication uses j z = conj(z) j
struct Quat {
  cplx z, w;
  Quat operator*(const Quat& o) const {
    return {z * o.z - w * std::conj(o.w), z * o.w + w * std::conj(o.z)};
  }
  Quat inv() const {
    const double n = std::norm(z) + std::norm(w);
    return {std::conj(z) / n, -w / n};
  }
};

}  // namespace

BoundaryPoint BoundaryPoint::angle(double theta) {
  BoundaryPoint b(Model::H2);
  b.theta_ = wrap_2pi(theta);
  return b;
}

BoundaryPoint BoundaryPoint::direction(double x1, double x2, double x3) {
  BoundaryPoint b(Model::H3);
  const double n = std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
  if (!(n > 0) || !std::isfinite(n))
    throw std::invalid_argument("boundary direction must be a nonzero vector");
  b.dir_ = {x1 / n, x2 / n, x3 / n};
  return b;
}

BoundaryPoint BoundaryPoint::from_k(const GroupElement& k) {
  const Mat2& m = k.mat();
  if (k.model() == Model::H2) {
    const double psi = std::atan2(m.c.real(), m.a.real());
    return angle(2.0 * psi);
  }
  const cplx ab = m.a * std::conj(m.c);
  return direction(2.0 * ab.real(), 2.0 * ab.imag(),
                   std::norm(m.a) - std::norm(m.c));
}

BoundaryPoint BoundaryPoint::b_infinity(Model m) {
  return m == Model::H2 ? angle(0.0) : direction(0, 0, 1);
}

BoundaryPoint BoundaryPoint::b_minus_infinity(Model m) {
  return m == Model::H2 ? angle(M_PI) : direction(0, 0, -1);
}

double BoundaryPoint::theta() const {
  if (model_ != Model::H2) throw std::logic_error("theta() is an H2 chart");
  return theta_;
}

const std::array<double, 3>& BoundaryPoint::dir() const {
  if (model_ != Model::H3) throw std::logic_error("dir() is an H3 chart");
  return dir_;
}

GroupElement BoundaryPoint::k_rep() const {
  if (model_ == Model::H2) return k_rotation(0.5 * theta_);
  const double x3 = dir_[2];
  if (x3 < -1.0 + 1e-14) return weyl_element(Model::H3);
  const double al = std::sqrt(0.5 * (1.0 + x3));
  const cplx beta = cplx{dir_[0], -dir_[1]} / (2.0 * al);
  return GroupElement(Model::H3, Mat2{al, -std::conj(beta), beta, al});
}

std::pair<cplx, bool> BoundaryPoint::chart_coord() const {
  if (model_ == Model::H2) {
    const double s = std::sin(0.5 * theta_);
    if (std::abs(s) < 1e-154) return {cplx{0, 0}, false};
    return {cplx{std::cos(0.5 * theta_) / s, 0.0}, true};
  }
  const double d = 1.0 - dir_[2];
  if (d < 1e-154) return {cplx{0, 0}, false};
  return {cplx{dir_[0] / d, dir_[1] / d}, true};
}

double BoundaryPoint::chordal_distance(const BoundaryPoint& o) const {
  if (model_ != o.model_) throw std::invalid_argument("mixed-model boundary points");
  if (model_ == Model::H2) return 2.0 * std::abs(std::sin(0.5 * (theta_ - o.theta_)));
  const double dx = dir_[0] - o.dir_[0];
  const double dy = dir_[1] - o.dir_[1];
  const double dz = dir_[2] - o.dir_[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

SpacePoint SpacePoint::half_plane(double x, double y) {
  if (!(y > 0)) throw std::invalid_argument("half-plane point needs y > 0");
  const double r = std::sqrt(y);
  return SpacePoint(GroupElement(Model::H2, Mat2{r, x / r, 0, 1.0 / r}));
}

SpacePoint SpacePoint::half_space(double x1, double x2, double y) {
  if (!(y > 0)) throw std::invalid_argument("half-space point needs y > 0");
  const double r = std::sqrt(y);
  return SpacePoint(
      GroupElement(Model::H3, Mat2{r, cplx{x1, x2} / r, 0, 1.0 / r}));
}

std::array<double, 3> SpacePoint::coords() const {
  const Mat2& m = rep_.mat();
  if (model() == Model::H2) {
    const cplx z = (m.a * cplx{0, 1} + m.b) / (m.c * cplx{0, 1} + m.d);
    return {z.real(), z.imag(), 0.0};
  }
  // g . j via quaternions: (a j + b)(c j + d)^{-1}
  const Quat num{m.b, m.a};
  const Quat den{m.d, m.c};
  const Quat p = num * den.inv();
  // w-part of an upper half-space point is real positive
  return {p.z.real(), p.z.imag(), p.w.real()};
}

double SpacePoint::dist(const SpacePoint& o) const {
  if (model() != o.model()) throw std::invalid_argument("mixed-model space points");
  const auto u = coords();
  const auto v = o.coords();
  if (model() == Model::H2) {
    const double dx = u[0] - v[0], dy = u[1] - v[1];
    return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * u[1] * v[1]));
  }
  const double d1 = u[0] - v[0], d2 = u[1] - v[1], d3 = u[2] - v[2];
  return std::acosh(1.0 + (d1 * d1 + d2 * d2 + d3 * d3) / (2.0 * u[2] * v[2]));
}

GroupElement PhaseSpacePoint::canonical_rep() const {
  const Mat2& m = rep_.mat();
  if (rep_.model() == Model::H2) {
    // M = {+-I}; fix the sign of the first entry above tolerance
    const cplx* entries[4] = {&m.a, &m.c, &m.b, &m.d};
    for (const cplx* e : entries) {
      if (std::abs(*e) > 1e-12) {
        if (e->real() < 0 || (e->real() == 0 && e->imag() < 0))
          return GroupElement(rep_.model(),
                              Mat2{-m.a, -m.b, -m.c, -m.d});
        return rep_;
      }
    }
    return rep_;
  }
  // M = diag(e^{i mu}, e^{-i mu}): rotate the first column real positive
  const cplx lead = std::abs(m.a) > 1e-12 ? m.a : m.c;
  const cplx phase = std::polar(1.0, -std::arg(lead));
  return GroupElement(rep_.model(), Mat2{m.a * phase, m.b / phase,
                                         m.c * phase, m.d / phase});
}

BoundaryPoint PhaseSpacePoint::forward() const {
  return BoundaryPoint::from_k(iwasawa_k(rep_));
}

bool PhaseSpacePoint::approx_equal(const PhaseSpacePoint& o, double tol) const {
  return canonical_rep().max_abs_diff(o.canonical_rep()) <= tol;
}

BoundaryPoint boundary_action(const GroupElement& g, const BoundaryPoint& b) {
  return BoundaryPoint::from_k(iwasawa_k(g * b.k_rep()));
}

double horocycle_bracket(const SpacePoint& x, const BoundaryPoint& b) {
  return -iwasawa_H(x.rep().inverse() * b.k_rep());
}

GeodesicFrame geodesic_frame(const BoundaryPoint& b, const BoundaryPoint& b_prime) {
  if (b.chordal_distance(b_prime) < kDiagonalTol) {
    std::ostringstream os;
    os << "geodesic_frame: boundary points coincide (chordal distance "
       << b.chordal_distance(b_prime) << ")";
    throw std::domain_error(os.str());
  }
  const Model m = b.model();
  // k . b = b_inf, then p = n_{-u} . (k . b') = b_-inf, g = (pk)^{-1}
  const GroupElement k = b.k_rep().inverse();
  const BoundaryPoint b2 = boundary_action(k, b_prime);
  const auto [u, fin] = b2.chart_coord();
  if (!fin)
    throw std::domain_error("geodesic_frame: transformed endpoint at infinity");
  const GroupElement g = k.inverse() * n_element(m, u);
  const GroupElement w = weyl_element(m);
  return GeodesicFrame{g, iwasawa_H(g), iwasawa_H(g * w)};
}

double mobius_derivative(const GroupElement& gamma, const BoundaryPoint& b) {
  if (gamma.model() != Model::H2)
    throw std::invalid_argument("mobius_derivative supports the H2 model only");
  // conjugate to SU(1,1) by the Cayley map C(z) = (z-i)/(z+i)
  const Mat2& m = gamma.mat();
  const cplx i{0, 1};
  // T = C gamma C^{-1} with C = [[1,-i],[1,i]], C^{-1} = [[i,i],[-1,1]]/(2i)
  const cplx t21 = (m.a - m.d + i * (m.b + m.c)) * 0.5;
  const cplx t22 = (m.a + m.d + i * (m.c - m.b)) * 0.5;
  const cplx wb = disk_boundary_point(b);
  const cplx den = t21 * wb + t22;
  return 1.0 / std::norm(den);
}

cplx cayley_to_disk(const SpacePoint& z) {
  const auto c = z.coords();
  const cplx zz{c[0], c[1]};
  return (zz - cplx{0, 1}) / (zz + cplx{0, 1});
}

cplx disk_boundary_point(const BoundaryPoint& b) {
  return std::polar(1.0, -b.theta());
}

}  // namespace rankone
