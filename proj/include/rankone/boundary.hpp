#pragma once

#include <array>

#include "rankone/group.hpp"

namespace rankone {

// Point of B = K/M in the canonical chart:
//   H2: angle theta in [0,2pi), where b = k_{theta/2} M. Under the
//       Cayley map to the disk this is the boundary point e^{-i theta};
//       b_inf = M sits at theta = 0 and b_-inf = wM at theta = pi.
//   H3: unit vector on S^2; b = kM maps to the Mobius image k.infty of
//       the north pole under stereographic projection from the north.
class BoundaryPoint {
 public:
  static BoundaryPoint angle(double theta);                 // H2
  static BoundaryPoint direction(double x1, double x2, double x3);  // H3
  static BoundaryPoint from_k(const GroupElement& k);
  static BoundaryPoint b_infinity(Model m);   // M, forward point of a_t.o
  static BoundaryPoint b_minus_infinity(Model m);  // wM

  Model model() const { return model_; }
  double theta() const;                     // H2 chart
  const std::array<double, 3>& dir() const; // H3 chart

  // representative k_b in K with k_b . b_inf = b
  GroupElement k_rep() const;

  // boundary coordinate in the half-plane / half-space chart:
  // cot(theta/2) for H2, stereographic (x1+ix2)/(1-x3) for H3;
  // infinite at b_inf (second return flag)
  std::pair<cplx, bool> chart_coord() const;

  double chordal_distance(const BoundaryPoint& o) const;

 private:
  BoundaryPoint(Model m) : model_(m) {}
  Model model_;
  double theta_ = 0.0;
  std::array<double, 3> dir_{0.0, 0.0, 1.0};
};

// Point of X = G/K carried as a group representative; chart helpers give
// half-plane coordinates z = x + iy (H2) resp. half-space (x1,x2,y) (H3).
class SpacePoint {
 public:
  explicit SpacePoint(GroupElement rep) : rep_(std::move(rep)) {}
  static SpacePoint origin(Model m) { return SpacePoint(GroupElement::identity(m)); }
  static SpacePoint half_plane(double x, double y);            // H2
  static SpacePoint half_space(double x1, double x2, double y);  // H3

  Model model() const { return rep_.model(); }
  const GroupElement& rep() const { return rep_; }

  // chart coordinates: H2 -> (x, y, 0); H3 -> (x1, x2, y)
  std::array<double, 3> coords() const;

  double dist(const SpacePoint& o) const;  // hyperbolic distance
 private:
  GroupElement rep_;
};

// Point of SX = G/M; equality is M-coset equality via a canonical
// representative (first column rotated to make its leading entry real
// positive).
class PhaseSpacePoint {
 public:
  explicit PhaseSpacePoint(GroupElement rep) : rep_(std::move(rep)) {}

  const GroupElement& rep() const { return rep_; }
  GroupElement canonical_rep() const;
  SpacePoint base() const { return SpacePoint(rep_); }
  BoundaryPoint forward() const;  // g.M in B

  bool approx_equal(const PhaseSpacePoint& o, double tol = 1e-9) const;

 private:
  GroupElement rep_;
};

// g . kM = k(g k) M
BoundaryPoint boundary_action(const GroupElement& g, const BoundaryPoint& b);

// horocycle bracket <x, b> = -H(g^{-1} k_b) for x = gK
double horocycle_bracket(const SpacePoint& x, const BoundaryPoint& b);

// Frame g with g.M = b, g.wM = b'; H(g), H(gw) cached for the
// intermediate values. Unique modulo MA.
struct GeodesicFrame {
  GroupElement g;
  double h_g;    // H(g)
  double h_gw;   // H(gw)
};

inline constexpr double kDiagonalTol = 1e-10;

GeodesicFrame geodesic_frame(const BoundaryPoint& b, const BoundaryPoint& b_prime);

// |gamma'(b)| of the disk-model Mobius action (H2 only); satisfies
// |gamma'(b)| = e^{-2 rho <gamma.o, gamma.b>}.
double mobius_derivative(const GroupElement& gamma, const BoundaryPoint& b);

// disk chart helpers (oracle support; the bracket itself never routes
// through a chart)
cplx cayley_to_disk(const SpacePoint& z);      // H2
cplx disk_boundary_point(const BoundaryPoint& b);  // e^{-i theta}

}  // namespace rankone
