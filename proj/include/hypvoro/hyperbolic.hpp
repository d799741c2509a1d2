#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "hypvoro/errors.hpp"

namespace hypvoro {

using cplx = std::complex<double>;

// Largest hyperbolic radius handled anywhere. Keeps 1-|z| of Poincare
// coordinates at ~1e-11 or more, preserving predicate headroom.
inline constexpr double kRadCap = 25.0;
// Circumdisk-in-disk containment margin; ties resolve to "not contained".
inline constexpr double kContainEps = 1e-12;
// Triples whose Euclidean triangle area is below this are degenerate.
inline constexpr double kDegenerateArea = 1e-16;
// Hard cap on center radius + disk radius for explicit disks, keeping the
// Euclidean parameterization representably inside the unit circle.
inline constexpr double kDiskReachCap = 35.0;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Point of the hyperbolic plane. Polar coordinates (rad_h, theta) are
// authoritative; the Poincare coordinates (re, im) are carried for planar
// predicates and satisfy re + i*im = tanh(rad_h/2) * exp(i*theta).
struct HPoint {
  double rad_h = 0.0;
  double theta = 0.0;
  double re = 0.0;
  double im = 0.0;

  cplx z() const { return {re, im}; }

  static HPoint origin() { return HPoint{}; }
  static HPoint polar(double rad_h, double theta);
  static HPoint poincare(double re, double im);
  static HPoint poincare(cplx z) { return poincare(z.real(), z.imag()); }
};

// acosh(1 + y) evaluated stably for small y.
inline double acosh1p(double y) {
  return std::log1p(y + std::sqrt(y * (y + 2.0)));
}

double dist_h(const HPoint& p, const HPoint& q);

// Area of the hyperbolic ball of radius r: 2*pi*(cosh r - 1).
double ball_area(double r);

double radius_h_to_e(double r);
double radius_e_to_h(double e);

// Geodesic through two points: an arc of a Euclidean circle orthogonal to the
// unit circle, or a diameter when the points are collinear with the origin.
struct Geodesic {
  HPoint a, b;
  bool diameter = false;
  cplx center{0.0, 0.0};  // arc circle center (unused when diameter)
  double radius = 0.0;    // arc circle radius (unused when diameter)

  static Geodesic through(const HPoint& a, const HPoint& b);
};

// Hyperbolic disk, carried in both parameterizations. Hyperbolic circles are
// Euclidean circles, with distinct centers.
struct HDisk {
  HPoint center_h;
  double radius_h = 0.0;
  cplx center_e{0.0, 0.0};
  double radius_e = 0.0;
};

HDisk make_hdisk(const HPoint& center, double radius_h);

// Hyperbolic circumdisk of a triple: present iff the Euclidean circumcircle of
// the Poincare coordinates lies inside the open unit disk with margin
// kContainEps. Collinear triples yield nothing.
std::optional<HDisk> circumdisk(const HPoint& a, const HPoint& b, const HPoint& c);

// Strict Euclidean interior test against the disk's Euclidean parameters.
inline bool disk_contains(const HDisk& d, const HPoint& p) {
  return std::norm(p.z() - d.center_e) < d.radius_e * d.radius_e;
}

cplx to_klein(cplx p);
cplx from_klein(cplx k);
inline cplx to_klein(const HPoint& p) { return to_klein(p.z()); }

// Interior angle at `corner` between the geodesics toward p and toward q,
// in [0, pi]. Computed after moving the corner to the origin, where both
// geodesics are diameters and the angle is Euclidean.
double corner_angle(const HPoint& corner, const HPoint& p, const HPoint& q);

// Angle-defect area pi - (alpha + beta + gamma); 0 for degenerate triples.
double triangle_area(const HPoint& a, const HPoint& b, const HPoint& c);

// Indices of the hyperbolic convex hull vertices in counterclockwise boundary
// order (Euclidean hull in Klein coordinates). Degenerate inputs return the
// distinct extreme points.
std::vector<std::size_t> convex_hull_h(const std::vector<HPoint>& pts);

// Area of a simple geodesic polygon; throws on self-intersection.
double polygon_area_h(const std::vector<HPoint>& vs);

// Orientation-preserving disk automorphism
//   z -> (alpha*z + beta) / (conj(beta)*z + conj(alpha)),
// normalized to |alpha|^2 - |beta|^2 = 1.
struct Mobius {
  cplx alpha{1.0, 0.0};
  cplx beta{0.0, 0.0};

  cplx apply(cplx z) const {
    return (alpha * z + beta) / (std::conj(beta) * z + std::conj(alpha));
  }
  HPoint apply(const HPoint& p) const { return HPoint::poincare(apply(p.z())); }

  Mobius inverse() const { return Mobius{std::conj(alpha), -beta}; }

  // f * g applies g first.
  friend Mobius operator*(const Mobius& f, const Mobius& g);

  static Mobius identity() { return {}; }
  static Mobius to_origin(const HPoint& p);
  static Mobius rotation(double phi);
};

// The automorphism taking p to the origin (inverse takes 0 back to p).
inline Mobius isometry_to_origin(const HPoint& p) { return Mobius::to_origin(p); }

}  // namespace hypvoro
