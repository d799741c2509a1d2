#include "hypvoro/predicates.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

namespace hypvoro {

namespace {

using rational = boost::multiprecision::cpp_rational;

// Filter constants from Shewchuk's exact-arithmetic predicates, with
// epsilon = 2^-53.
constexpr double kEps = 1.1102230246251565e-16;
constexpr double kCcwErrBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIccErrBound = (10.0 + 96.0 * kEps) * kEps;

int sign_of(const rational& r) {
  if (r > 0) return 1;
  if (r < 0) return -1;
  return 0;
}

int orient2d_exact(double ax, double ay, double bx, double by, double cx,
                   double cy) {
  rational det = (rational(ax) - cx) * (rational(by) - cy) -
                 (rational(ay) - cy) * (rational(bx) - cx);
  return sign_of(det);
}

int incircle_exact(double ax, double ay, double bx, double by, double cx,
                   double cy, double dx, double dy) {
  rational adx = rational(ax) - dx, ady = rational(ay) - dy;
  rational bdx = rational(bx) - dx, bdy = rational(by) - dy;
  rational cdx = rational(cx) - dx, cdy = rational(cy) - dy;
  rational alift = adx * adx + ady * ady;
  rational blift = bdx * bdx + bdy * bdy;
  rational clift = cdx * cdx + cdy * cdy;
  rational det = alift * (bdx * cdy - bdy * cdx) +
                 blift * (cdx * ady - cdy * adx) +
                 clift * (adx * bdy - ady * bdx);
  return sign_of(det);
}

}  // namespace

int orient2d(double ax, double ay, double bx, double by, double cx, double cy) {
  double detleft = (ax - cx) * (by - cy);
  double detright = (ay - cy) * (bx - cx);
  double det = detleft - detright;
  double detsum;
  if (detleft > 0.0) {
    if (detright <= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    detsum = detleft + detright;
  } else if (detleft < 0.0) {
    if (detright >= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    detsum = -detleft - detright;
  } else {
    return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
  }
  double errbound = kCcwErrBound * detsum;
  if (det > errbound) return 1;
  if (det < -errbound) return -1;
  return orient2d_exact(ax, ay, bx, by, cx, cy);
}

int incircle(double ax, double ay, double bx, double by, double cx, double cy,
             double dx, double dy) {
  double adx = ax - dx, ady = ay - dy;
  double bdx = bx - dx, bdy = by - dy;
  double cdx = cx - dx, cdy = cy - dy;

  double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  double alift = adx * adx + ady * ady;
  double cdxady = cdx * ady, adxcdy = adx * cdy;
  double blift = bdx * bdx + bdy * bdy;
  double adxbdy = adx * bdy, bdxady = bdx * ady;
  double clift = cdx * cdx + cdy * cdy;

  double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
               clift * (adxbdy - bdxady);
  double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * alift +
                     (std::fabs(cdxady) + std::fabs(adxcdy)) * blift +
                     (std::fabs(adxbdy) + std::fabs(bdxady)) * clift;
  double errbound = kIccErrBound * permanent;
  if (det > errbound) return 1;
  if (det < -errbound) return -1;
  return incircle_exact(ax, ay, bx, by, cx, cy, dx, dy);
}

}  // namespace hypvoro
