#include "hypvoro/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypvoro/predicates.hpp"

namespace hypvoro {

namespace {

// Derived geometry (circumcenters, automorphism images) may legitimately land
// slightly beyond kRadCap; representability holds comfortably below this.
constexpr double kRadOverhang = 5.0;

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

}  // namespace

HPoint HPoint::polar(double rad_h, double theta) {
  require(std::isfinite(rad_h) && rad_h >= 0.0, "rad_h: must be finite and >= 0");
  require(rad_h <= kRadCap + kRadOverhang,
          "rad_h: exceeds representable cap " + std::to_string(kRadCap + kRadOverhang));
  require(std::isfinite(theta), "theta: must be finite");
  HPoint p;
  p.rad_h = rad_h;
  p.theta = rad_h == 0.0 ? 0.0 : normalize_angle(theta);
  double t = std::tanh(0.5 * rad_h);
  p.re = t * std::cos(p.theta);
  p.im = t * std::sin(p.theta);
  return p;
}

HPoint HPoint::poincare(double re, double im) {
  require(std::isfinite(re) && std::isfinite(im), "re/im: must be finite");
  double n = std::hypot(re, im);
  require(n < 1.0, "re/im: point outside the open unit disk");
  double rad = 2.0 * std::atanh(n);
  require(rad <= kRadCap + kRadOverhang,
          "re/im: hyperbolic radius exceeds representable cap");
  HPoint p;
  p.rad_h = rad;
  p.theta = n == 0.0 ? 0.0 : normalize_angle(std::atan2(im, re));
  p.re = re;
  p.im = im;
  return p;
}

double dist_h(const HPoint& p, const HPoint& q) {
  double dd = std::fabs(p.theta - q.theta);
  if (dd > kPi) dd = kTwoPi - dd;
  double sh = std::sinh(0.5 * std::fabs(p.rad_h - q.rad_h));
  double sn = std::sin(0.5 * dd);
  double prod = std::sinh(p.rad_h) * std::sinh(q.rad_h);
  double y = 2.0 * sh * sh + 2.0 * sn * sn * prod;
  return acosh1p(y);
}

double ball_area(double r) {
  require(std::isfinite(r) && r >= 0.0, "r: must be finite and >= 0");
  double s = std::sinh(0.5 * r);
  return 2.0 * kTwoPi * s * s;  // == 2*pi*(cosh r - 1)
}

double radius_h_to_e(double r) {
  require(std::isfinite(r) && r >= 0.0, "r: must be finite and >= 0");
  return std::tanh(0.5 * r);
}

double radius_e_to_h(double e) {
  require(std::isfinite(e) && e >= 0.0 && e < 1.0, "e: must be in [0, 1)");
  return 2.0 * std::atanh(e);
}

Geodesic Geodesic::through(const HPoint& a, const HPoint& b) {
  Geodesic g;
  g.a = a;
  g.b = b;
  const cplx A = a.z(), B = b.z();
  double cross = A.real() * B.imag() - A.imag() * B.real();
  if (std::fabs(cross) * 0.5 < kDegenerateArea) {
    g.diameter = true;
    return g;
  }
  // Center c of the orthogonal circle solves 2 c.p = 1 + |p|^2 for p = A, B.
  double ra = 1.0 + std::norm(A), rb = 1.0 + std::norm(B);
  double det = 4.0 * (A.real() * B.imag() - A.imag() * B.real());
  double cx = (ra * 2.0 * B.imag() - rb * 2.0 * A.imag()) / det;
  double cy = (rb * 2.0 * A.real() - ra * 2.0 * B.real()) / det;
  g.center = cplx(cx, cy);
  g.radius = std::sqrt(std::max(0.0, std::norm(g.center) - 1.0));
  return g;
}

HDisk make_hdisk(const HPoint& center, double radius_h) {
  require(std::isfinite(radius_h) && radius_h >= 0.0,
          "radius_h: must be finite and >= 0");
  require(center.rad_h + radius_h <= kDiskReachCap,
          "radius_h: center radius + disk radius exceeds reach cap");
  HDisk d;
  d.center_h = center;
  d.radius_h = radius_h;
  double s1 = std::tanh(0.5 * (center.rad_h - radius_h));
  double s2 = std::tanh(0.5 * (center.rad_h + radius_h));
  cplx dir = center.rad_h == 0.0 ? cplx(1.0, 0.0)
                                 : cplx(std::cos(center.theta), std::sin(center.theta));
  d.center_e = dir * (0.5 * (s1 + s2));
  d.radius_e = 0.5 * (s2 - s1);
  return d;
}

std::optional<HDisk> circumdisk(const HPoint& a, const HPoint& b, const HPoint& c) {
  const cplx A = a.z(), B = b.z(), C = c.z();
  const double bx = B.real() - A.real(), by = B.imag() - A.imag();
  const double cx = C.real() - A.real(), cy = C.imag() - A.imag();
  const double d = 2.0 * (bx * cy - by * cx);
  if (std::fabs(d) < 4.0 * kDegenerateArea) return std::nullopt;
  const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  const cplx u(A.real() + (cy * b2 - by * c2) / d,
               A.imag() + (bx * c2 - cx * b2) / d);
  const double rho = (std::abs(u - A) + std::abs(u - B) + std::abs(u - C)) / 3.0;
  const double cu = std::abs(u);
  if (!(cu + rho < 1.0 - kContainEps)) return std::nullopt;

  HDisk out;
  out.center_e = u;
  out.radius_e = rho;
  double h1 = 2.0 * std::atanh(cu - rho);
  double h2 = 2.0 * std::atanh(cu + rho);
  double hc = 0.5 * (h1 + h2);
  out.radius_h = 0.5 * (h2 - h1);
  if (cu < 1e-300 || std::fabs(hc) < 1e-300) {
    out.center_h = HPoint::origin();
  } else {
    out.center_h = HPoint::polar(std::fabs(hc), std::arg(hc >= 0.0 ? u : -u));
  }
  return out;
}

cplx to_klein(cplx p) { return 2.0 * p / (1.0 + std::norm(p)); }

cplx from_klein(cplx k) {
  double n2 = std::norm(k);
  require(n2 <= 1.0, "k: Klein point outside the closed unit disk");
  return k / (1.0 + std::sqrt(std::max(0.0, 1.0 - n2)));
}

double corner_angle(const HPoint& corner, const HPoint& p, const HPoint& q) {
  Mobius m = Mobius::to_origin(corner);
  cplx u = m.apply(p.z());
  cplx v = m.apply(q.z());
  if (std::abs(u) < 1e-300 || std::abs(v) < 1e-300) return 0.0;
  return std::fabs(std::arg(u * std::conj(v)));
}

double triangle_area(const HPoint& a, const HPoint& b, const HPoint& c) {
  const cplx A = a.z(), B = b.z(), C = c.z();
  const double bx = B.real() - A.real(), by = B.imag() - A.imag();
  const double cx = C.real() - A.real(), cy = C.imag() - A.imag();
  if (0.5 * std::fabs(bx * cy - by * cx) < kDegenerateArea) return 0.0;
  double defect = kPi - corner_angle(a, b, c) - corner_angle(b, a, c) -
                  corner_angle(c, a, b);
  return std::max(0.0, defect);
}

std::vector<std::size_t> convex_hull_h(const std::vector<HPoint>& pts) {
  require(!pts.empty(), "points: need at least one point");
  // Indices of distinct Klein coordinates, first occurrence wins.
  std::vector<std::size_t> idx;
  std::vector<cplx> k(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) k[i] = to_klein(pts[i]);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dup = false;
    for (std::size_t j : idx) {
      if (k[j].real() == k[i].real() && k[j].imag() == k[i].imag()) {
        dup = true;
        break;
      }
    }
    if (!dup) idx.push_back(i);
  }
  if (idx.size() == 1) return idx;
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    if (k[i].real() != k[j].real()) return k[i].real() < k[j].real();
    return k[i].imag() < k[j].imag();
  });
  if (idx.size() == 2) return idx;

  auto turn = [&](std::size_t i, std::size_t j, std::size_t l) {
    return orient2d(k[i].real(), k[i].imag(), k[j].real(), k[j].imag(),
                    k[l].real(), k[l].imag());
  };
  // Monotone chain with strict turns; collinear interior points drop out.
  const std::size_t m = idx.size();
  std::vector<std::size_t> h(2 * m);
  std::size_t k2 = 0;
  for (std::size_t i = 0; i < m; ++i) {
    while (k2 >= 2 && turn(h[k2 - 2], h[k2 - 1], idx[i]) <= 0) --k2;
    h[k2++] = idx[i];
  }
  std::size_t t0 = k2 + 1;
  for (std::size_t ii = m - 1; ii-- > 0;) {
    while (k2 >= t0 && turn(h[k2 - 2], h[k2 - 1], idx[ii]) <= 0) --k2;
    h[k2++] = idx[ii];
  }
  h.resize(k2 - 1);
  return h;
}

namespace {

// True when nonadjacent Klein segments (p1,p2) and (p3,p4) properly cross or
// overlap along a line.
bool segments_conflict(const cplx& p1, const cplx& p2, const cplx& p3,
                       const cplx& p4) {
  auto o = [](const cplx& a, const cplx& b, const cplx& c) {
    return orient2d(a.real(), a.imag(), b.real(), b.imag(), c.real(), c.imag());
  };
  int o1 = o(p3, p4, p1), o2 = o(p3, p4, p2);
  int o3 = o(p1, p2, p3), o4 = o(p1, p2, p4);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
    // Collinear: reject if the projections overlap.
    auto lo1 = std::min(p1.real(), p2.real()), hi1 = std::max(p1.real(), p2.real());
    auto lo2 = std::min(p3.real(), p4.real()), hi2 = std::max(p3.real(), p4.real());
    auto lo1y = std::min(p1.imag(), p2.imag()), hi1y = std::max(p1.imag(), p2.imag());
    auto lo2y = std::min(p3.imag(), p4.imag()), hi2y = std::max(p3.imag(), p4.imag());
    return std::max(lo1, lo2) < std::min(hi1, hi2) ||
           std::max(lo1y, lo2y) < std::min(hi1y, hi2y);
  }
  return false;
}

}  // namespace

double polygon_area_h(const std::vector<HPoint>& vs) {
  const std::size_t n = vs.size();
  if (n <= 2) return 0.0;
  std::vector<cplx> k(n);
  for (std::size_t i = 0; i < n; ++i) k[i] = to_klein(vs[i]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;  // adjacent edges
      if (segments_conflict(k[i], k[(i + 1) % n], k[j], k[(j + 1) % n])) {
        throw ValidationError("vertices: polygon is self-intersecting");
      }
    }
  }
  // Signed fan from vertex 0; valid for any simple geodesic polygon.
  double total = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    int s = orient2d(k[0].real(), k[0].imag(), k[i].real(), k[i].imag(),
                     k[i + 1].real(), k[i + 1].imag());
    if (s != 0) total += s * triangle_area(vs[0], vs[i], vs[i + 1]);
  }
  return std::fabs(total);
}

Mobius operator*(const Mobius& f, const Mobius& g) {
  Mobius h;
  h.alpha = f.alpha * g.alpha + f.beta * std::conj(g.beta);
  h.beta = f.alpha * g.beta + f.beta * std::conj(g.alpha);
  double det = std::norm(h.alpha) - std::norm(h.beta);
  double s = std::sqrt(det);
  h.alpha /= s;
  h.beta /= s;
  return h;
}

Mobius Mobius::to_origin(const HPoint& p) {
  Mobius m;
  double s = std::sqrt(std::max(1e-300, 1.0 - std::norm(p.z())));
  m.alpha = cplx(1.0 / s, 0.0);
  m.beta = -p.z() / s;
  return m;
}

Mobius Mobius::rotation(double phi) {
  Mobius m;
  m.alpha = std::polar(1.0, 0.5 * phi);
  m.beta = cplx(0.0, 0.0);
  return m;
}

}  // namespace hypvoro
