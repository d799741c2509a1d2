#include <algorithm>
#include <cmath>
#include <utility>

#include "hypvoro/errors.hpp"
#include "hypvoro/predicates.hpp"
#include "hypvoro/tessellation.hpp"

namespace hypvoro {

namespace {

// Klein coordinates saturate as tanh(r) -> 1; beyond this cap the clipped
// boundary cannot be represented reliably.
constexpr double kKleinWindowCap = 16.0;

// Ideal endpoints of the hyperbolic bisector of a, b (shared by the
// Poincare and Klein models, which agree on the boundary circle).
std::pair<cplx, cplx> bisector_ideal_points(const HPoint& a, const HPoint& b) {
  const Mobius to_a = Mobius::to_origin(a);
  const cplx w = to_a.apply(b.z());
  const double aw = std::abs(w);
  const double half = aw / (1.0 + std::sqrt(std::max(0.0, 1.0 - aw * aw)));
  const cplx mid_local = (w / aw) * half;
  const cplx mid = to_a.inverse().apply(mid_local);
  const Mobius to_mid = Mobius::to_origin(HPoint::poincare(mid));
  cplx u = to_mid.apply(b.z());
  u /= std::abs(u);
  const cplx perp(-u.imag(), u.real());
  const Mobius back = to_mid.inverse();
  return {back.apply(perp), back.apply(-perp)};
}

double cross(const cplx& a, const cplx& b) {
  return a.real() * b.imag() - a.imag() * b.real();
}

// Sutherland-Hodgman against the left side of the directed line d0 -> d1.
std::vector<cplx> clip_half_plane(const std::vector<cplx>& poly, cplx d0,
                                  cplx d1) {
  std::vector<cplx> out;
  const cplx d = d1 - d0;
  auto side = [&](const cplx& p) { return cross(d, p - d0); };
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx p = poly[i], q = poly[(i + 1) % n];
    const double sp = side(p), sq = side(q);
    if (sp >= 0.0) out.push_back(p);
    if ((sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0))
      out.push_back(p + (sp / (sp - sq)) * (q - p));
  }
  return out;
}

struct ClipResult {
  std::vector<cplx> pts;
  std::vector<char> arc_after;
  bool full_disk = false;
};

// Convex polygon (CCW) intersected with the disk |z| <= rho; boundary
// pieces between an exit and the following entry run CCW along the circle.
ClipResult clip_circle(const std::vector<cplx>& poly, double rho) {
  ClipResult res;
  const double rho2 = rho * rho * (1.0 + 1e-12);
  auto inside = [&](const cplx& p) { return std::norm(p) <= rho2; };
  bool all_in = true, any_in = false;
  for (const cplx& p : poly) {
    if (inside(p))
      any_in = true;
    else
      all_in = false;
  }
  if (all_in) {
    res.pts = poly;
    res.arc_after.assign(poly.size(), 0);
    return res;
  }
  (void)any_in;

  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx p = poly[i], q = poly[(i + 1) % n];
    const bool pin = inside(p), qin = inside(q);
    if (pin) {
      res.pts.push_back(p);
      res.arc_after.push_back(0);
    }
    const cplx d = q - p;
    const double a = std::norm(d);
    if (a == 0.0) continue;
    const double b = 2.0 * (d.real() * p.real() + d.imag() * p.imag());
    const double cc = std::norm(p) - rho * rho;
    const double disc = b * b - 4.0 * a * cc;
    if (disc <= 0.0) continue;
    const double sq = std::sqrt(disc);
    double t1 = (-b - sq) / (2.0 * a), t2 = (-b + sq) / (2.0 * a);
    auto on_circle = [&](double t) {
      cplx x = p + t * d;
      return x * (rho / std::abs(x));
    };
    const double eps = 1e-12;
    if (pin && !qin) {
      // leaving: the larger root in (0,1]
      if (t2 > eps && t2 <= 1.0 + eps) {
        res.pts.push_back(on_circle(t2));
        res.arc_after.push_back(1);
      }
    } else if (!pin && qin) {
      if (t1 >= -eps && t1 < 1.0 - eps) {
        res.pts.push_back(on_circle(t1));
        res.arc_after.push_back(0);
      }
    } else if (!pin && !qin) {
      if (t1 > eps && t2 < 1.0 - eps && t2 - t1 > eps) {
        res.pts.push_back(on_circle(t1));
        res.arc_after.push_back(0);
        res.pts.push_back(on_circle(t2));
        res.arc_after.push_back(1);
      }
    }
  }
  if (res.pts.empty()) res.full_disk = true;  // polygon swallows the disk
  return res;
}

cplx side_tangent(const HPoint& from, const HPoint& to) {
  const Geodesic g = Geodesic::through(from, to);
  cplx d;
  if (g.diameter) {
    d = to.z() - from.z();
  } else {
    d = cplx(0.0, 1.0) * (from.z() - g.center);
    const cplx chord = to.z() - from.z();
    if (d.real() * chord.real() + d.imag() * chord.imag() < 0.0) d = -d;
  }
  return d / std::abs(d);
}

}  // namespace

VoronoiCells voronoi_cells(const DelaunayComplex& c) {
  const std::size_t n = c.sample.points.size();
  const double window_r = c.sample.window_r;
  guard(window_r <= kKleinWindowCap,
        "window_r: cell clipping limited to window_r <= 16");
  VoronoiCells out;
  out.window_r = window_r;
  out.cells.resize(n);

  std::vector<std::vector<std::uint32_t>> star(n);
  for (std::size_t t = 0; t < c.triangles.size(); ++t)
    for (const std::uint32_t v : c.triangles[t])
      star[v].push_back(static_cast<std::uint32_t>(t));
  std::vector<std::vector<std::uint32_t>> nbrs(n);
  for (const auto& e : c.edges) {
    if (!e.valid) continue;
    nbrs[e.a].push_back(e.b);
    nbrs[e.b].push_back(e.a);
  }

  const double rho = std::tanh(window_r);  // window radius in Klein

  for (std::size_t i = 0; i < n; ++i) {
    VoronoiCell& cell = out.cells[i];
    cell.nucleus = static_cast<std::uint32_t>(i);

    // Closed-fan route: walk incident triangles across the edges through i.
    bool fan_ok = false;
    std::vector<std::uint32_t> ring;
    if (!star[i].empty()) {
      auto star_neighbors = [&](std::uint32_t t,
                                std::uint32_t out_nb[2]) -> int {
        int cnt = 0;
        const auto& tri = c.triangles[t];
        for (int k = 0; k < 3; ++k) {
          if (tri[k] == i) continue;  // edge opposite i does not contain i
          const std::int32_t nb = c.triangle_adjacency[t][k];
          if (nb >= 0 && cnt < 2) out_nb[cnt] = static_cast<std::uint32_t>(nb);
          if (nb >= 0) ++cnt;
        }
        return cnt;
      };
      ring.push_back(star[i][0]);
      fan_ok = true;
      std::uint32_t prev = star[i][0];
      std::uint32_t nb2[2];
      if (star_neighbors(prev, nb2) != 2) fan_ok = false;
      std::uint32_t cur = fan_ok ? nb2[0] : 0;
      while (fan_ok && cur != star[i][0]) {
        ring.push_back(cur);
        if (ring.size() > star[i].size()) {
          fan_ok = false;
          break;
        }
        if (star_neighbors(cur, nb2) != 2) {
          fan_ok = false;
          break;
        }
        const std::uint32_t next = (nb2[0] == prev) ? nb2[1] : nb2[0];
        prev = cur;
        cur = next;
      }
      if (fan_ok && ring.size() != star[i].size()) fan_ok = false;
    }
    if (fan_ok) {
      std::vector<HPoint> corners;
      corners.reserve(ring.size());
      double max_rad = 0.0;
      for (const std::uint32_t t : ring) {
        corners.push_back(c.circumdisks[t]->center_h);
        max_rad = std::max(max_rad, corners.back().rad_h);
      }
      if (max_rad <= window_r) {
        double signed_area = 0.0;
        for (std::size_t k = 0; k < corners.size(); ++k)
          signed_area += cross(corners[k].z(),
                               corners[(k + 1) % corners.size()].z());
        if (signed_area < 0.0)
          std::reverse(corners.begin(), corners.end());
        cell.clipped = false;
        cell.vertices = std::move(corners);
        cell.side_is_arc.assign(cell.vertices.size(), 0);
        continue;
      }
    }

    // Half-plane route in the Klein model; always window-clipped.
    cell.clipped = true;
    const cplx ki = to_klein(c.sample.points[i].z());
    std::vector<cplx> poly{{-2.0, -2.0}, {2.0, -2.0}, {2.0, 2.0}, {-2.0, 2.0}};
    for (const std::uint32_t j : nbrs[i]) {
      auto [e1, e2] = bisector_ideal_points(c.sample.points[i],
                                            c.sample.points[j]);
      if (cross(e2 - e1, ki - e1) < 0.0) std::swap(e1, e2);
      poly = clip_half_plane(poly, e1, e2);
      if (poly.size() < 3) break;
    }
    guard(poly.size() >= 3, "cell: half-plane intersection collapsed");
    ClipResult clipped = clip_circle(poly, rho);
    if (clipped.full_disk) {
      cell.vertices.clear();
      cell.side_is_arc.clear();
      continue;
    }
    cell.vertices.reserve(clipped.pts.size());
    for (const cplx& k : clipped.pts)
      cell.vertices.push_back(HPoint::poincare(from_klein(k)));
    cell.side_is_arc.assign(clipped.arc_after.begin(), clipped.arc_after.end());
  }
  return out;
}

double cell_area(const VoronoiCell& cell, double window_r) {
  const std::size_t n = cell.vertices.size();
  if (n == 0) return cell.clipped ? ball_area(window_r) : 0.0;
  double area = -2.0 * kPi;
  const double cosh_r = std::cosh(window_r);
  for (std::size_t k = 0; k < n; ++k) {
    const HPoint& a = cell.vertices[k];
    const HPoint& b = cell.vertices[(k + 1) % n];
    if (cell.side_is_arc[k]) {
      double dphi = std::arg(b.z()) - std::arg(a.z());
      if (dphi < 0.0) dphi += 2.0 * kPi;
      area += cosh_r * dphi;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const HPoint& v = cell.vertices[k];
    const HPoint& prev = cell.vertices[(k + n - 1) % n];
    const HPoint& next = cell.vertices[(k + 1) % n];
    const cplx z = v.z();
    cplx t_prev, t_next;
    if (cell.side_is_arc[(k + n - 1) % n])
      t_prev = cplx(0.0, -1.0) * (z / std::abs(z));
    else
      t_prev = side_tangent(v, prev);
    if (cell.side_is_arc[k])
      t_next = cplx(0.0, 1.0) * (z / std::abs(z));
    else
      t_next = side_tangent(v, next);
    area += kPi - std::fabs(std::arg(t_next * std::conj(t_prev)));
  }
  return area;
}

bool cell_contains(const VoronoiCell& cell, const HPoint& p) {
  const cplx kp = to_klein(p.z());
  const std::size_t n = cell.vertices.size();
  if (n == 0) return cell.clipped;  // whole-window cell
  bool any_arc = false;
  std::vector<cplx> kv(n);
  for (std::size_t k = 0; k < n; ++k) kv[k] = to_klein(cell.vertices[k].z());
  for (std::size_t k = 0; k < n; ++k) {
    if (cell.side_is_arc[k]) {
      any_arc = true;
      continue;
    }
    const cplx a = kv[k], b = kv[(k + 1) % n];
    if (orient2d(a.real(), a.imag(), b.real(), b.imag(), kp.real(),
                 kp.imag()) < 0)
      return false;
  }
  if (any_arc) {
    // Window membership; vertices sit on the window circle themselves.
    double rho = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      if (cell.side_is_arc[k]) rho = std::max(rho, std::abs(kv[k]));
    if (std::abs(kp) > rho * (1.0 + 1e-12)) return false;
  }
  return true;
}

}  // namespace hypvoro
