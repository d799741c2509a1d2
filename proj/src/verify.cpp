#include "hypvoro/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hypvoro/errors.hpp"
#include "hypvoro/rng.hpp"

namespace hypvoro {

namespace {

constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo, hi;
};

Interval wilson(std::uint64_t events, std::uint64_t trials) {
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(events) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {events == 0 ? 0.0 : std::max(0.0, center - half),
          events == trials ? 1.0 : std::min(1.0, center + half)};
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t t) {
  return CounterRng(seed, t + 1).next_u64();
}

// Largest nonnegative ray parameter on the circle |p - c| = R for the unit
// ray t -> t*u from the origin; NaN when the ray misses the circle.
double ray_circle(double ux, double uy, double cx, double cy, double R) {
  const double b = ux * cx + uy * cy;
  const double disc = b * b - (cx * cx + cy * cy - R * R);
  if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::max(0.0, b + std::sqrt(disc));
}

// Reach of the origin's triangle star, computed on a growing subwindow.  The
// star built from the points in B(0, w) equals the full-window star whenever
// it forms a closed fan and every star circumdisk fits inside B(0, w): such
// disks see every full-sample point that could lie in them, so the star
// triangles are Delaunay for the full sample, and a complete fan admits no
// strict superset.  Otherwise escalate; at w = window this is the plain
// computation.
double certified_star_reach(const Sample& full, double window) {
  double w = std::min(window, 5.0);
  for (;;) {
    Sample sub;
    const Sample* use = &full;
    if (w < window) {
      sub.lambda = full.lambda;
      sub.window_r = w;
      sub.seed = full.seed;
      sub.conditioning = full.conditioning;
      for (const HPoint& p : full.points)
        if (p.rad_h <= w) sub.points.push_back(p);
      use = &sub;
    }
    const DelaunayComplex c = delaunay(*use);
    const TriangleStar st = triangle_star(c, 0);
    bool certified = w >= window;
    if (!certified && !st.triangles.empty()) {
      certified = true;
      std::map<std::uint32_t, int> rim;
      for (std::uint32_t tid : st.triangles)
        for (std::uint32_t v : c.triangles[tid])
          if (v != 0) ++rim[v];
      for (const auto& [v, count] : rim)
        if (count != 2) {
          certified = false;
          break;
        }
      const double horizon = std::tanh(w / 2.0);
      for (std::uint32_t tid : st.triangles) {
        if (!certified) break;
        const auto& d = c.circumdisks[tid];
        if (!d || std::abs(d->center_e) + d->radius_e >= horizon)
          certified = false;
      }
    }
    if (certified) return st.radius;
    w = w + 2.0 >= window ? window : w + 2.0;
  }
}

}  // namespace

VerificationReport tail_triangle(double lambda,
                                 const std::vector<double>& r_grid,
                                 double window_margin, std::uint64_t trials,
                                 std::uint64_t seed) {
  require(std::isfinite(lambda) && lambda >= 0.0,
          "lambda: must be finite and nonnegative");
  require(!r_grid.empty(), "r_grid: must be nonempty");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    require(std::isfinite(r_grid[i]) && r_grid[i] > 0.0,
            "r_grid: radii must be positive");
    if (i > 0)
      require(r_grid[i] > r_grid[i - 1], "r_grid: must be strictly increasing");
  }
  require(std::isfinite(window_margin) && window_margin > 0.0,
          "window_margin: must be positive");
  require(trials > 0, "trials: must be positive");
  const double window = r_grid.back() + window_margin;
  guard(window <= kRadCap, "window_margin: max r + margin exceeds the cap");

  std::vector<std::uint64_t> events(r_grid.size(), 0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Sample s =
        condition_root(sample_ball(lambda, window, trial_seed(seed, t)));
    const double reach = certified_star_reach(s, window);
    for (std::size_t i = 0; i < r_grid.size(); ++i)
      if (reach > r_grid[i]) ++events[i];
  }

  VerificationReport rep;
  rep.name = "tail_triangle";
  rep.axes = {"r"};
  rep.trials = trials;
  rep.seed = seed;
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    GridPoint pt;
    pt.params = {r_grid[i]};
    pt.value = static_cast<double>(events[i]) / static_cast<double>(trials);
    const Interval ci = wilson(events[i], trials);
    pt.lo = ci.lo;
    pt.hi = ci.hi;
    pt.bound = 0.75 * r_grid[i] - lambda * kPi * std::exp(r_grid[i] / 4.0);
    if (i == 0 || events[i] == 0) {
      // No slope to check, or decay already complete at this resolution.
      pt.pass = true;
    } else {
      // Events are nested across the grid, so events[i] <= events[i-1] and
      // the empirical log-slope is well defined.
      const double slope = std::log(static_cast<double>(events[i]) /
                                    static_cast<double>(events[i - 1]));
      pt.pass = slope <= pt.bound - rep.points[i - 1].bound;
    }
    rep.points.push_back(std::move(pt));
  }
  return rep;
}

RegionEstimate geometry_region(double x_e, double theta, double window_r,
                               std::uint64_t trials, std::uint64_t seed) {
  require(x_e > 0.0 && x_e < 1.0, "x_e: must lie in (0, 1)");
  require(std::isfinite(theta) && theta >= 0.0, "theta: must be nonnegative");
  require(std::isfinite(window_r) && window_r > 0.0,
          "window_r: must be positive");
  guard(window_r <= kRadCap, "window_r: exceeds the radius cap");
  require(trials > 0, "trials: must be positive");

  const HPoint x = HPoint::poincare(cplx(x_e, 0.0));
  const HPoint o = HPoint::origin();
  const double span = std::cosh(window_r) - 1.0;

  std::uint64_t events = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    CounterRng rng(seed, t + 1);
    const double rad = acosh1p(rng.next_double() * span);
    const HPoint z = HPoint::polar(rad, rng.uniform(0.0, kTwoPi));
    if (!circumdisk(x, o, z)) continue;
    if (triangle_area(x, o, z) <= theta) ++events;
  }

  RegionEstimate est;
  est.events = events;
  est.p_hat = static_cast<double>(events) / static_cast<double>(trials);
  const Interval ci = wilson(events, trials);
  est.lo = ci.lo;
  est.hi = ci.hi;
  if (theta > 0.0) {
    const double scale = dist_h(o, x) * ball_area(window_r) / theta;
    est.ratio = est.p_hat * scale;
    est.ratio_hi = est.hi * scale;
  }
  return est;
}

double locus_check(double x_e, double alpha, std::uint32_t n_probe) {
  require(x_e > 0.0 && x_e < 1.0, "x_e: must lie in (0, 1)");
  require(alpha > 0.0 && alpha < kPi, "alpha: must lie in (0, pi)");
  require(n_probe > 0, "n_probe: must be positive");

  // Ray E + t*(-cos(alpha/2), sin(alpha/2)) from E = 1/x_e against the unit
  // circle: t^2 - 2 E cos(alpha/2) t + E^2 - 1 = 0.
  const double E = 1.0 / x_e;
  const double c = std::cos(alpha / 2.0), s = std::sin(alpha / 2.0);
  const double disc = 1.0 - E * E * s * s;
  require(disc > 0.0, "alpha: the locus ray misses the disk");
  const double root = std::sqrt(disc);
  const double t1 = E * c - root, t2 = E * c + root;

  const HPoint x = HPoint::poincare(cplx(x_e, 0.0));
  const HPoint o = HPoint::origin();
  double worst = 0.0;
  for (std::uint32_t j = 0; j < n_probe; ++j) {
    const double t = t1 + (t2 - t1) * (j + 1.0) / (n_probe + 1.0);
    const HPoint y = HPoint::poincare(cplx(E - t * c, t * s));
    worst = std::max(worst, std::fabs(triangle_area(o, x, y) - alpha));
  }
  return worst;
}

EllLengths ell_formulas(double x_e, double phi) {
  require(x_e > 0.0 && x_e < 1.0, "x_e: must lie in (0, 1)");
  require(phi >= 0.0 && phi <= kPi / 2.0, "phi: must lie in [0, pi/2]");
  const double cp = std::cos(phi), sp = std::sin(phi);
  const double q = std::sqrt(1.0 - x_e * x_e);
  EllLengths out;
  out.l1_closed = x_e * cp;
  out.l2_closed = x_e * cp + q * sp;
  out.l1_direct = ray_circle(cp, sp, x_e / 2.0, 0.0, x_e / 2.0);
  out.l2_direct = ray_circle(cp, sp, x_e / 2.0, q / 2.0, 0.5);
  return out;
}

PhiStar phi_star_check(double x_e, double theta) {
  require(x_e > 0.0 && x_e < 1.0, "x_e: must lie in (0, 1)");
  require(theta > 0.0 && theta < kPi, "theta: must lie in (0, pi)");
  const double x = x_e;
  const double ch = std::cos(theta / 2.0), sh = std::sin(theta / 2.0);

  // Direct: the ray from 1/x at angle theta/2 to the negative real axis,
  // against the circle with diameter [0, x]; first intersection w0.
  const double a = 1.0 / x - x / 2.0;
  const double disc = ch * ch * a * a - (1.0 - x * x) / (x * x);
  require(disc > 0.0, "theta: the locus does not meet the circle twice");
  const double t0 = a * ch - std::sqrt(disc);
  const double wx = 1.0 / x - t0 * ch, wy = t0 * sh;

  // Closed: the quadratic-formula root for sin of twice the angle.
  const double zq = (2.0 - x * x) / (x * x);
  const double under = std::max(0.0, 1.0 - zq * zq * sh * sh);
  const double s2 = sh * (zq * ch - std::sqrt(under));

  PhiStar out;
  out.closed = 0.5 * std::asin(s2);
  out.direct = std::atan2(wy, wx);
  return out;
}

double hull_bound(const std::vector<std::vector<HPoint>>& sets) {
  require(!sets.empty(), "sets: must be nonempty");
  double worst = 0.0;
  for (const auto& pts : sets) {
    require(pts.size() >= 3, "sets: each set needs at least three points");
    const std::vector<std::size_t> hull = convex_hull_h(pts);
    double area = 0.0;
    if (hull.size() >= 3) {
      std::vector<HPoint> poly;
      poly.reserve(hull.size());
      for (std::size_t i : hull) poly.push_back(pts[i]);
      area = polygon_area_h(poly);
    }
    worst = std::max(worst, area / (4.0 * kPi * pts.size()));
  }
  return worst;
}

VerificationReport strong_area_scan(const DelaunayComplex& c,
                                    std::uint32_t k_max) {
  require(k_max >= 1, "k_max: must be positive");
  guard(k_max <= 12, "k_max: capped at 12");
  require(c.sample.conditioning == Conditioning::root_at_origin,
          "complex: sample must be conditioned on a root at the origin");
  const TriangleStar star = triangle_star(c, 0);
  require(!star.triangles.empty(), "complex: no triangle at the root");
  const std::uint32_t root_tri =
      *std::min_element(star.triangles.begin(), star.triangles.end());
  const std::size_t m = c.triangles.size();

  std::vector<double> area(m);
  for (std::size_t t = 0; t < m; ++t)
    area[t] = triangle_area(c.sample.points[c.triangles[t][0]],
                            c.sample.points[c.triangles[t][1]],
                            c.sample.points[c.triangles[t][2]]);

  // Union bookkeeping for the Euler test: distinct vertices and edges of the
  // current collection, maintained incrementally.
  std::vector<std::uint32_t> vcount(c.sample.points.size(), 0);
  std::unordered_map<std::uint64_t, std::uint32_t> ecount;
  std::int64_t verts = 0, edges = 0;
  double area_sum = 0.0;
  auto add_tri = [&](std::uint32_t t, int dir) {
    const auto& tv = c.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const std::uint32_t v = tv[k];
      if (dir > 0) {
        if (vcount[v]++ == 0) ++verts;
      } else {
        if (--vcount[v] == 0) --verts;
      }
      const std::uint32_t a = tv[k], b = tv[(k + 1) % 3];
      const std::uint64_t key =
          (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
      if (dir > 0) {
        if (ecount[key]++ == 0) ++edges;
      } else {
        if (--ecount[key] == 0) --edges;
      }
    }
    area_sum += dir * area[t];
  };

  std::vector<double> best(k_max + 1, -1.0);
  std::uint64_t visited = 0;
  std::vector<char> in_s(m, 0), marked(m, 0);
  std::vector<std::uint32_t> s, cand;

  auto visit = [&]() {
    ++visited;
    const std::size_t k = s.size();
    if (verts - edges + static_cast<std::int64_t>(k) == 1) {
      const double mean = area_sum / static_cast<double>(k);
      if (best[k] < 0.0 || mean < best[k]) best[k] = mean;
    }
  };

  in_s[root_tri] = marked[root_tri] = 1;
  s.push_back(root_tri);
  add_tri(root_tri, +1);
  visit();
  for (int k = 0; k < 3; ++k) {
    const std::int32_t t = c.triangle_adjacency[root_tri][k];
    if (t >= 0 && !marked[t]) {
      marked[t] = 1;
      cand.push_back(static_cast<std::uint32_t>(t));
    }
  }

  auto rec = [&](auto&& self, std::size_t lo, std::size_t hi) -> void {
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint32_t t = cand[i];
      in_s[t] = 1;
      s.push_back(t);
      add_tri(t, +1);
      visit();
      if (s.size() < k_max) {
        const std::size_t clo = cand.size();
        for (std::size_t j = i + 1; j < hi; ++j) cand.push_back(cand[j]);
        std::size_t fresh = 0;
        for (int k = 0; k < 3; ++k) {
          const std::int32_t u = c.triangle_adjacency[t][k];
          if (u >= 0 && !in_s[u] && !marked[u]) {
            marked[u] = 1;
            cand.push_back(static_cast<std::uint32_t>(u));
            ++fresh;
          }
        }
        const std::size_t chi = cand.size();
        self(self, clo, chi);
        for (std::size_t j = chi - fresh; j < chi; ++j) marked[cand[j]] = 0;
        cand.resize(clo);
      }
      add_tri(t, -1);
      s.pop_back();
      in_s[t] = 0;
    }
  };
  if (k_max > 1) rec(rec, 0, cand.size());

  VerificationReport rep;
  rep.name = "strong_area_scan";
  rep.axes = {"k"};
  rep.trials = visited;
  rep.seed = c.sample.seed;
  for (std::uint32_t k = 1; k <= k_max; ++k) {
    GridPoint pt;
    pt.params = {static_cast<double>(k)};
    pt.value = best[k];
    pt.pass = best[k] > 0.0;
    rep.points.push_back(std::move(pt));
  }
  return rep;
}

VerificationReport distance_compare(const DualGraph& voronoi_dual) {
  const DualGraph& g = voronoi_dual;
  require(g.kind == DualGraph::Kind::voronoi_dual,
          "voronoi_dual: graph kind mismatch");
  require(g.root >= 0 && g.root < static_cast<std::int64_t>(g.n),
          "voronoi_dual: needs a root");
  require(g.geometry.size() == g.n, "voronoi_dual: geometry size mismatch");
  require(g.core.size() == g.n, "voronoi_dual: core size mismatch");
  const auto root = static_cast<std::uint32_t>(g.root);
  require(g.core[root] != 0, "voronoi_dual: root not in the core");

  const std::vector<std::int64_t> dist = bfs_distances(g, root);
  const HPoint& o = g.geometry[root];
  std::map<int, double> floor_by_annulus;
  std::uint64_t considered = 0;
  for (std::uint32_t v = 0; v < g.n; ++v) {
    if (v == root || !g.core[v] || dist[v] < 0) continue;
    const double dh = dist_h(o, g.geometry[v]);
    if (dh <= 0.0) continue;
    ++considered;
    const int ann = static_cast<int>(std::floor(dh));
    const double ratio = static_cast<double>(dist[v]) / dh;
    const auto it = floor_by_annulus.find(ann);
    if (it == floor_by_annulus.end() || ratio < it->second)
      floor_by_annulus[ann] = ratio;
  }

  VerificationReport rep;
  rep.name = "distance_compare";
  rep.axes = {"r"};
  rep.trials = considered;
  rep.seed = 0;
  for (const auto& [ann, ratio] : floor_by_annulus) {
    GridPoint pt;
    pt.params = {static_cast<double>(ann)};
    pt.value = ratio;
    pt.pass = ratio > 0.0;
    rep.points.push_back(std::move(pt));
  }
  return rep;
}

std::int64_t geodesic_deviation(const DelaunayComplex& c, double r) {
  require(std::isfinite(r) && r >= 0.0, "r: must be nonnegative");
  require(c.sample.conditioning == Conditioning::root_at_origin,
          "complex: sample must be conditioned on a root at the origin");
  const DualGraph g = dual_voronoi_graph(c, true);
  require(g.root >= 0, "complex: no root cell");
  const auto root = static_cast<std::uint32_t>(g.root);

  auto locate = [&](const HPoint& p) {
    std::uint32_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::uint32_t v = 0; v < g.n; ++v) {
      const double d = dist_h(g.geometry[v], p);
      if (d < bd) {
        bd = d;
        best = v;
      }
    }
    return best;
  };
  const std::uint32_t a = locate(HPoint::polar(r, kPi));
  const std::uint32_t b = locate(HPoint::polar(r, 0.0));
  require(g.core[a] != 0 && g.core[b] != 0,
          "r: a cell at distance r lies outside the core");

  // Deterministic BFS path from a to b (first-discovery parents over sorted
  // adjacency).
  std::vector<std::int64_t> parent(g.n, -2);
  parent[a] = -1;
  std::vector<std::uint32_t> queue{a};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t v = queue[head];
    if (v == b) break;
    for (std::uint32_t w : g.adjacency[v]) {
      if (parent[w] != -2) continue;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  require(parent[b] != -2, "r: the two cells are not connected");

  const std::vector<std::int64_t> dist0 = bfs_distances(g, root);
  std::int64_t dev = std::numeric_limits<std::int64_t>::max();
  for (std::int64_t v = b; v != -1; v = parent[v]) {
    if (dist0[v] >= 0) dev = std::min(dev, dist0[v]);
    if (v == static_cast<std::int64_t>(a)) break;
  }
  return dev;
}

}  // namespace hypvoro
