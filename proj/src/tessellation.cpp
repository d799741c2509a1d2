#include "hypvoro/tessellation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "hypvoro/errors.hpp"
#include "hypvoro/predicates.hpp"

namespace hypvoro {

namespace {

constexpr double kWitnessSlack = 1e-13;  // relative; on-circle points never block

inline std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;  // requires a < b
}

inline int orient_pts(const cplx& a, const cplx& b, const cplx& c) {
  return orient2d(a.real(), a.imag(), b.real(), b.imag(), c.real(), c.imag());
}

inline int incircle_pts(const cplx& a, const cplx& b, const cplx& c,
                        const cplx& d) {
  return incircle(a.real(), a.imag(), b.real(), b.imag(), c.real(), c.imag(),
                  d.real(), d.imag());
}

struct NearestResult {
  int idx;
  double dist;
};

// Existence of an empty disk inside the unit disk with points pi, qi on its
// boundary.  Centers run along the perpendicular bisector; the containment
// constraint is convex in the parameter and every blocking point forbids a
// half-line, so the feasible set is an interval found by bisection.
template <class Nearest>
bool edge_witness(const std::vector<cplx>& pts, int pi, int qi,
                  Nearest&& nearest) {
  const cplx p = pts[pi], q = pts[qi];
  cplx dir = q - p;
  const double dn = std::abs(dir);
  if (dn == 0.0) return false;
  dir = cplx(-dir.imag() / dn, dir.real() / dn);
  const cplx mid = 0.5 * (p + q);
  auto center = [&](double t) { return mid + t * dir; };
  auto fit = [&](double t) {
    const cplx c = center(t);
    return std::abs(c) + std::abs(c - p);
  };
  const double bound = 1.0 - kContainEps;

  double a = -8.0, b = 8.0;
  for (int i = 0; i < 200; ++i) {
    const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
    if (fit(m1) <= fit(m2))
      b = m2;
    else
      a = m1;
  }
  const double tstar = 0.5 * (a + b);
  if (fit(tstar) >= bound) return false;

  double lo_out = -8.0, lo = tstar;
  for (int i = 0; i < 100; ++i) {
    const double m = 0.5 * (lo_out + lo);
    (fit(m) <= bound ? lo : lo_out) = m;
  }
  double hi = tstar, hi_out = 8.0;
  for (int i = 0; i < 100; ++i) {
    const double m = 0.5 * (hi + hi_out);
    (fit(m) <= bound ? hi : hi_out) = m;
  }

  int who = -1;
  auto blocked = [&](double t) {
    const cplx c = center(t);
    const double rad = std::abs(c - p);
    const NearestResult nr = nearest(c);
    if (nr.idx == pi || nr.idx == qi) return false;
    if (nr.dist >= rad * (1.0 - kWitnessSlack)) return false;
    who = nr.idx;
    return true;
  };
  for (int i = 0; i < 64; ++i) {
    const double t = 0.5 * (lo + hi);
    if (!blocked(t)) return true;
    const cplx s = pts[who];
    auto g = [&](double u) {
      const cplx c = center(u);
      return std::abs(c - s) - std::abs(c - p);
    };
    const bool lo_bad = g(lo) < 0.0, hi_bad = g(hi) < 0.0;
    if (lo_bad && hi_bad) return false;
    if (lo_bad)
      lo = t;
    else
      hi = t;
  }
  return !blocked(lo) || !blocked(hi);
}

// Incremental Euclidean Delaunay with three enclosing phantom vertices.
struct BwMesh {
  std::vector<cplx> pts;  // n real points then 3 phantoms
  int n_real = 0;

  struct Tri {
    int v[3];    // CCW
    int adj[3];  // across edge opposite v[k]; -1 = none
  };
  std::vector<Tri> tri;
  std::vector<char> alive;
  std::vector<int> freelist;
  std::vector<int> stamp;  // cavity marks: 2*epoch out, 2*epoch+1 in
  int epoch = 0;
  int last = 0;

  explicit BwMesh(const std::vector<HPoint>& points) {
    n_real = static_cast<int>(points.size());
    pts.resize(n_real + 3);
    for (int i = 0; i < n_real; ++i) pts[i] = points[i].z();
    for (int k = 0; k < 3; ++k) {
      const double ang = kPi / 2 + k * (2.0 * kPi / 3.0);
      pts[n_real + k] = cplx(8.0 * std::cos(ang), 8.0 * std::sin(ang));
    }
    tri.push_back({{n_real, n_real + 1, n_real + 2}, {-1, -1, -1}});
    alive.push_back(1);
    stamp.push_back(0);
  }

  int alloc() {
    if (!freelist.empty()) {
      const int id = freelist.back();
      freelist.pop_back();
      alive[id] = 1;
      stamp[id] = 0;
      return id;
    }
    tri.push_back({});
    alive.push_back(1);
    stamp.push_back(0);
    return static_cast<int>(tri.size()) - 1;
  }

  bool in_closed_disk(int ti, int p) const {
    const Tri& t = tri[ti];
    return incircle_pts(pts[t.v[0]], pts[t.v[1]], pts[t.v[2]], pts[p]) >= 0;
  }

  int locate(int p) const {
    int cur = alive[last] ? last : -1;
    if (cur < 0)
      for (std::size_t i = 0; i < tri.size(); ++i)
        if (alive[i]) {
          cur = static_cast<int>(i);
          break;
        }
    long steps = 0;
    const long cap = 1000000;
    for (;;) {
      if (++steps > cap) break;
      const Tri& t = tri[cur];
      int next = -1;
      for (int k = 0; k < 3; ++k) {
        const int a = t.v[(k + 1) % 3], b = t.v[(k + 2) % 3];
        if (orient_pts(pts[a], pts[b], pts[p]) < 0) {
          next = t.adj[k];
          break;
        }
      }
      if (next < 0) return cur;
      cur = next;
    }
    // Walk cap exceeded: exhaustive point-in-triangle scan.
    for (std::size_t i = 0; i < tri.size(); ++i) {
      if (!alive[i]) continue;
      const Tri& t = tri[i];
      bool inside = true;
      for (int k = 0; k < 3 && inside; ++k)
        inside = orient_pts(pts[t.v[(k + 1) % 3]], pts[t.v[(k + 2) % 3]],
                            pts[p]) >= 0;
      if (inside) return static_cast<int>(i);
    }
    throw GuardError("delaunay: point location failed");
  }

  void insert(int p) {
    const int t0 = locate(p);
    ++epoch;
    const int out_mark = 2 * epoch, in_mark = 2 * epoch + 1;

    std::vector<int> cavity;
    std::vector<int> queue{t0};
    stamp[t0] = in_mark;
    struct BoundaryEdge {
      int a, b;       // directed CCW seen from the cavity
      int outer;      // triangle across, -1 at the phantom hull
      int outer_slot; // slot of this edge in outer
    };
    std::vector<BoundaryEdge> boundary;
    while (!queue.empty()) {
      const int ti = queue.back();
      queue.pop_back();
      cavity.push_back(ti);
      const Tri t = tri[ti];
      for (int k = 0; k < 3; ++k) {
        const int nb = t.adj[k];
        const int a = t.v[(k + 1) % 3], b = t.v[(k + 2) % 3];
        if (nb < 0) {
          boundary.push_back({a, b, -1, -1});
          continue;
        }
        if (stamp[nb] == in_mark) continue;
        if (stamp[nb] != out_mark && in_closed_disk(nb, p)) {
          stamp[nb] = in_mark;
          queue.push_back(nb);
          continue;
        }
        if (stamp[nb] != out_mark) stamp[nb] = out_mark;
        int slot = -1;
        for (int j = 0; j < 3; ++j)
          if (tri[nb].adj[j] == ti) slot = j;
        boundary.push_back({a, b, nb, slot});
      }
    }

    // Fan from p over the boundary cycle; link siblings via start vertex.
    std::vector<std::pair<int, int>> start_of;  // (boundary a -> new tri id)
    start_of.reserve(boundary.size());
    std::vector<int> fresh(boundary.size());
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      const int id = alloc();
      fresh[i] = id;
      start_of.emplace_back(boundary[i].a, id);
    }
    auto find_start = [&](int v) {
      for (const auto& [a, id] : start_of)
        if (a == v) return id;
      throw GuardError("delaunay: cavity boundary is not a closed cycle");
    };
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      const BoundaryEdge& e = boundary[i];
      Tri& t = tri[fresh[i]];
      t.v[0] = e.a;
      t.v[1] = e.b;
      t.v[2] = p;
      t.adj[2] = e.outer;
      if (e.outer >= 0) tri[e.outer].adj[e.outer_slot] = fresh[i];
      t.adj[0] = find_start(e.b);  // across (b, p); adj[1] set below
    }
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      const int succ = tri[fresh[i]].adj[0];
      tri[succ].adj[1] = fresh[i];  // across (p, a) of the successor
    }
    for (const int ti : cavity) {
      alive[ti] = 0;
      freelist.push_back(ti);
    }
    last = fresh.empty() ? last : fresh[0];
  }
};

struct Scaffold {
  std::vector<cplx> pts;
  std::vector<int> off, dat;  // CSR adjacency

  NearestResult nearest(const cplx& c, int start) const {
    int cur = start;
    double best = std::abs(pts[cur] - c);
    bool improved = true;
    while (improved) {
      improved = false;
      for (int e = off[cur]; e < off[cur + 1]; ++e) {
        const int nb = dat[e];
        const double d = std::abs(pts[nb] - c);
        if (d < best) {
          best = d;
          cur = nb;
          improved = true;
          break;
        }
      }
    }
    return {cur, best};
  }
};

void check_distinct(const Sample& s) {
  std::vector<std::pair<double, double>> coords;
  coords.reserve(s.points.size());
  for (const HPoint& p : s.points) coords.emplace_back(p.rad_h, p.theta);
  std::sort(coords.begin(), coords.end());
  for (std::size_t i = 1; i < coords.size(); ++i)
    require(coords[i] != coords[i - 1], "points: must be pairwise distinct");
}

// Shared tail: canonical ordering, adjacency, edges, core flags.
void assemble(DelaunayComplex& c,
              std::vector<std::array<std::uint32_t, 3>> kept,
              std::vector<HDisk> disks, std::vector<std::uint64_t> edge_keys) {
  std::vector<std::uint32_t> perm(kept.size());
  for (std::uint32_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](std::uint32_t x, std::uint32_t y) {
    return kept[x] < kept[y];
  });

  c.triangles.resize(kept.size());
  c.circumdisks.resize(kept.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    c.triangles[i] = kept[perm[i]];
    c.circumdisks[i] = disks[perm[i]];
  }

  // Adjacency across shared edges, slot k opposite vertex k.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> slots;
  slots.reserve(c.triangles.size() * 3);
  for (std::size_t i = 0; i < c.triangles.size(); ++i) {
    const auto& t = c.triangles[i];
    slots.emplace_back(edge_key(t[1], t[2]), (i << 2) | 0);
    slots.emplace_back(edge_key(t[0], t[2]), (i << 2) | 1);
    slots.emplace_back(edge_key(t[0], t[1]), (i << 2) | 2);
  }
  std::sort(slots.begin(), slots.end());
  c.triangle_adjacency.assign(c.triangles.size(), {-1, -1, -1});
  for (std::size_t i = 0; i < slots.size();) {
    std::size_t j = i;
    while (j < slots.size() && slots[j].first == slots[i].first) ++j;
    guard(j - i <= 2, "triangles: an edge is shared by more than two");
    if (j - i == 2) {
      const auto [t1, s1] = std::pair(slots[i].second >> 2, slots[i].second & 3);
      const auto [t2, s2] =
          std::pair(slots[i + 1].second >> 2, slots[i + 1].second & 3);
      c.triangle_adjacency[t1][s1] = static_cast<std::int32_t>(t2);
      c.triangle_adjacency[t2][s2] = static_cast<std::int32_t>(t1);
    }
    i = j;
  }

  std::sort(edge_keys.begin(), edge_keys.end());
  edge_keys.erase(std::unique(edge_keys.begin(), edge_keys.end()),
                  edge_keys.end());
  c.edges.resize(edge_keys.size());
  for (std::size_t i = 0; i < edge_keys.size(); ++i)
    c.edges[i] = {static_cast<std::uint32_t>(edge_keys[i] >> 32),
                  static_cast<std::uint32_t>(edge_keys[i] & 0xffffffffu), true};

  const double cutoff = c.sample.window_r - c.core_margin;
  c.vertex_core.resize(c.sample.points.size());
  for (std::size_t i = 0; i < c.sample.points.size(); ++i)
    c.vertex_core[i] = c.sample.points[i].rad_h <= cutoff ? 1 : 0;
  c.triangle_core.resize(c.triangles.size());
  for (std::size_t i = 0; i < c.triangles.size(); ++i) {
    const auto& t = c.triangles[i];
    c.triangle_core[i] =
        (c.vertex_core[t[0]] && c.vertex_core[t[1]] && c.vertex_core[t[2]])
            ? 1
            : 0;
  }
}

// n < 3: no triangles; a lone pair is witness-tested directly.
void build_tiny(DelaunayComplex& c) {
  std::vector<std::uint64_t> valid;
  if (c.sample.points.size() == 2) {
    std::vector<cplx> pts{c.sample.points[0].z(), c.sample.points[1].z()};
    auto brute = [&](const cplx& q) {
      NearestResult r{0, std::abs(pts[0] - q)};
      const double d1 = std::abs(pts[1] - q);
      if (d1 < r.dist) r = {1, d1};
      return r;
    };
    if (edge_witness(pts, 0, 1, brute)) valid.push_back(edge_key(0, 1));
  }
  assemble(c, {}, {}, std::move(valid));
}

}  // namespace

double core_margin_for(double lambda) {
  require(std::isfinite(lambda) && lambda >= 0.0,
          "lambda: must be finite and >= 0");
  if (lambda == 0.0) return std::numeric_limits<double>::infinity();
  const double target = std::log(1e-6);
  auto h = [&](double m) {
    return 0.75 * m - lambda * kPi * std::exp(0.25 * m) - target;
  };
  if (h(0.0) < 0.0) return 0.0;
  double lo = std::max(0.0, 4.0 * std::log(3.0 / (lambda * kPi)));
  double hi = lo + 1.0;
  while (h(hi) >= 0.0) hi = lo + 2.0 * (hi - lo);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    (h(m) < 0.0 ? hi : lo) = m;
  }
  return hi;
}

DelaunayComplex delaunay(const Sample& s) {
  return delaunay(s, core_margin_for(s.lambda));
}

DelaunayComplex delaunay(const Sample& s, double core_margin) {
  require(core_margin >= 0.0, "core_margin: must be >= 0");
  check_distinct(s);
  DelaunayComplex c;
  c.sample = s;
  c.core_margin = core_margin;
  const std::size_t n = s.points.size();
  if (n < 3) {
    build_tiny(c);
    return c;
  }

  BwMesh mesh(s.points);
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[static_cast<int>(i)] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const int sx = static_cast<int>(s.points[x].rad_h / 0.5);
    const int sy = static_cast<int>(s.points[y].rad_h / 0.5);
    if (sx != sy) return sx < sy;
    if (s.points[x].theta != s.points[y].theta)
      return s.points[x].theta < s.points[y].theta;
    return x < y;
  });
  for (const int p : order) mesh.insert(p);

  // Harvest: real triangles pruned by circumdisk legality; the full edge
  // universe feeds witness validation for pairs with no surviving face.
  std::vector<std::array<std::uint32_t, 3>> kept;
  std::vector<HDisk> disks;
  std::vector<std::uint64_t> universe;
  for (std::size_t i = 0; i < mesh.tri.size(); ++i) {
    if (!mesh.alive[i]) continue;
    const auto& t = mesh.tri[i];
    int vs[3] = {t.v[0], t.v[1], t.v[2]};
    std::sort(vs, vs + 3);
    for (int x = 0; x < 3; ++x)
      for (int y = x + 1; y < 3; ++y)
        if (vs[y] < mesh.n_real)
          universe.push_back(edge_key(static_cast<std::uint32_t>(vs[x]),
                                      static_cast<std::uint32_t>(vs[y])));
    if (vs[2] >= mesh.n_real) continue;
    auto disk = circumdisk(s.points[vs[0]], s.points[vs[1]], s.points[vs[2]]);
    if (!disk) continue;
    kept.push_back({static_cast<std::uint32_t>(vs[0]),
                    static_cast<std::uint32_t>(vs[1]),
                    static_cast<std::uint32_t>(vs[2])});
    disks.push_back(*disk);
  }
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()),
                 universe.end());

  std::vector<std::uint64_t> tri_edges;
  tri_edges.reserve(kept.size() * 3);
  for (const auto& t : kept) {
    tri_edges.push_back(edge_key(t[0], t[1]));
    tri_edges.push_back(edge_key(t[0], t[2]));
    tri_edges.push_back(edge_key(t[1], t[2]));
  }
  std::sort(tri_edges.begin(), tri_edges.end());
  tri_edges.erase(std::unique(tri_edges.begin(), tri_edges.end()),
                  tri_edges.end());

  Scaffold sc;
  sc.pts = mesh.pts;
  {
    std::vector<std::uint64_t> all;  // directed, over real + phantom ids
    for (std::size_t i = 0; i < mesh.tri.size(); ++i) {
      if (!mesh.alive[i]) continue;
      const auto& t = mesh.tri[i];
      for (int k = 0; k < 3; ++k) {
        const std::uint32_t a = static_cast<std::uint32_t>(t.v[k]);
        const std::uint32_t b = static_cast<std::uint32_t>(t.v[(k + 1) % 3]);
        all.push_back(edge_key(a, b));
        all.push_back(edge_key(b, a));
      }
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    sc.off.assign(mesh.pts.size() + 1, 0);
    sc.dat.resize(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      ++sc.off[(all[i] >> 32) + 1];
      sc.dat[i] = static_cast<int>(all[i] & 0xffffffffu);
    }
    for (std::size_t i = 1; i < sc.off.size(); ++i) sc.off[i] += sc.off[i - 1];
  }

  std::vector<std::uint64_t> valid = tri_edges;
  std::vector<std::uint64_t> candidates;
  std::set_difference(universe.begin(), universe.end(), tri_edges.begin(),
                      tri_edges.end(), std::back_inserter(candidates));
  for (const std::uint64_t key : candidates) {
    const int a = static_cast<int>(key >> 32);
    const int b = static_cast<int>(key & 0xffffffffu);
    auto nn = [&](const cplx& q) { return sc.nearest(q, a); };
    if (edge_witness(sc.pts, a, b, nn)) valid.push_back(key);
  }

  assemble(c, std::move(kept), std::move(disks), std::move(valid));
  return c;
}

DelaunayComplex delaunay_bruteforce(const Sample& s) {
  return delaunay_bruteforce(s, core_margin_for(s.lambda));
}

DelaunayComplex delaunay_bruteforce(const Sample& s, double core_margin) {
  require(core_margin >= 0.0, "core_margin: must be >= 0");
  guard(s.points.size() <= 200, "points: brute-force guard is n <= 200");
  check_distinct(s);
  DelaunayComplex c;
  c.sample = s;
  c.core_margin = core_margin;
  const int n = static_cast<int>(s.points.size());
  if (n < 3) {
    build_tiny(c);
    return c;
  }

  std::vector<cplx> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = s.points[i].z();

  std::vector<std::array<std::uint32_t, 3>> kept;
  std::vector<HDisk> disks;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const int sgn = orient_pts(pts[i], pts[j], pts[k]);
        if (sgn == 0) continue;
        bool empty = true;
        std::vector<int> ring;  // cocircular extras
        for (int x = 0; x < n && empty; ++x) {
          if (x == i || x == j || x == k) continue;
          const int side = sgn * incircle_pts(pts[i], pts[j], pts[k], pts[x]);
          if (side > 0) empty = false;
          if (side == 0) ring.push_back(x);
        }
        if (!empty) continue;
        auto disk = circumdisk(s.points[i], s.points[j], s.points[k]);
        if (!disk) continue;
        if (!ring.empty()) {
          // Cocircular tie: keep the fan rooted at the lowest index, so
          // exactly one triangulation of the cocircular polygon survives.
          if (i > ring.front()) continue;  // lowest of triple is i
          bool lowest = true;
          for (const int x : ring) lowest = lowest && i < x;
          if (!lowest) continue;
          ring.push_back(j);
          ring.push_back(k);
          const cplx ce(disk->center_e);
          std::sort(ring.begin(), ring.end(), [&](int x, int y) {
            return std::arg(pts[x] - ce) < std::arg(pts[y] - ce);
          });
          const double ai = std::arg(pts[i] - ce);
          auto pos = [&](int v) {
            // circular position of v after removing i, starting just past i
            double rel = std::arg(pts[v] - ce) - ai;
            if (rel < 0) rel += 2 * kPi;
            int idx = 0;
            for (const int u : ring) {
              double ru = std::arg(pts[u] - ce) - ai;
              if (ru < 0) ru += 2 * kPi;
              if (ru < rel) ++idx;
            }
            return idx;
          };
          if (std::abs(pos(j) - pos(k)) != 1) continue;
        }
        kept.push_back({static_cast<std::uint32_t>(i),
                        static_cast<std::uint32_t>(j),
                        static_cast<std::uint32_t>(k)});
        disks.push_back(*disk);
      }

  std::vector<std::uint64_t> tri_edges;
  for (const auto& t : kept) {
    tri_edges.push_back(edge_key(t[0], t[1]));
    tri_edges.push_back(edge_key(t[0], t[2]));
    tri_edges.push_back(edge_key(t[1], t[2]));
  }
  std::sort(tri_edges.begin(), tri_edges.end());
  tri_edges.erase(std::unique(tri_edges.begin(), tri_edges.end()),
                  tri_edges.end());

  auto brute = [&](const cplx& q) {
    NearestResult r{-1, std::numeric_limits<double>::infinity()};
    for (int x = 0; x < n; ++x) {
      const double d = std::abs(pts[x] - q);
      if (d < r.dist) r = {x, d};
    }
    return r;
  };
  std::vector<std::uint64_t> valid = tri_edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const std::uint64_t key = edge_key(static_cast<std::uint32_t>(a),
                                         static_cast<std::uint32_t>(b));
      if (std::binary_search(tri_edges.begin(), tri_edges.end(), key))
        continue;
      if (edge_witness(pts, a, b, brute)) valid.push_back(key);
    }

  assemble(c, std::move(kept), std::move(disks), std::move(valid));
  return c;
}

DualGraph dual_voronoi_graph(const DelaunayComplex& c, bool with_root) {
  DualGraph g;
  g.kind = DualGraph::Kind::voronoi_dual;
  g.n = static_cast<std::uint32_t>(c.sample.points.size());
  g.adjacency.assign(g.n, {});
  for (const auto& e : c.edges) {
    if (!e.valid) continue;
    g.adjacency[e.a].push_back(e.b);
    g.adjacency[e.b].push_back(e.a);
  }
  for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());
  g.core.assign(c.vertex_core.begin(), c.vertex_core.end());
  g.geometry = c.sample.points;
  if (with_root) {
    require(c.sample.conditioning == Conditioning::root_at_origin,
            "conditioning: root requested but sample has no origin nucleus");
    std::int64_t root = -1;
    for (std::size_t i = 0; i < c.sample.points.size(); ++i)
      if (c.sample.points[i].rad_h == 0.0) {
        root = static_cast<std::int64_t>(i);
        break;
      }
    require(root >= 0, "conditioning: origin nucleus not found");
    g.root = root;
  }
  return g;
}

DualGraph dual_delaunay_graph(const DelaunayComplex& c, bool with_root) {
  DualGraph g;
  g.kind = DualGraph::Kind::delaunay_dual;
  g.n = static_cast<std::uint32_t>(c.triangles.size());
  g.adjacency.assign(g.n, {});
  for (std::size_t i = 0; i < c.triangles.size(); ++i)
    for (const std::int32_t nb : c.triangle_adjacency[i])
      if (nb >= 0) g.adjacency[i].push_back(static_cast<std::uint32_t>(nb));
  for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());
  g.core.assign(c.triangle_core.begin(), c.triangle_core.end());
  g.geometry.reserve(g.n);
  for (const auto& d : c.circumdisks)
    g.geometry.push_back(d ? d->center_h : HPoint::origin());
  if (with_root) {
    std::int64_t root = -1;
    for (std::size_t i = 0; i < c.triangles.size() && root < 0; ++i) {
      const auto& t = c.triangles[i];
      cplx k0 = to_klein(c.sample.points[t[0]].z());
      cplx k1 = to_klein(c.sample.points[t[1]].z());
      cplx k2 = to_klein(c.sample.points[t[2]].z());
      const int o = orient_pts(k0, k1, k2);
      if (o == 0) continue;
      const cplx zero(0.0, 0.0);
      const bool inside = o * orient_pts(k0, k1, zero) >= 0 &&
                          o * orient_pts(k1, k2, zero) >= 0 &&
                          o * orient_pts(k2, k0, zero) >= 0;
      if (inside) root = static_cast<std::int64_t>(i);
    }
    require(root >= 0, "triangles: none contains the origin");
    g.root = root;
  }
  return g;
}

TriangleStar triangle_star(const DelaunayComplex& c,
                           std::uint32_t nucleus_index) {
  require(nucleus_index < c.sample.points.size(),
          "nucleus_index: out of range");
  TriangleStar star;
  const HPoint& nucleus = c.sample.points[nucleus_index];
  for (std::size_t i = 0; i < c.triangles.size(); ++i) {
    const auto& t = c.triangles[i];
    if (t[0] != nucleus_index && t[1] != nucleus_index &&
        t[2] != nucleus_index)
      continue;
    star.triangles.push_back(static_cast<std::uint32_t>(i));
    for (const std::uint32_t v : t)
      star.radius = std::max(star.radius, dist_h(nucleus, c.sample.points[v]));
  }
  return star;
}

}  // namespace hypvoro
