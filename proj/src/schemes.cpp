#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "hypvoro/errors.hpp"
#include "hypvoro/predicates.hpp"
#include "hypvoro/rng.hpp"
#include "hypvoro/schemes.hpp"

namespace hypvoro {

namespace {

using Pair = std::array<std::uint32_t, 2>;

Pair norm_pair(Pair p) {
  if (p[0] > p[1]) std::swap(p[0], p[1]);
  return p;
}

// Union-find over {1,...,k} tracking the number of components among touched
// vertices; the prefix edge set is connected iff comps == 1.
struct TouchDsu {
  std::vector<std::uint32_t> parent;
  std::vector<char> touched;
  std::uint32_t comps = 0;

  explicit TouchDsu(std::uint32_t k) : parent(k + 1), touched(k + 1, 0) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void touch(std::uint32_t v) {
    if (!touched[v]) {
      touched[v] = 1;
      ++comps;
    }
  }
  void join(std::uint32_t a, std::uint32_t b) {
    touch(a);
    touch(b);
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
};

}  // namespace

SchemeCheck is_scheme(std::uint32_t k,
                      const std::vector<std::array<std::uint32_t, 2>>& f) {
  require(k >= 3, "k: must be >= 3");
  require(f.size() == k - 2, "f: must assign one pair to each of {3,...,k}");

  TouchDsu dsu(k);
  std::set<Pair> used;
  std::vector<std::uint32_t> hits(k + 1, 0);
  for (std::uint32_t i = 3; i <= k; ++i) {
    Pair p = f[i - 3];
    if (p[0] == p[1] || p[0] < 1 || p[1] < 1 || p[0] >= i || p[1] >= i)
      return {false, 2, i};
    p = norm_pair(p);
    if (i >= 4 && !used.insert(p).second) return {false, 1, i};
    dsu.join(p[0], p[1]);
    if (dsu.comps != 1) return {false, 3, i};
    if (++hits[p[1]] > 2) return {false, 4, i};
  }
  return {};
}

std::uint64_t enumerate_schemes(std::uint32_t k,
                                const std::function<void(const Scheme&)>& fn) {
  require(k >= 3, "k: must be >= 3");
  guard(k <= 9, "k: scheme enumeration is guarded to k <= 9");

  std::vector<Pair> chosen;
  chosen.reserve(k - 2);
  std::set<Pair> used;
  std::vector<std::uint32_t> hits(k + 1, 0);
  std::uint64_t count = 0;

  // is_scheme-equivalent incremental pruning: condition 2 holds by
  // construction, condition 1 via `used`, condition 4 via `hits`, and
  // condition 3 is rechecked on the prefix after each choice.
  auto prefix_connected = [&] {
    TouchDsu dsu(k);
    for (const Pair& p : chosen) dsu.join(p[0], p[1]);
    return dsu.comps == 1;
  };

  auto rec = [&](auto&& self, std::uint32_t i) -> void {
    if (i > k) {
      ++count;
      if (fn) fn(Scheme{k, chosen});
      return;
    }
    for (std::uint32_t a = 1; a + 1 < i; ++a) {
      for (std::uint32_t b = a + 1; b < i; ++b) {
        const Pair p{a, b};
        if (i >= 4 && used.count(p)) continue;
        if (hits[b] == 2) continue;
        chosen.push_back(p);
        if (prefix_connected()) {
          if (i >= 4) used.insert(p);
          ++hits[b];
          self(self, i + 1);
          --hits[b];
          if (i >= 4) used.erase(p);
        }
        chosen.pop_back();
      }
    }
  };
  rec(rec, 3);
  return count;
}

namespace {

std::array<Pair, 3> tri_edges(const std::array<std::uint32_t, 3>& t) {
  return {norm_pair({t[0], t[1]}), norm_pair({t[0], t[2]}),
          norm_pair({t[1], t[2]})};
}

// Strong connectivity of a triangle subset: BFS across shared edges.
bool strongly_connected(const DelaunayComplex& c,
                        const std::vector<std::uint32_t>& tris,
                        std::uint32_t start) {
  std::set<std::uint32_t> in(tris.begin(), tris.end());
  std::set<std::uint32_t> seen{start};
  std::vector<std::uint32_t> queue{start};
  while (!queue.empty()) {
    const std::uint32_t t = queue.back();
    queue.pop_back();
    for (std::int32_t n : c.triangle_adjacency[t]) {
      if (n < 0) continue;
      const auto u = static_cast<std::uint32_t>(n);
      if (in.count(u) && !seen.count(u)) {
        seen.insert(u);
        queue.push_back(u);
      }
    }
  }
  return seen.size() == tris.size();
}

// A strongly connected patch is simply connected iff e - l = v - 1.
bool euler_disk(const DelaunayComplex& c,
                const std::vector<std::uint32_t>& tris) {
  std::set<std::uint32_t> verts;
  std::set<Pair> edges;
  for (std::uint32_t t : tris) {
    for (std::uint32_t v : c.triangles[t]) verts.insert(v);
    for (const Pair& e : tri_edges(c.triangles[t])) edges.insert(e);
  }
  return edges.size() == verts.size() - 1 + tris.size();
}

std::set<Pair> patch_edges(const DelaunayComplex& c,
                           const std::vector<std::uint32_t>& tris) {
  std::set<Pair> edges;
  for (std::uint32_t t : tris)
    for (const Pair& e : tri_edges(c.triangles[t])) edges.insert(e);
  return edges;
}

// Recursive ordering following the three-case ear/boundary analysis. T is
// sorted; V holds boundary edges of the patch spanned by T.
std::vector<std::uint32_t> order_rec(const DelaunayComplex& c,
                                     std::vector<std::uint32_t> T,
                                     std::uint32_t t_star, std::set<Pair> V) {
  if (T.size() == 1) return {t_star};

  // Boundary edges appear in exactly one triangle of the patch.
  std::map<Pair, std::uint32_t> edge_count;
  std::map<Pair, std::uint32_t> edge_tri;
  for (std::uint32_t t : T) {
    for (const Pair& e : tri_edges(c.triangles[t])) {
      ++edge_count[e];
      edge_tri[e] = t;
    }
  }
  auto boundary_edges_of = [&](std::uint32_t t) {
    std::vector<Pair> out;
    for (const Pair& e : tri_edges(c.triangles[t]))
      if (edge_count[e] == 1) out.push_back(e);
    return out;
  };
  auto interior_edges_of = [&](std::uint32_t t) {
    std::vector<Pair> out;
    for (const Pair& e : tri_edges(c.triangles[t]))
      if (edge_count[e] == 2) out.push_back(e);
    return out;
  };
  auto without = [&](std::uint32_t t) {
    std::vector<std::uint32_t> rest;
    for (std::uint32_t u : T)
      if (u != t) rest.push_back(u);
    return rest;
  };
  auto v_restricted = [&](const std::vector<std::uint32_t>& tris) {
    const std::set<Pair> edges = patch_edges(c, tris);
    std::set<Pair> out;
    for (const Pair& e : V)
      if (edges.count(e)) out.insert(e);
    return out;
  };

  // Ears: triangles with two boundary edges. Removing one (placed last)
  // keeps the rest a disc; if only t_star is an ear it goes first instead,
  // seeding the recursion at its unique interior neighbour.
  std::uint32_t ear = 0;
  bool have_ear = false, star_ear = false;
  for (std::uint32_t t : T) {
    if (boundary_edges_of(t).size() < 2) continue;
    if (t == t_star) {
      star_ear = true;
      continue;
    }
    ear = t;
    have_ear = true;
    break;
  }
  if (have_ear) {
    const Pair e = interior_edges_of(ear).at(0);
    std::vector<std::uint32_t> rest = without(ear);
    std::set<Pair> v2 = v_restricted(rest);
    v2.insert(e);
    std::vector<std::uint32_t> out = order_rec(c, std::move(rest), t_star, v2);
    out.push_back(ear);
    return out;
  }
  if (star_ear) {
    const Pair e = interior_edges_of(t_star).at(0);
    std::vector<std::uint32_t> rest = without(t_star);
    std::uint32_t next = rest.front();
    for (std::uint32_t u : rest) {
      const auto es = tri_edges(c.triangles[u]);
      if (std::find(es.begin(), es.end(), e) != es.end()) next = u;
    }
    std::set<Pair> v2 = v_restricted(rest);
    v2.insert(e);
    std::vector<std::uint32_t> out{t_star};
    std::vector<std::uint32_t> tail = order_rec(c, std::move(rest), next, v2);
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
  }

  // No ears: every boundary triangle holds exactly one boundary edge. Choose
  // the lowest boundary edge that is not an isolated edge of (boundary ∩ V)
  // and whose triangle is not t_star.
  std::vector<Pair> loop;
  for (const auto& [e, n] : edge_count)
    if (n == 1) loop.push_back(e);
  auto isolated_in_v = [&](const Pair& e) {
    if (!V.count(e)) return false;
    for (const Pair& o : loop) {
      if (o == e || !V.count(o)) continue;
      if (o[0] == e[0] || o[0] == e[1] || o[1] == e[0] || o[1] == e[1])
        return false;
    }
    return true;
  };
  Pair pick{};
  bool found = false;
  for (const Pair& e : loop) {
    if (edge_tri[e] == t_star || isolated_in_v(e)) continue;
    pick = e;
    found = true;
    break;
  }
  require(found, "triangles: no admissible boundary edge");

  const std::uint32_t t = edge_tri[pick];
  std::vector<std::uint32_t> rest = without(t);
  if (strongly_connected(c, rest, rest.front())) {
    std::set<Pair> v2 = v_restricted(rest);
    std::vector<std::uint32_t> out = order_rec(c, std::move(rest), t_star, v2);
    out.push_back(t);
    return out;
  }

  // t separated the patch: split into the component holding t_star and the
  // remainder, reattach t to the latter, and seed both sides with the edge g
  // shared by t and the t_star side.
  std::set<std::uint32_t> in(rest.begin(), rest.end());
  std::set<std::uint32_t> seen;
  std::vector<std::uint32_t> queue;
  seen.insert(t_star);
  queue.push_back(t_star);
  while (!queue.empty()) {
    const std::uint32_t u = queue.back();
    queue.pop_back();
    for (std::int32_t n : c.triangle_adjacency[u]) {
      if (n < 0) continue;
      const auto w = static_cast<std::uint32_t>(n);
      if (in.count(w) && !seen.count(w)) {
        seen.insert(w);
        queue.push_back(w);
      }
    }
  }
  std::vector<std::uint32_t> t1, t2;
  for (std::uint32_t u : rest) (seen.count(u) ? t1 : t2).push_back(u);
  t2.push_back(t);
  std::sort(t2.begin(), t2.end());

  const std::set<Pair> t1_edges = patch_edges(c, t1);
  Pair g{};
  bool have_g = false;
  for (const Pair& e : interior_edges_of(t)) {
    if (t1_edges.count(e)) {
      g = e;
      have_g = true;
    }
  }
  require(have_g, "triangles: split lost the shared edge");

  std::set<Pair> v1 = v_restricted(t1);
  v1.insert(g);
  std::set<Pair> v2 = v_restricted(t2);
  v2.insert(g);
  std::vector<std::uint32_t> out = order_rec(c, std::move(t1), t_star, v1);
  std::vector<std::uint32_t> tail = order_rec(c, std::move(t2), t, v2);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

}  // namespace

std::vector<std::uint32_t> order_triangles(
    const DelaunayComplex& c, const std::vector<std::uint32_t>& tris,
    std::uint32_t t0, const std::vector<std::array<std::uint32_t, 2>>& boundary) {
  require(!tris.empty(), "triangles: empty collection");
  std::vector<std::uint32_t> T(tris);
  std::sort(T.begin(), T.end());
  require(std::adjacent_find(T.begin(), T.end()) == T.end(),
          "triangles: duplicate triangle id");
  for (std::uint32_t t : T)
    require(t < c.triangles.size(), "triangles: triangle id out of range");
  require(std::binary_search(T.begin(), T.end(), t0),
          "t0: not a member of the collection");
  require(strongly_connected(c, T, t0),
          "triangles: collection is not strongly connected");
  require(euler_disk(c, T), "triangles: union is not simply connected");

  // Supplied boundary edges must lie on the patch boundary.
  std::map<Pair, std::uint32_t> edge_count;
  for (std::uint32_t t : T)
    for (const Pair& e : tri_edges(c.triangles[t])) ++edge_count[e];
  std::set<Pair> V;
  for (Pair e : boundary) {
    e = norm_pair(e);
    auto it = edge_count.find(e);
    require(it != edge_count.end() && it->second == 1,
            "boundary: edge is not a boundary edge of the patch");
    V.insert(e);
  }
  return order_rec(c, std::move(T), t0, std::move(V));
}

OrderedScheme scheme_from_triangles(const DelaunayComplex& c,
                                    const std::vector<std::uint32_t>& tris,
                                    std::uint32_t t0) {
  const std::vector<std::uint32_t> ord = order_triangles(c, tris, t0);

  OrderedScheme out;
  std::map<std::uint32_t, std::uint32_t> pos;  // vertex id -> 1-based index
  std::array<std::uint32_t, 3> first = c.triangles[ord[0]];
  std::sort(first.begin(), first.end());
  for (std::uint32_t v : first) {
    out.order.push_back(v);
    pos[v] = static_cast<std::uint32_t>(out.order.size());
  }
  out.scheme.f.push_back({1, 2});

  std::set<Pair> union_edges;
  for (const Pair& e : tri_edges(c.triangles[ord[0]])) union_edges.insert(e);

  for (std::size_t i = 1; i < ord.size(); ++i) {
    const auto& tv = c.triangles[ord[i]];
    std::vector<Pair> shared;
    for (const Pair& e : tri_edges(tv))
      if (union_edges.count(e)) shared.push_back(e);
    require(shared.size() == 1 || shared.size() == 2,
            "triangles: ordering lost prefix adjacency");
    if (shared.size() == 1) {
      const Pair e = shared[0];
      std::uint32_t apex = tv[0] ^ tv[1] ^ tv[2] ^ e[0] ^ e[1];
      require(!pos.count(apex), "triangles: attachment vertex already placed");
      out.order.push_back(apex);
      pos[apex] = static_cast<std::uint32_t>(out.order.size());
      out.scheme.f.push_back(norm_pair({pos[e[0]], pos[e[1]]}));
    } else {
      for (std::uint32_t v : tv)
        require(pos.count(v), "triangles: double attachment with new vertex");
    }
    for (const Pair& e : tri_edges(tv)) union_edges.insert(e);
  }
  out.scheme.k = static_cast<std::uint32_t>(out.order.size());
  return out;
}

namespace {

int sgn_orient(const cplx& a, const cplx& b, const cplx& p) {
  return orient2d(a.real(), a.imag(), b.real(), b.imag(), p.real(), p.imag());
}

bool strictly_inside(const std::array<cplx, 3>& t, int orient, const cplx& p) {
  return sgn_orient(t[0], t[1], p) == orient &&
         sgn_orient(t[1], t[2], p) == orient &&
         sgn_orient(t[2], t[0], p) == orient;
}

bool proper_cross(const cplx& a, const cplx& b, const cplx& cc,
                  const cplx& d) {
  return sgn_orient(a, b, cc) * sgn_orient(a, b, d) < 0 &&
         sgn_orient(cc, d, a) * sgn_orient(cc, d, b) < 0;
}

// Interior overlap of two nondegenerate Klein (straight-edge) triangles:
// a proper edge crossing, or a vertex of one strictly inside the other.
bool interiors_overlap(const std::array<cplx, 3>& p, int op,
                       const std::array<cplx, 3>& q, int oq) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (proper_cross(p[i], p[(i + 1) % 3], q[j], q[(j + 1) % 3]))
        return true;
  for (int i = 0; i < 3; ++i)
    if (strictly_inside(p, op, q[i]) || strictly_inside(q, oq, p[i]))
      return true;
  return false;
}

}  // namespace

std::uint64_t count_planar_pairs(const std::vector<HPoint>& xs,
                                 bool nondegenerate) {
  const auto k = static_cast<std::uint32_t>(xs.size());
  require(k >= 3, "points: need at least 3 points");
  guard(k <= 7, "points: planar-pair counting is guarded to |X| <= 7");

  // Klein chart: hyperbolic triangles on xs are Euclidean triangles here.
  std::vector<cplx> kp(k);
  for (std::uint32_t i = 0; i < k; ++i) kp[i] = to_klein(xs[i]);

  std::vector<Scheme> schemes;
  enumerate_schemes(k, [&](const Scheme& s) { schemes.push_back(s); });

  std::vector<std::uint32_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0u);
  std::uint64_t count = 0;
  std::vector<std::array<cplx, 3>> tri;
  std::vector<int> orient;
  do {
    for (const Scheme& s : schemes) {
      tri.clear();
      orient.clear();
      bool ok = true;
      for (std::uint32_t i = 3; i <= k && ok; ++i) {
        const auto& [a, b] = s.pair_for(i);
        const std::array<cplx, 3> t{kp[perm[i - 1]], kp[perm[a - 1]],
                                    kp[perm[b - 1]]};
        const int o = sgn_orient(t[0], t[1], t[2]);
        if (o == 0) {
          if (nondegenerate) ok = false;  // degenerate triangle: reject pair
          continue;                       // flag off: vacuously planar
        }
        for (std::size_t j = 0; j < tri.size() && ok; ++j)
          if (interiors_overlap(tri[j], orient[j], t, o)) ok = false;
        tri.push_back(t);
        orient.push_back(o);
      }
      if (ok) ++count;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

namespace {

void check_z_params(const ZParams& p, std::uint32_t k) {
  require(p.alpha > 0, "alpha: must be > 0");
  require(p.beta > 0 && p.beta <= 1, "beta: must be in (0, 1]");
  require(k >= 3, "k: must be >= 3");
  require(p.scheme.k >= k, "scheme: needs at least k vertices");
  const SchemeCheck chk = is_scheme(p.scheme.k, p.scheme.f);
  require(chk.ok, "scheme: not a valid triangulation scheme");
}

// Shared evaluation core; fills z[0..k-2] with Z_2..Z_k and returns the sum
// of Z_3..Z_k.
double z_eval(const ZParams& p, std::uint32_t k, CounterRng* rng,
              std::vector<double>& z) {
  const double half_alpha = p.alpha / 2.0, inv_alpha = 1.0 / p.alpha;
  z.resize(k - 1);
  z[0] = p.beta * (rng ? std::pow(rng->next_double(), half_alpha) : 1.0);
  double sum = 0.0;
  for (std::uint32_t i = 3; i <= k; ++i) {
    const double u = rng ? std::pow(rng->next_double(), half_alpha) : 1.0;
    z[i - 2] = p.beta * u * std::pow(z[p.scheme.g(i) - 2], inv_alpha);
    sum += z[i - 2];
  }
  return sum;
}

}  // namespace

ZRealization z_realize(const ZParams& p, std::uint32_t k, bool unit_u) {
  check_z_params(p, k);
  ZRealization out;
  if (unit_u) {
    out.sum = z_eval(p, k, nullptr, out.z);
  } else {
    CounterRng rng(p.seed, 0);
    out.sum = z_eval(p, k, &rng, out.z);
  }
  return out;
}

double z_tail(const ZParams& p, std::uint32_t k, double eps,
              std::uint64_t trials) {
  check_z_params(p, k);
  require(p.alpha > 2, "alpha: tail mode requires alpha > 2");
  require(eps > 0, "eps: must be > 0");
  require(trials > 0, "trials: must be > 0");
  const double bound = eps * k;
  std::uint64_t hits = 0;
  std::vector<double> z;
  for (std::uint64_t t = 0; t < trials; ++t) {
    CounterRng rng(p.seed, t + 1);
    if (z_eval(p, k, &rng, z) <= bound) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace hypvoro
