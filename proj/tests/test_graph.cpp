#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "hypvoro/errors.hpp"
#include "hypvoro/graph.hpp"
#include "hypvoro/rng.hpp"
#include "hypvoro/sample.hpp"
#include "hypvoro/tessellation.hpp"

using namespace hypvoro;

namespace {

DualGraph make_graph(std::vector<std::vector<std::uint32_t>> adjacency) {
  DualGraph g;
  g.n = static_cast<std::uint32_t>(adjacency.size());
  g.adjacency = std::move(adjacency);
  for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());
  g.core.assign(g.n, 1);
  return g;
}

DualGraph path_graph(std::uint32_t n) {
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::uint32_t i = 0; i + 1 < n; ++i) {
    adj[i].push_back(i + 1);
    adj[i + 1].push_back(i);
  }
  return make_graph(std::move(adj));
}

// Rooted 3-regular tree truncated at the given depth.
DualGraph tree_graph(std::uint32_t depth) {
  std::vector<std::vector<std::uint32_t>> adj{{}};
  std::vector<std::uint32_t> level{0};
  for (std::uint32_t d = 0; d < depth; ++d) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t u : level) {
      const std::uint32_t kids = d == 0 ? 3 : 2;
      for (std::uint32_t c = 0; c < kids; ++c) {
        const std::uint32_t v = static_cast<std::uint32_t>(adj.size());
        adj.push_back({u});
        adj[u].push_back(v);
        next.push_back(v);
      }
    }
    level = std::move(next);
  }
  return make_graph(std::move(adj));
}

DualGraph k4() {
  return make_graph({{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}});
}

DualGraph sample_dual(double lambda, double window, std::uint64_t seed0,
                      std::size_t lo, std::size_t hi) {
  for (std::uint64_t s = seed0;; ++s) {
    Sample smp = sample_ball(lambda, window, s);
    if (smp.points.size() < lo || smp.points.size() > hi) continue;
    return dual_voronoi_graph(delaunay(smp, 0.0));
  }
}

// Exhaustive bitmask oracle: every connected subset containing the root, its
// boundary/volume, and clean/contaminated minima.
struct MaskScan {
  std::uint64_t subsets = 0, contaminated = 0;
  Rational clean_min = -1, cont_min = -1;
};

MaskScan mask_scan(const DualGraph& g, std::uint32_t root, std::uint32_t m) {
  MaskScan out;
  REQUIRE(g.n <= 20);
  for (std::uint32_t mask = 1; mask < (1u << g.n); ++mask) {
    if (!(mask >> root & 1)) continue;
    if (static_cast<std::uint32_t>(__builtin_popcount(mask)) > m) continue;
    // Flood from root within the mask.
    std::uint32_t seen = 1u << root;
    std::vector<std::uint32_t> stack{root};
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      stack.pop_back();
      for (std::uint32_t w : g.adjacency[u])
        if ((mask >> w & 1) && !(seen >> w & 1)) {
          seen |= 1u << w;
          stack.push_back(w);
        }
    }
    if (seen != mask) continue;
    ++out.subsets;
    std::uint64_t b = 0, vol = 0;
    bool clean = true;
    for (std::uint32_t v = 0; v < g.n; ++v) {
      if (!(mask >> v & 1)) continue;
      if (!g.core[v]) clean = false;
      vol += g.adjacency[v].size();
      for (std::uint32_t w : g.adjacency[v])
        if (!(mask >> w & 1)) ++b;
    }
    const Rational ratio = vol == 0 ? Rational(0) : Rational(b) / Rational(vol);
    if (clean) {
      if (out.clean_min < 0 || ratio < out.clean_min) out.clean_min = ratio;
    } else {
      ++out.contaminated;
      if (out.cont_min < 0 || ratio < out.cont_min) out.cont_min = ratio;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("bfs distances on small graphs") {
  DualGraph tri = make_graph({{1, 2}, {0, 2}, {0, 1}});
  CHECK(bfs_distances(tri, 0) == std::vector<std::int64_t>{0, 1, 1});
  DualGraph p5 = path_graph(5);
  CHECK(bfs_distances(p5, 0) == std::vector<std::int64_t>{0, 1, 2, 3, 4});
  DualGraph split = make_graph({{1}, {0}, {}});
  CHECK(bfs_distances(split, 0) == std::vector<std::int64_t>{0, 1, kUnreachable});
  CHECK_THROWS_AS(bfs_distances(p5, 5), ValidationError);
}

TEST_CASE("bfs distance is symmetric on sampled pairs") {
  DualGraph g = sample_dual(0.9, 2.5, 310000, 40, 120);
  CounterRng rng(91, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const auto a = static_cast<std::uint32_t>(rng.below(g.n));
    const auto b = static_cast<std::uint32_t>(rng.below(g.n));
    CHECK(bfs_distances(g, a)[b] == bfs_distances(g, b)[a]);
  }
}

TEST_CASE("ball growth on the truncated 3-regular tree") {
  const std::uint32_t depth = 10;
  DualGraph g = tree_graph(depth);
  GrowthReport rep = ball_growth(g, 0, depth);
  REQUIRE(rep.trusted_radius == depth);
  REQUIRE(rep.ball_sizes.size() == depth + 1);
  for (std::uint32_t r = 0; r <= depth; ++r)
    CHECK(rep.ball_sizes[r] == 3ull * (1ull << r) - 2);
  // |B|^{1/r} decreases toward the branching number 2.
  REQUIRE(rep.growth.size() == depth);
  for (std::size_t r = 2; r < rep.growth.size(); ++r)
    CHECK(rep.growth[r] < rep.growth[r - 1]);
  CHECK(rep.growth.back() > 2.0);
  CHECK(rep.growth.back() < 2.3);
}

TEST_CASE("ball growth stops at the first non-core contact") {
  const std::uint32_t depth = 6;
  DualGraph g = tree_graph(depth);
  // Mark the deepest layer non-core: its members only appear at distance 6.
  for (std::uint32_t v = 0; v < g.n; ++v)
    if (g.adjacency[v].size() == 1) g.core[v] = 0;
  GrowthReport rep = ball_growth(g, 0, depth);
  CHECK(rep.trusted_radius == depth - 1);
  CHECK(rep.ball_sizes.size() == depth);
  CHECK(rep.ball_sizes.back() == 3ull * (1ull << (depth - 1)) - 2);
  CHECK_THROWS_AS(ball_growth(g, g.n - 1, 3), ValidationError);  // non-core root
}

TEST_CASE("ball growth of a lone vertex is flat") {
  DualGraph g = make_graph({{}});
  GrowthReport rep = ball_growth(g, 0, 5);
  CHECK(rep.trusted_radius == 5);
  CHECK(rep.ball_sizes == std::vector<std::uint64_t>(6, 1));
  for (double x : rep.growth) CHECK(x == 1.0);
}

TEST_CASE("voronoi dual growth stays under a finite cap") {
  Sample s = condition_root(sample_ball(1.0, 8.0, 330001));
  DelaunayComplex c = delaunay(s, 2.0);
  DualGraph g = dual_voronoi_graph(c, true);
  GrowthReport rep = ball_growth(g, static_cast<std::uint32_t>(g.root), 12);
  CHECK(rep.trusted_radius >= 3);
  for (double x : rep.growth) {
    CHECK(x < 40.0);
    CHECK(x >= 1.0);
  }
}

TEST_CASE("boundary and volume functionals") {
  DualGraph tree = tree_graph(3);
  CHECK(boundary_volume(tree, {0}) == std::pair<std::uint64_t, std::uint64_t>{3, 3});
  DualGraph g4 = k4();
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = a + 1; b < 4; ++b)
      CHECK(boundary_volume(g4, {a, b}) ==
            std::pair<std::uint64_t, std::uint64_t>{4, 6});
  CHECK(boundary_volume(g4, {0, 1, 2, 3}) ==
        std::pair<std::uint64_t, std::uint64_t>{0, 12});
  CHECK(boundary_volume(g4, {}) == std::pair<std::uint64_t, std::uint64_t>{0, 0});
  CHECK_THROWS_AS(boundary_volume(g4, {0, 0}), ValidationError);
  CHECK_THROWS_AS(boundary_volume(g4, {7}), ValidationError);
}

TEST_CASE("expansion minimum on the path and the tree") {
  DualGraph p5 = path_graph(5);
  ExpansionReport rep = min_expansion(p5, 0, 3);
  CHECK(rep.max_size == 3);
  CHECK(rep.subsets_enumerated == 3);
  REQUIRE(rep.per_size_min.size() == 3);
  CHECK(rep.per_size_min[0] == Rational(1));
  CHECK(rep.per_size_min[1] == Rational(1, 3));
  CHECK(rep.per_size_min[2] == Rational(1, 5));
  CHECK(rep.global_min == Rational(1, 5));
  CHECK(rep.witness == std::vector<std::uint32_t>{0, 1, 2});
  CHECK_FALSE(rep.has_contaminated);

  DualGraph tree = tree_graph(4);
  ExpansionReport t2 = min_expansion(tree, 0, 2);
  CHECK(t2.global_min == Rational(2, 3));
  CHECK(t2.witness.size() == 2);

  ExpansionReport one = min_expansion(tree, 0, 1);
  CHECK(one.global_min == Rational(1));

  CHECK_THROWS_AS(min_expansion(p5, 0, 15), GuardError);
  CHECK_THROWS_AS(min_expansion(p5, 9, 3), ValidationError);
}

TEST_CASE("expansion search agrees with a bitmask oracle") {
  for (int rep = 0; rep < 8; ++rep) {
    DualGraph g = sample_dual(0.5, 2.0, 350000 + 17 * rep, 8, 16);
    const std::uint32_t root = rep % g.n;
    for (std::uint32_t m : {1u, 3u, 5u, static_cast<std::uint32_t>(g.n)}) {
      if (m > 14) continue;
      ExpansionReport er = min_expansion(g, root, m);
      MaskScan ms = mask_scan(g, root, m);
      CHECK(er.subsets_enumerated == ms.subsets);
      CHECK(er.global_min == ms.clean_min);
      CHECK_FALSE(er.has_contaminated);
    }
  }
}

TEST_CASE("subsets touching non-core vertices are reported separately") {
  DualGraph g = sample_dual(0.5, 2.0, 370000, 10, 16);
  // Only the root's immediate neighborhood is core.
  const std::uint32_t root = 0;
  const auto dist = bfs_distances(g, root);
  for (std::uint32_t v = 0; v < g.n; ++v)
    g.core[v] = dist[v] >= 0 && dist[v] <= 1;
  ExpansionReport er = min_expansion(g, root, 6);
  MaskScan ms = mask_scan(g, root, 6);
  CHECK(er.subsets_enumerated == ms.subsets);
  CHECK(er.global_min == ms.clean_min);
  CHECK(er.has_contaminated);
  CHECK(er.contaminated_count == ms.contaminated);
  CHECK(er.contaminated_min == ms.cont_min);
  for (std::uint32_t v : er.witness) CHECK(g.core[v]);
}

TEST_CASE("expansion minimum never increases with m") {
  for (int rep = 0; rep < 10; ++rep) {
    DualGraph g = sample_dual(0.8, 2.5, 390000 + rep, 20, 90);
    Rational prev = -1;
    for (std::uint32_t m = 1; m <= 6; ++m) {
      ExpansionReport er = min_expansion(g, 1, m);
      if (m > 1) CHECK(er.global_min <= prev);
      prev = er.global_min;
      // Witness stays connected and anchored.
      REQUIRE(!er.witness.empty());
      CHECK(std::count(er.witness.begin(), er.witness.end(), 1u) == 1);
      std::set<std::uint32_t> ws(er.witness.begin(), er.witness.end());
      std::vector<std::uint32_t> stack{1};
      std::set<std::uint32_t> seen{1};
      while (!stack.empty()) {
        std::uint32_t u = stack.back();
        stack.pop_back();
        for (std::uint32_t w : g.adjacency[u])
          if (ws.count(w) && !seen.count(w)) {
            seen.insert(w);
            stack.push_back(w);
          }
      }
      CHECK(seen.size() == er.witness.size());
      if (er.global_min > 0) {
        for (std::uint32_t k = 0; k < m; ++k)
          if (er.per_size_min[k] >= 0) CHECK(er.per_size_min[k] > 0);
      }
    }
  }
}

TEST_CASE("expansion minimum is independent of vertex labels") {
  for (int rep = 0; rep < 5; ++rep) {
    DualGraph g = sample_dual(0.7, 2.5, 410000 + rep, 15, 60);
    CounterRng rng(1000 + rep, 0);
    std::vector<std::uint32_t> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[rng.below(i)]);
    DualGraph h;
    h.kind = g.kind;
    h.n = g.n;
    h.core.assign(g.n, 1);
    h.adjacency.resize(g.n);
    for (std::uint32_t v = 0; v < g.n; ++v) {
      for (std::uint32_t w : g.adjacency[v]) h.adjacency[perm[v]].push_back(perm[w]);
    }
    for (auto& nb : h.adjacency) std::sort(nb.begin(), nb.end());
    ExpansionReport a = min_expansion(g, 2, 5);
    ExpansionReport b = min_expansion(h, perm[2], 5);
    CHECK(a.global_min == b.global_min);
    CHECK(a.subsets_enumerated == b.subsets_enumerated);
    for (std::uint32_t k = 0; k < 5; ++k)
      CHECK(a.per_size_min[k] == b.per_size_min[k]);
  }
}

TEST_CASE("delta functional is an exact rational") {
  DualGraph tree = tree_graph(2);
  CHECK(delta_i(tree, {}, Rational(3, 7)) == Rational(0));
  CHECK(delta_i(tree, {0}, Rational(1)) == Rational(-2));  // degree 3
  DualGraph p2 = path_graph(2);
  CHECK(delta_i(p2, {0}, Rational(2)) == Rational(1));  // degree 1
  CHECK(delta_i(p2, {0, 1}, Rational(1, 2)) == Rational(1));
}

TEST_CASE("isolated core singletons and guards") {
  DualGraph p2 = path_graph(2);
  CHECK(is_isolated_core(p2, {0}, Rational(2)));
  DualGraph tree = tree_graph(2);
  CHECK_FALSE(is_isolated_core(tree, {0}, Rational(1)));
  DualGraph deep = tree_graph(3);  // 22 vertices
  std::vector<std::uint32_t> big(21);
  std::iota(big.begin(), big.end(), 0);
  CHECK_THROWS_AS(is_isolated_core(deep, big, Rational(1)), GuardError);
  CHECK(is_isolated_core(p2, {}, Rational(1)));  // vacuous
}

TEST_CASE("unions of isolated cores stay isolated") {
  // Two far-apart pendant edges inside one graph.
  DualGraph g = make_graph({{1}, {0}, {3}, {2}, {5, 6}, {4, 6}, {4, 5}});
  CHECK(is_isolated_core(g, {0, 1}, Rational(1)));
  CHECK(is_isolated_core(g, {2, 3}, Rational(1)));
  CHECK(is_isolated_core(g, {0, 1, 2, 3}, Rational(1)));

  // Scan a random dual graph for small isolated cores and check all pairwise
  // unions.
  DualGraph d = sample_dual(0.5, 2.0, 430000, 8, 12);
  const Rational i(3, 2);
  std::vector<std::vector<std::uint32_t>> cores;
  for (std::uint32_t mask = 1; mask < (1u << d.n); ++mask) {
    if (__builtin_popcount(mask) > 8) continue;
    std::vector<std::uint32_t> s;
    for (std::uint32_t v = 0; v < d.n; ++v)
      if (mask >> v & 1) s.push_back(v);
    if (is_isolated_core(d, s, i)) cores.push_back(std::move(s));
  }
  int pairs = 0;
  for (std::size_t a = 0; a < cores.size() && pairs < 200; ++a) {
    for (std::size_t b = a + 1; b < cores.size() && pairs < 200; ++b) {
      std::set<std::uint32_t> u(cores[a].begin(), cores[a].end());
      u.insert(cores[b].begin(), cores[b].end());
      if (u.size() > 16) continue;
      ++pairs;
      CHECK(is_isolated_core(d, std::vector<std::uint32_t>(u.begin(), u.end()), i));
    }
  }
  CHECK(pairs > 0);
}

TEST_CASE("thinned voronoi duals keep a positive expansion floor") {
  Rational floor = -1;
  for (int seed = 0; seed < 50; ++seed) {
    Sample base = sample_ball(1.0, 6.0, 450000 + seed);
    Sample thin = hardcore_thin(base, 1.0);
    Sample rooted = condition_root(thin);
    DelaunayComplex c = delaunay(rooted, 2.0);
    DualGraph g = dual_voronoi_graph(c, true);
    ExpansionReport er =
        min_expansion(g, static_cast<std::uint32_t>(g.root), 10);
    REQUIRE(er.global_min >= 0);
    CHECK(er.global_min > 0);
    if (floor < 0 || er.global_min < floor) floor = er.global_min;
  }
  CHECK(floor > 0);
  MESSAGE("thinned expansion floor over 50 seeds: ",
          floor.convert_to<double>());
}
