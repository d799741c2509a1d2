#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "hypvoro/hyperbolic.hpp"
#include "hypvoro/tessellation.hpp"

namespace hypvoro {

// Triangulation scheme on k vertices: each i in {3,...,k} is attached to an
// unordered pair f(i) of earlier indices, subject to
//   (1) f injective on {4,...,k},
//   (2) f(i) is a pair of distinct indices in {1,...,i-1},
//   (3) every prefix {f(3),...,f(j)} is a connected edge set on the vertices
//       it touches,
//   (4) each j is the maximum of at most two pairs f(i).
// Pairs are stored sorted, so g(i) = max f(i) is the second entry. The edges
// i -> g(i) form a tree on {2,...,k} whose directed paths all end at 2.
struct Scheme {
  std::uint32_t k = 3;
  std::vector<std::array<std::uint32_t, 2>> f;  // f[i - 3] = f(i), sorted

  const std::array<std::uint32_t, 2>& pair_for(std::uint32_t i) const {
    return f[i - 3];
  }
  std::uint32_t g(std::uint32_t i) const { return f[i - 3][1]; }
};

// Validation verdict: ok, or the first violated condition together with the
// index at which the scan detected it (the pair index i for conditions 1, 2
// and 4, the prefix end j for condition 3). At a single index, malformed
// pairs report condition 2 first; then 1, 3, 4.
struct SchemeCheck {
  bool ok = true;
  std::uint32_t condition = 0;
  std::uint32_t index = 0;
};

SchemeCheck is_scheme(std::uint32_t k,
                      const std::vector<std::array<std::uint32_t, 2>>& f);

// Visits every valid scheme on k vertices exactly once, in ascending choice
// order, and returns the count. Guarded to k <= 9.
std::uint64_t enumerate_schemes(
    std::uint32_t k, const std::function<void(const Scheme&)>& fn = {});

// Orders a strongly connected collection of triangles with simply connected
// union so that t0 comes first, every prefix is strongly connected with
// simply connected union, and the set of singly-shared attachment edges
// together with the supplied boundary edges is connected. `boundary` must
// list edges (as sorted vertex-id pairs) of the patch boundary.
std::vector<std::uint32_t> order_triangles(
    const DelaunayComplex& c, const std::vector<std::uint32_t>& tris,
    std::uint32_t t0,
    const std::vector<std::array<std::uint32_t, 2>>& boundary = {});

// Vertex ordering plus scheme extracted from a triangle patch. `order` holds
// sample vertex ids; scheme index i spans the triangle on order[i-1],
// order[a-1], order[b-1] where {a, b} = f(i). The first triangle is t0 and
// every scheme triangle belongs to the patch.
struct OrderedScheme {
  std::vector<std::uint32_t> order;
  Scheme scheme;
};

OrderedScheme scheme_from_triangles(const DelaunayComplex& c,
                                    const std::vector<std::uint32_t>& tris,
                                    std::uint32_t t0);

// Exhaustive count of (ordering, scheme) pairs whose triangles have pairwise
// disjoint interiors. A degenerate (collinear) triangle disqualifies its pair
// unless nondegenerate is false, in which case it is skipped as vacuously
// planar. Guarded to |xs| <= 7.
std::uint64_t count_planar_pairs(const std::vector<HPoint>& xs,
                                 bool nondegenerate = true);

struct ZParams {
  double alpha = 3.0;
  double beta = 0.5;
  Scheme scheme;
  std::uint64_t seed = 0;
};

// One realization of Z_2 = beta U_2^(alpha/2),
// Z_i = beta U_i^(alpha/2) Z_g(i)^(1/alpha) with U_i iid uniform on (0, 1);
// z[i - 2] holds Z_i and sum runs over i >= 3. unit_u freezes every U_i at 1
// for deterministic evaluation.
struct ZRealization {
  std::vector<double> z;
  double sum = 0.0;
};

ZRealization z_realize(const ZParams& p, std::uint32_t k, bool unit_u = false);

// Monte Carlo estimate of P[sum_{i=3}^k Z_i <= eps * k] over the given number
// of trials, one counter stream per trial. Requires alpha > 2.
double z_tail(const ZParams& p, std::uint32_t k, double eps,
              std::uint64_t trials);

}  // namespace hypvoro
