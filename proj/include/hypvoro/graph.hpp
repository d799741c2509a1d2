#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hypvoro/hyperbolic.hpp"

namespace hypvoro {

using Rational = boost::multiprecision::cpp_rational;

// Rooted dual graph of a tessellation: nuclei-with-Delaunay-edges
// (voronoi_dual) or triangles-with-shared-edge-adjacency (delaunay_dual).
struct DualGraph {
  enum class Kind { voronoi_dual, delaunay_dual };
  Kind kind = Kind::voronoi_dual;
  std::uint32_t n = 0;
  std::vector<std::vector<std::uint32_t>> adjacency;  // sorted, symmetric
  std::int64_t root = -1;                             // -1 when not requested
  std::vector<char> core;
  std::vector<HPoint> geometry;  // nucleus position / circumcenter
};

struct ExpansionReport {
  std::uint32_t max_size = 0;
  // Index k holds the minimum over connected root subsets of size k+1.
  std::vector<Rational> per_size_min;
  Rational global_min;
  std::vector<std::uint32_t> witness;
  std::uint64_t subsets_enumerated = 0;
  // Same quantities over subsets touching non-core vertices; excluded from
  // the headline minimum above.
  bool has_contaminated = false;
  Rational contaminated_min;
  std::uint64_t contaminated_count = 0;
};

std::vector<std::int64_t> bfs_distances(const DualGraph& g, std::uint32_t from);
constexpr std::int64_t kUnreachable = -1;

struct GrowthReport {
  std::vector<std::uint64_t> ball_sizes;  // |B(root, r)| for r = 0..trusted
  std::vector<double> growth;             // |B(root, r)|^(1/r), r >= 1
  std::uint32_t trusted_radius = 0;       // largest radius with no non-core contact
};
GrowthReport ball_growth(const DualGraph& g, std::uint32_t root,
                         std::uint32_t r_max);

std::pair<std::uint64_t, std::uint64_t> boundary_volume(
    const DualGraph& g, const std::vector<std::uint32_t>& s);

ExpansionReport min_expansion(const DualGraph& g, std::uint32_t root,
                              std::uint32_t m);

Rational delta_i(const DualGraph& g, const std::vector<std::uint32_t>& s,
                 const Rational& i);

bool is_isolated_core(const DualGraph& g, const std::vector<std::uint32_t>& s,
                      const Rational& i);

}  // namespace hypvoro
