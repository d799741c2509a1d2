#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hypvoro/graph.hpp"
#include "hypvoro/hyperbolic.hpp"
#include "hypvoro/sample.hpp"

namespace hypvoro {

// Delaunay triangles of a sample: exactly the triples whose circumdisk is a
// legal hyperbolic disk empty of sample points.  Canonically ordered so the
// result is independent of construction order.
struct DelaunayComplex {
  Sample sample;
  double core_margin = 0.0;

  // Each triple ascending; list sorted lexicographically.
  std::vector<std::array<std::uint32_t, 3>> triangles;
  // adj[k] = triangle across the edge opposite vertex k, -1 if none.
  std::vector<std::array<std::int32_t, 3>> triangle_adjacency;
  std::vector<std::optional<HDisk>> circumdisks;

  struct Edge {
    std::uint32_t a, b;  // a < b
    bool valid;          // member of the dual (triangle-backed or witnessed)
  };
  std::vector<Edge> edges;  // sorted lexicographically

  std::vector<char> vertex_core;    // rad_h <= window_r - core_margin
  std::vector<char> triangle_core;  // all three vertices core
};

struct TriangleStar {
  std::vector<std::uint32_t> triangles;
  double radius = 0.0;  // sup of dist_h(nucleus, .) over the star
};

// One Voronoi cell: boundary corners in CCW order; side k runs from
// vertices[k] to vertices[(k+1) % size] and is either a geodesic segment or
// an arc of the window circle.  A clipped cell with no corners is the whole
// window disk.
struct VoronoiCell {
  std::uint32_t nucleus = 0;
  bool clipped = false;
  std::vector<HPoint> vertices;
  std::vector<char> side_is_arc;
};

struct VoronoiCells {
  double window_r = 0.0;
  std::vector<VoronoiCell> cells;  // one per nucleus
};

// Smallest m with exp(3m/4 - lambda*pi*e^(m/4)) < 1e-6; +inf when lambda=0.
double core_margin_for(double lambda);

DelaunayComplex delaunay(const Sample& s);
DelaunayComplex delaunay(const Sample& s, double core_margin);

// Direct-definition oracle: every triple tested for an existing, empty
// circumdisk with exact arithmetic.  Guarded to n <= 200.
DelaunayComplex delaunay_bruteforce(const Sample& s);
DelaunayComplex delaunay_bruteforce(const Sample& s, double core_margin);

DualGraph dual_voronoi_graph(const DelaunayComplex& c, bool with_root = false);
DualGraph dual_delaunay_graph(const DelaunayComplex& c, bool with_root = false);

VoronoiCells voronoi_cells(const DelaunayComplex& c);

TriangleStar triangle_star(const DelaunayComplex& c,
                           std::uint32_t nucleus_index);

// Hyperbolic area of a (possibly window-clipped) cell via the boundary
// curvature integral.
double cell_area(const VoronoiCell& cell, double window_r);

bool cell_contains(const VoronoiCell& cell, const HPoint& p);

}  // namespace hypvoro
