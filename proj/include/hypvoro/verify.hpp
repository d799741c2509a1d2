#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypvoro/graph.hpp"
#include "hypvoro/hyperbolic.hpp"
#include "hypvoro/sample.hpp"
#include "hypvoro/tessellation.hpp"

namespace hypvoro {

struct GridPoint {
  std::vector<double> params;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double bound = 0.0;
  bool pass = false;
};

// One verifier run: an estimate per grid point with its CI, the bound it is
// held against, and a per-point verdict.  Reports are pure functions of
// (parameters, seed).
struct VerificationReport {
  std::string name;
  std::vector<std::string> axes;
  std::vector<GridPoint> points;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// Tail of the root's triangle star: P[star not contained in B(0,r)] per grid
// radius, from fresh conditioned samples on a window of max r + margin.  The
// bound column carries the decay exponent 3r/4 - lambda*pi*e^(r/4); a point
// passes when the empirical log-slope is at least that steep (the first point
// and zero-event points pass by convention).  Events are computed from one
// star reach per sample, so they are nested across the grid by construction.
VerificationReport tail_triangle(double lambda,
                                 const std::vector<double>& r_grid,
                                 double window_margin, std::uint64_t trials,
                                 std::uint64_t seed);

struct RegionEstimate {
  double p_hat = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t events = 0;
  double ratio = 0.0;     // p_hat * d(0,x) * ball_area(window_r) / theta
  double ratio_hi = 0.0;  // same normalization applied to the upper CI end
};

// P[Vol(triangle(x, 0, z)) <= theta and the circumdisk exists] for x at
// Euclidean coordinate x_e on the real axis and z area-uniform in
// B(0, window_r), with the volume-normalized ratio.
RegionEstimate geometry_region(double x_e, double theta, double window_r,
                               std::uint64_t trials, std::uint64_t seed);

// Max |triangle_area(0, x, y) - alpha| over n_probe points y where the ray
// from 1/x_e at angle alpha/2 to the negative real axis crosses the disk.
double locus_check(double x_e, double alpha, std::uint32_t n_probe);

struct EllLengths {
  double l1_closed = 0.0;  // x cos(phi)
  double l2_closed = 0.0;  // x cos(phi) + sqrt(1 - x^2) sin(phi)
  double l1_direct = 0.0;  // ray meets the circle with diameter [0, x]
  double l2_direct = 0.0;  // ray meets the horocycle through 0 and x
};

// Euclidean lengths cut on the ray from 0 at angle phi, by closed form and
// by direct ray-circle intersection.
EllLengths ell_formulas(double x_e, double phi);

struct PhiStar {
  double closed = 0.0;  // half the arcsin of the quadratic-formula root
  double direct = 0.0;  // angle at 0 of the first ray-circle intersection
};

// The critical angle at which the area-theta locus first meets the circle
// with diameter [0, x], by both routes.  Throws when the locus misses the
// circle (theta too large for this x_e).
PhiStar phi_star_check(double x_e, double theta);

// Worst ratio hyperbolic_hull_area / (4 pi |S|) over the given point sets.
double hull_bound(const std::vector<std::vector<HPoint>>& sets);

// Minimum mean triangle area over connected, simply connected triangle
// collections through the origin, per collection size 1..k_max.  Size rows
// with no admissible collection carry value -1.
VerificationReport strong_area_scan(const DelaunayComplex& c,
                                    std::uint32_t k_max);

// Per-annulus minimum of d_G(root, v) / d_H(root nucleus, v nucleus) over
// core vertices, annuli [r, r+1) by hyperbolic distance.
VerificationReport distance_compare(const DualGraph& voronoi_dual);

// Min graph distance from a graph geodesic between the cells of -r and +r on
// the real axis to the root cell.
std::int64_t geodesic_deviation(const DelaunayComplex& c, double r);

}  // namespace hypvoro
