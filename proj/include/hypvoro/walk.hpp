#pragma once

#include <cstdint>
#include <vector>

#include "hypvoro/graph.hpp"
#include "hypvoro/hyperbolic.hpp"

namespace hypvoro {

// One simple-random-walk trajectory. theta[j] is the boundary angle of the
// vertex label position (atan2), NaN where the label sits at the origin;
// oscillation profiles always skip j = 0.
struct WalkTrace {
  enum class Stop { steps_exhausted, left_core };
  std::vector<std::uint32_t> vertices;  // X_0..X_n
  std::vector<std::int64_t> dist_g;     // d_G(root, X_j)
  std::vector<HPoint> positions;
  std::vector<double> theta;
  Stop stop = Stop::steps_exhausted;

  std::uint64_t steps() const { return vertices.size() - 1; }
};

// Uniform-neighbor walk from root, halting after max_steps or on entering a
// non-core vertex (which is still recorded). A precomputed distance table
// from bfs_distances(g, root) can be supplied to amortize ensembles.
WalkTrace simple_walk(const DualGraph& g, std::uint32_t root,
                      std::uint64_t max_steps, std::uint64_t seed,
                      const std::vector<std::int64_t>* dist = nullptr);

// Sample mean and bootstrap 95% CI of d_G(rho, X_k)/k at k = k_eval over the
// eligible traces (those that completed k_eval steps inside the core).
// `valid` requires the excluded fraction to stay below 5%.
struct SpeedEstimate {
  double mean = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t eligible = 0;
  std::uint64_t excluded = 0;
  bool valid = false;
};

SpeedEstimate speed_estimate(const std::vector<WalkTrace>& ensemble,
                             std::uint64_t k_eval);

// osc[k0 - 1] = circular diameter of {theta(X_j) : j >= k0}, nonincreasing
// in k0; index 0 of the trace is skipped.
std::vector<double> boundary_convergence(const WalkTrace& trace);

// Circular histogram of terminal angles over [-pi, pi).
struct AngleHistogram {
  std::uint32_t bins = 0;
  std::vector<double> mass;     // sums to 1
  std::vector<double> centers;  // bin midpoints
  double max_min_ratio = 0.0;   // exploratory; inf when a bin is empty
};

AngleHistogram harmonic_measure(const std::vector<WalkTrace>& ensemble,
                                std::uint32_t bins);

// Total-variation distance between the empirical one-step law of
// (deg X_0, deg X_1) and its transpose, with X_0 drawn degree-biased among
// core vertices (or uniformly when degree_biased is false, as a negative
// control).
double reversibility_test(const std::vector<DualGraph>& ensemble,
                          std::uint64_t trials, std::uint64_t seed,
                          bool degree_biased = true);

}  // namespace hypvoro
