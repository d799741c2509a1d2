#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypvoro/hyperbolic.hpp"

namespace hypvoro {

enum class Conditioning { none, root_at_origin, skeleton_vertex_at_origin };

const char* conditioning_name(Conditioning c);
Conditioning conditioning_from_name(const std::string& name);

// A point configuration drawn on a hyperbolic disk window.
struct Sample {
  double lambda = 0.0;
  double window_r = 0.0;
  std::uint64_t seed = 0;
  Conditioning conditioning = Conditioning::none;
  std::vector<HPoint> points;
};

// Poisson(lambda * ball_area(window_r)) many points, radii by inverse CDF,
// angles uniform.  Bit-identical for identical arguments.
Sample sample_ball(double lambda, double window_r, std::uint64_t seed);

// Prepends the origin (the root); rejects already-conditioned samples.
Sample condition_root(const Sample& s);

// Appends two points uniform on the circle through the nearest point of s,
// so the smallest closed disk about the origin touching s has three
// boundary points.  Never resamples the base configuration.
Sample condition_skeleton_vertex(const Sample& s, std::uint64_t seed);

// Sequential hard-core thinning: scan in a random order determined by
// s.seed, keep a point iff it is >= min_sep from everything already kept.
// Output preserves the original point order.
Sample hardcore_thin(const Sample& s, double min_sep);

}  // namespace hypvoro
