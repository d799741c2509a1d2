#include "hypvoro/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hypvoro/errors.hpp"
#include "hypvoro/parallel.hpp"
#include "hypvoro/rng.hpp"

namespace hypvoro {

namespace {
// Stream 0 feeds the point count; point i draws from stream i + 1 so a
// parallel fill cannot reorder anything.  Thinning uses its own stream far
// away from the per-point range.
constexpr std::uint64_t kCountStream = 0;
constexpr std::uint64_t kThinStream = 0xff51afd7ed558ccdull;
}  // namespace

const char* conditioning_name(Conditioning c) {
  switch (c) {
    case Conditioning::none:
      return "none";
    case Conditioning::root_at_origin:
      return "root_at_origin";
    case Conditioning::skeleton_vertex_at_origin:
      return "skeleton_vertex_at_origin";
  }
  throw ValidationError("conditioning: unknown enum value");
}

Conditioning conditioning_from_name(const std::string& name) {
  if (name == "none") return Conditioning::none;
  if (name == "root_at_origin") return Conditioning::root_at_origin;
  if (name == "skeleton_vertex_at_origin")
    return Conditioning::skeleton_vertex_at_origin;
  throw ValidationError("conditioning: unknown name '" + name + "'");
}

Sample sample_ball(double lambda, double window_r, std::uint64_t seed) {
  require(std::isfinite(lambda) && lambda >= 0.0,
          "lambda: must be finite and >= 0");
  require(std::isfinite(window_r) && window_r > 0.0,
          "window_r: must be finite and > 0");
  require(window_r <= kRadCap, "window_r: exceeds the radius cap");

  Sample s;
  s.lambda = lambda;
  s.window_r = window_r;
  s.seed = seed;

  const double span = std::cosh(window_r) - 1.0;  // ball_area / (2 pi)
  const std::uint64_t n =
      CounterRng(seed, kCountStream).poisson(lambda * kTwoPi * span);
  s.points.resize(n);
  parallel_for(n, [&](std::size_t i) {
    CounterRng rng(seed, i + 1);
    const double rad = acosh1p(rng.next_double() * span);
    const double theta = rng.uniform(0.0, kTwoPi);
    s.points[i] = HPoint::polar(rad, theta);
  });
  return s;
}

Sample condition_root(const Sample& s) {
  require(s.conditioning == Conditioning::none,
          "conditioning: sample is already conditioned");
  Sample out = s;
  out.conditioning = Conditioning::root_at_origin;
  out.points.insert(out.points.begin(), HPoint::origin());
  return out;
}

Sample condition_skeleton_vertex(const Sample& s, std::uint64_t seed) {
  require(s.conditioning == Conditioning::none,
          "conditioning: sample is already conditioned");
  require(!s.points.empty(), "points: sample must be nonempty");
  double rho = s.points[0].rad_h;
  for (const HPoint& p : s.points) rho = std::min(rho, p.rad_h);

  CounterRng rng(seed, 0);
  Sample out = s;
  out.conditioning = Conditioning::skeleton_vertex_at_origin;
  out.points.push_back(HPoint::polar(rho, rng.uniform(0.0, kTwoPi)));
  out.points.push_back(HPoint::polar(rho, rng.uniform(0.0, kTwoPi)));
  return out;
}

Sample hardcore_thin(const Sample& s, double min_sep) {
  require(std::isfinite(min_sep) && min_sep > 0.0,
          "min_sep: must be finite and > 0");
  const std::size_t n = s.points.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  CounterRng rng(s.seed, kThinStream);
  for (std::size_t i = n; i > 1; --i)
    std::swap(order[i - 1], order[rng.below(i)]);

  // Kept indices sorted by rad_h; dist_h >= |rad_h difference| prunes the
  // pairwise scan to a radial band.
  std::vector<std::size_t> kept;
  std::vector<char> keep(n, 0);
  auto rad_of = [&](std::size_t i) { return s.points[i].rad_h; };
  for (std::size_t idx : order) {
    const double rad = rad_of(idx);
    auto lo = std::lower_bound(kept.begin(), kept.end(), rad - min_sep,
                               [&](std::size_t k, double v) { return rad_of(k) < v; });
    bool ok = true;
    for (auto it = lo; it != kept.end() && rad_of(*it) <= rad + min_sep; ++it) {
      if (dist_h(s.points[idx], s.points[*it]) < min_sep) {
        ok = false;
        break;
      }
    }
    if (ok) {
      keep[idx] = 1;
      auto pos = std::lower_bound(kept.begin(), kept.end(), rad,
                                  [&](std::size_t k, double v) { return rad_of(k) < v; });
      kept.insert(pos, idx);
    }
  }

  Sample out = s;
  out.points.clear();
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) out.points.push_back(s.points[i]);
  return out;
}

}  // namespace hypvoro
