#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "hypvoro/errors.hpp"
#include "hypvoro/rng.hpp"
#include "hypvoro/walk.hpp"

namespace hypvoro {

namespace {

double angle_of(const HPoint& p) {
  const cplx z = p.z();
  if (z.real() == 0.0 && z.imag() == 0.0)
    return std::numeric_limits<double>::quiet_NaN();
  return std::atan2(z.imag(), z.real());
}

// Max pairwise circular distance of a sorted angle list: min(2*pi - largest
// gap, pi).
double circ_diameter(const std::vector<double>& sorted) {
  if (sorted.size() < 2) return 0.0;
  double max_gap = kTwoPi - (sorted.back() - sorted.front());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    max_gap = std::max(max_gap, sorted[i] - sorted[i - 1]);
  return std::min(kTwoPi - max_gap, kPi);
}

}  // namespace

WalkTrace simple_walk(const DualGraph& g, std::uint32_t root,
                      std::uint64_t max_steps, std::uint64_t seed,
                      const std::vector<std::int64_t>* dist) {
  require(root < g.n, "root: vertex id out of range");
  require(g.geometry.size() == g.n, "graph: geometry labels missing");
  require(g.core.size() == g.n, "graph: core flags missing");

  std::vector<std::int64_t> local;
  if (!dist) {
    local = bfs_distances(g, root);
    dist = &local;
  }
  require(dist->size() == g.n, "dist: table size mismatch");

  WalkTrace t;
  auto push = [&](std::uint32_t v) {
    t.vertices.push_back(v);
    t.dist_g.push_back((*dist)[v]);
    t.positions.push_back(g.geometry[v]);
    t.theta.push_back(angle_of(g.geometry[v]));
  };
  push(root);
  if (!g.core[root]) {
    t.stop = WalkTrace::Stop::left_core;
    return t;
  }

  CounterRng rng(seed, 0);
  for (std::uint64_t j = 0; j < max_steps; ++j) {
    const auto& nbrs = g.adjacency[t.vertices.back()];
    if (nbrs.empty()) break;  // isolated vertex: nothing to walk on
    const std::uint32_t next = nbrs[rng.below(nbrs.size())];
    push(next);
    if (!g.core[next]) {
      t.stop = WalkTrace::Stop::left_core;
      break;
    }
  }
  return t;
}

SpeedEstimate speed_estimate(const std::vector<WalkTrace>& ensemble,
                             std::uint64_t k_eval) {
  require(k_eval >= 1, "k_eval: must be >= 1");
  SpeedEstimate out;
  std::vector<double> ratios;
  for (const WalkTrace& t : ensemble) {
    const std::uint64_t n = t.steps();
    const bool eligible =
        k_eval < n ||
        (k_eval == n && t.stop == WalkTrace::Stop::steps_exhausted);
    if (!eligible) {
      ++out.excluded;
      continue;
    }
    ratios.push_back(static_cast<double>(t.dist_g[k_eval]) /
                     static_cast<double>(k_eval));
  }
  require(!ratios.empty(), "ensemble: no trace reaches k_eval inside the core");
  out.eligible = ratios.size();

  double sum = 0.0;
  for (double r : ratios) sum += r;
  out.mean = sum / static_cast<double>(ratios.size());

  // Percentile bootstrap, fixed internal stream for determinism.
  constexpr std::uint32_t kResamples = 2000;
  CounterRng rng(0x9d5a3c11u, 0);
  std::vector<double> means(kResamples);
  for (std::uint32_t b = 0; b < kResamples; ++b) {
    double s = 0.0;
    for (std::size_t i = 0; i < ratios.size(); ++i)
      s += ratios[rng.below(ratios.size())];
    means[b] = s / static_cast<double>(ratios.size());
  }
  std::sort(means.begin(), means.end());
  out.lo = means[static_cast<std::size_t>(0.025 * kResamples)];
  out.hi = means[static_cast<std::size_t>(0.975 * kResamples) - 1];
  out.valid = 20 * out.excluded < out.eligible + out.excluded;
  return out;
}

std::vector<double> boundary_convergence(const WalkTrace& trace) {
  std::vector<double> profile;
  const std::size_t n = trace.vertices.size();
  if (n < 2) return profile;
  for (std::size_t k0 = 1; k0 < n; ++k0) {
    std::vector<double> suffix;
    for (std::size_t j = k0; j < n; ++j)
      if (!std::isnan(trace.theta[j])) suffix.push_back(trace.theta[j]);
    std::sort(suffix.begin(), suffix.end());
    profile.push_back(circ_diameter(suffix));
  }
  return profile;
}

AngleHistogram harmonic_measure(const std::vector<WalkTrace>& ensemble,
                                std::uint32_t bins) {
  require(bins >= 1, "bins: must be >= 1");
  require(!ensemble.empty(), "ensemble: empty");
  for (const WalkTrace& t : ensemble)
    require(t.vertices.size() >= 2 && !std::isnan(t.theta.back()),
            "ensemble: trace without a terminal angle");

  AngleHistogram h;
  h.bins = bins;
  h.mass.assign(bins, 0.0);
  h.centers.resize(bins);
  const double w = kTwoPi / bins;
  for (std::uint32_t i = 0; i < bins; ++i) h.centers[i] = -kPi + (i + 0.5) * w;
  const double unit = 1.0 / static_cast<double>(ensemble.size());
  for (const WalkTrace& t : ensemble) {
    double a = t.theta.back();
    if (a >= kPi) a -= kTwoPi;
    auto idx = static_cast<std::int64_t>(std::floor((a + kPi) / w));
    idx = std::clamp<std::int64_t>(idx, 0, bins - 1);
    h.mass[static_cast<std::size_t>(idx)] += unit;
  }
  double lo = h.mass[0], hi = h.mass[0];
  for (double m : h.mass) {
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  h.max_min_ratio = lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
  return h;
}

double reversibility_test(const std::vector<DualGraph>& ensemble,
                          std::uint64_t trials, std::uint64_t seed,
                          bool degree_biased) {
  require(!ensemble.empty(), "ensemble: empty");
  require(trials > 0, "trials: must be > 0");

  // Per-graph core vertex lists with cumulative degree weights.
  struct Table {
    std::vector<std::uint32_t> verts;
    std::vector<std::uint64_t> cum;  // degree-weight prefix sums
    std::uint64_t total = 0;
  };
  std::vector<Table> tables(ensemble.size());
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const DualGraph& g = ensemble[i];
    require(g.core.size() == g.n, "graph: core flags missing");
    Table& tb = tables[i];
    for (std::uint32_t v = 0; v < g.n; ++v) {
      if (!g.core[v] || g.adjacency[v].empty()) continue;
      tb.verts.push_back(v);
      tb.total += g.adjacency[v].size();
      tb.cum.push_back(tb.total);
    }
    require(!tb.verts.empty(), "graph: no core vertex with neighbors");
  }

  std::map<std::pair<std::uint64_t, std::uint64_t>, double> joint;
  const double unit = 1.0 / static_cast<double>(trials);
  for (std::uint64_t t = 0; t < trials; ++t) {
    CounterRng rng(seed, t + 1);
    const std::size_t gi = t % ensemble.size();
    const DualGraph& g = ensemble[gi];
    const Table& tb = tables[gi];
    std::uint32_t x0;
    if (degree_biased) {
      const std::uint64_t r = rng.below(tb.total);
      const auto it = std::upper_bound(tb.cum.begin(), tb.cum.end(), r);
      x0 = tb.verts[static_cast<std::size_t>(it - tb.cum.begin())];
    } else {
      x0 = tb.verts[rng.below(tb.verts.size())];
    }
    const auto& nbrs = g.adjacency[x0];
    const std::uint32_t x1 = nbrs[rng.below(nbrs.size())];
    joint[{nbrs.size(), g.adjacency[x1].size()}] += unit;
  }

  double tv = 0.0;
  for (const auto& [key, p] : joint) {
    const auto it = joint.find({key.second, key.first});
    if (it == joint.end())
      tv += 2.0 * p;  // the reversed key carries |0 - p| and is never visited
    else
      tv += std::fabs(p - it->second);
  }
  return tv / 2.0;
}

}  // namespace hypvoro
