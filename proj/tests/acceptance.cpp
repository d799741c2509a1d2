// Acceptance gate: fifteen numbered criteria, one pass/fail line each.
// Run all with no arguments or a single criterion with --only N.  Every
// tolerance, seed, and runtime limit is pinned here.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "hypvoro/graph.hpp"
#include "hypvoro/hyperbolic.hpp"
#include "hypvoro/io.hpp"
#include "hypvoro/rng.hpp"
#include "hypvoro/sample.hpp"
#include "hypvoro/schemes.hpp"
#include "hypvoro/tessellation.hpp"
#include "hypvoro/verify.hpp"
#include "hypvoro/walk.hpp"

using namespace hypvoro;

namespace {

std::string g_detail;

void detail(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, ap);
  va_end(ap);
  g_detail = buf;
}

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// ---- C1: closed-form geometry ---------------------------------------
bool c1_closed_forms() {
  const double b1 = ball_area(1.0);
  const double b2 = ball_area(2.0);
  const double d = dist_h(HPoint::origin(), HPoint::poincare({0.5, 0.0}));
  const bool ok = close(b1, 3.4122762652849023, 1e-9) &&
                  close(b2, 17.355387381771437, 1e-9) && close(d, std::log(3.0), 1e-9);
  detail("ball_area(1)=%.10f ball_area(2)=%.10f dist=%.12f", b1, b2, d);
  return ok;
}

// ---- C2: Delaunay oracle equivalence --------------------------------
bool c2_delaunay_oracle() {
  const double lambdas[] = {0.3, 0.6, 1.0, 1.5};
  const double windows[] = {2.0, 2.5, 3.0};
  std::size_t max_n = 0;
  for (int s = 1; s <= 200; ++s) {
    Sample smp = sample_ball(lambdas[s % 4], windows[s % 3], 9000 + s);
    if (smp.points.size() > (s % 2 ? 40u : 39u))
      smp.points.resize(s % 2 ? 40 : 39);
    if (s % 2 == 0) smp = condition_root(smp);
    max_n = std::max(max_n, smp.points.size());
    const DelaunayComplex fast = delaunay(smp, 1.0);
    const DelaunayComplex slow = delaunay_bruteforce(smp, 1.0);
    if (fast.triangles != slow.triangles) {
      detail("seed %d: triangle sets differ (%zu vs %zu)", 9000 + s, fast.triangles.size(),
             slow.triangles.size());
      return false;
    }
  }
  detail("200 seeds, max n=%zu", max_n);
  return true;
}

// ---- C3: angle-defect locus -----------------------------------------
bool c3_locus() {
  double worst = 0.0;
  for (int j = 0; j < 10; ++j)
    for (int k = 0; k < 10; ++k)
      worst = std::max(worst, locus_check(0.55 + 0.045 * j, 0.11 * (k + 1), 64));
  detail("worst deviation %.3g", worst);
  return worst < 1e-6;
}

// ---- C4: chord-length and critical-angle formula agreement ----------
bool c4_formula_agreement() {
  double worst_ell = 0.0;
  for (int i = 1; i <= 18; ++i)
    for (int j = 0; j <= 15; ++j) {
      const EllLengths l = ell_formulas(0.05 * i, 0.1 * j);
      worst_ell = std::max({worst_ell, std::fabs(l.l1_closed - l.l1_direct),
                            std::fabs(l.l2_closed - l.l2_direct)});
    }
  double worst_phi = 0.0;
  for (int i = 0; i <= 6; ++i) {
    const double x = 0.3 + 0.1 * i;
    const double theta_max = 2.0 * std::acos(std::sqrt(1.0 - x * x) / (1.0 - 0.5 * x * x));
    for (int j = 1; j <= 6; ++j) {
      const PhiStar p = phi_star_check(x, 0.15 * j * theta_max);
      worst_phi = std::max(worst_phi, std::fabs(p.closed - p.direct));
    }
  }
  detail("ell worst %.3g, phi* worst %.3g", worst_ell, worst_phi);
  return worst_ell < 1e-9 && worst_phi < 1e-9;
}

// ---- C5: hull volume bound ------------------------------------------
bool c5_hull_bound() {
  std::vector<std::vector<HPoint>> sets(1000);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    CounterRng rng(5000, i + 1);
    const std::size_t size = 3 + rng.below(98);
    const double window = 0.5 + 7.5 * rng.next_double();
    sets[i].reserve(size);
    for (std::size_t p = 0; p < size; ++p) {
      const double rad = acosh1p(rng.next_double() * (std::cosh(window) - 1.0));
      sets[i].push_back(HPoint::polar(rad, rng.uniform(-kPi, kPi)));
    }
  }
  const double worst = hull_bound(sets);
  detail("worst ratio %.6f", worst);
  return worst <= 1.0 && worst > 0.0;
}

// ---- C6: triangle tail decay ----------------------------------------
bool c6_tail_decay() {
  const std::vector<double> grid{2.0, 2.5, 3.0, 3.5, 7.252073264};
  const VerificationReport rep = tail_triangle(1.0, grid, 1.5, 10000, 606);
  bool ok = true;
  std::string vals;
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    const GridPoint& pt = rep.points[i];
    ok = ok && pt.pass;
    if (i > 0 && i < 4) ok = ok && pt.value < rep.points[i - 1].value;
    if (i < 4) ok = ok && pt.value > 0.0;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%.4g", i ? " " : "", pt.value);
    vals += buf;
  }
  // The last grid radius is the first r where exp(3r/4 - pi e^(r/4)) < 1e-6;
  // no sampled star may reach it.
  ok = ok && rep.points.back().value == 0.0;
  ok = ok && std::exp(0.75 * grid.back() - kPi * std::exp(grid.back() / 4.0)) < 1e-6;
  detail("p = [%s]", vals.c_str());
  return ok;
}

// ---- C7: 3-regularity and Euler count -------------------------------
bool c7_regularity_euler() {
  std::size_t cores = 0;
  for (int i = 0; i < 50; ++i) {
    const Sample s = condition_root(sample_ball(1.0, 10.0, 170000 + 7 * i));
    const DelaunayComplex c = delaunay(s);
    const DualGraph g = dual_delaunay_graph(c, true);
    for (std::uint32_t v = 0; v < g.n; ++v) {
      if (!g.core[v]) continue;
      ++cores;
      if (g.adjacency[v].size() != 3) {
        detail("seed %d: core vertex %u has degree %zu", 170000 + 7 * i, v,
               g.adjacency[v].size());
        return false;
      }
    }
  }
  // Fixtures triangulating their convex position: e - k = |X| - 1.
  const auto euler_gap = [](const Sample& s) {
    const DelaunayComplex c = delaunay(s, 0.5);
    std::size_t e = 0;
    for (const auto& ed : c.edges) e += ed.valid;
    return static_cast<std::int64_t>(e) - static_cast<std::int64_t>(c.triangles.size());
  };
  Sample fan;
  fan.lambda = 1.0;
  fan.window_r = 4.0;
  fan.points.push_back(HPoint::polar(2.0, kPi));  // apex behind an arc of points
  for (int j = 0; j < 7; ++j) fan.points.push_back(HPoint::polar(2.0, -0.9 + 0.3 * j));
  Sample strip;
  strip.lambda = 1.0;
  strip.window_r = 4.0;
  for (int j = 0; j < 6; ++j) {
    strip.points.push_back(HPoint::poincare({-0.5 + 0.2 * j, 0.017}));
    strip.points.push_back(HPoint::poincare({-0.4 + 0.2 * j, 0.31}));
  }
  const std::int64_t fan_gap = euler_gap(fan);
  const std::int64_t strip_gap = euler_gap(strip);
  detail("%zu core vertices all degree 3; fan e-k=%lld (n-1=%zu), strip e-k=%lld (n-1=%zu)",
         cores, static_cast<long long>(fan_gap), fan.points.size() - 1,
         static_cast<long long>(strip_gap), strip.points.size() - 1);
  return fan_gap == static_cast<std::int64_t>(fan.points.size()) - 1 &&
         strip_gap == static_cast<std::int64_t>(strip.points.size()) - 1;
}

// ---- C8: walk engine on d-regular trees -----------------------------
WalkTrace tree_distance_trace(std::uint32_t d, std::uint64_t steps, std::uint64_t seed) {
  WalkTrace t;
  CounterRng rng(seed, 0);
  std::int64_t dist = 0;
  for (std::uint64_t j = 0; j <= steps; ++j) {
    t.vertices.push_back(0);
    t.dist_g.push_back(dist);
    t.positions.push_back(HPoint::origin());
    t.theta.push_back(0.0);
    if (dist == 0)
      dist = 1;
    else
      dist += rng.below(d) == 0 ? -1 : 1;
  }
  return t;
}

bool c8_tree_speed() {
  std::string vals;
  for (const std::uint32_t d : {3u, 4u, 5u}) {
    std::vector<WalkTrace> ens;
    ens.reserve(200);
    for (int w = 0; w < 200; ++w) ens.push_back(tree_distance_trace(d, 400, 8800 * d + w));
    const SpeedEstimate est = speed_estimate(ens, 400);
    const double want = (d - 2.0) / d;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%sd=%u: %.4f (want %.4f)", vals.empty() ? "" : ", ", d,
                  est.mean, want);
    vals += buf;
    if (!close(est.mean, want, 0.02) || !est.valid) {
      detail("%s", vals.c_str());
      return false;
    }
  }
  detail("%s", vals.c_str());
  return true;
}

// ---- C9: positive speed on both duals -------------------------------
bool c9_positive_speed() {
  std::vector<WalkTrace> voro, dela;
  for (int i = 0; i < 4; ++i) {
    const Sample s = condition_root(sample_ball(1.0, 14.0, 190001 + i));
    const DelaunayComplex c = delaunay(s);
    for (const bool voronoi : {true, false}) {
      const DualGraph g = voronoi ? dual_voronoi_graph(c, true) : dual_delaunay_graph(c, true);
      const auto root = static_cast<std::uint32_t>(g.root);
      const auto dist = bfs_distances(g, root);
      auto& pool = voronoi ? voro : dela;
      for (int w = 0; w < 50; ++w) {
        const std::uint64_t seed =
            CounterRng(voronoi ? 9300 : 9301, 50ull * i + w + 1).next_u64();
        pool.push_back(simple_walk(g, root, 400, seed, &dist));
      }
    }
  }
  std::string vals;
  for (const bool voronoi : {true, false}) {
    const auto& pool = voronoi ? voro : dela;
    // k_eval: the largest step count keeping at least 95% of walks eligible.
    std::uint64_t k_eval = 0;
    for (std::uint64_t k = 1; k <= 400; ++k) {
      std::uint64_t elig = 0;
      for (const auto& t : pool)
        elig += k < t.steps() || (k == t.steps() && t.stop == WalkTrace::Stop::steps_exhausted);
      if (20 * (pool.size() - elig) < pool.size()) k_eval = k;
    }
    if (k_eval == 0) {
      detail("no k keeps 95%% of walks in core");
      return false;
    }
    const SpeedEstimate est = speed_estimate(pool, k_eval);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s%s: k=%llu mean=%.3f ci=[%.3f,%.3f]",
                  vals.empty() ? "" : "; ", voronoi ? "voronoi" : "delaunay",
                  static_cast<unsigned long long>(k_eval), est.mean, est.lo, est.hi);
    vals += buf;
    if (!est.valid || est.lo <= 0.0) {
      detail("%s", vals.c_str());
      return false;
    }
  }
  detail("%s", vals.c_str());
  return true;
}

// ---- C10: expansion positivity --------------------------------------
bool c10_expansion() {
  Rational worst10 = Rational(1000000);
  for (int i = 0; i < 50; ++i) {
    const Sample s = condition_root(sample_ball(1.0, 7.0, 150000 + 13 * i));
    const DelaunayComplex c = delaunay(s, 2.0);
    const DualGraph g = dual_voronoi_graph(c, true);
    const auto root = static_cast<std::uint32_t>(g.root);
    const ExpansionReport r10 = min_expansion(g, root, 10);
    for (std::size_t k = 0; k < r10.per_size_min.size(); ++k)
      if (!(r10.per_size_min[k] > Rational(0))) {
        detail("seed %d: size-%zu minimum not positive", 150000 + 13 * i, k + 1);
        return false;
      }
    // Headline minima from independent enumerations must be nonincreasing
    // in the size cap.
    const ExpansionReport r2 = min_expansion(g, root, 2);
    const ExpansionReport r5 = min_expansion(g, root, 5);
    if (!(r2.global_min >= r5.global_min && r5.global_min >= r10.global_min)) {
      detail("seed %d: headline minima not monotone in m", 150000 + 13 * i);
      return false;
    }
    worst10 = std::min(worst10, r10.global_min);
  }
  detail("50 seeds positive at sizes 1..10; min over all seeds %.4f",
         static_cast<double>(worst10));
  return true;
}

// ---- C11: scheme counts and planar-pair bound -----------------------
bool c11_schemes() {
  if (enumerate_schemes(3) != 1 || enumerate_schemes(4) != 3) {
    detail("scheme counts wrong: k=3 -> %llu, k=4 -> %llu",
           static_cast<unsigned long long>(enumerate_schemes(3)),
           static_cast<unsigned long long>(enumerate_schemes(4)));
    return false;
  }
  const double frozen_c = 1.35;
  std::uint64_t worst_count = 0;
  for (std::uint32_t k = 3; k <= 6; ++k) {
    for (int rep = 0; rep < 25; ++rep) {
      CounterRng rng(1100 + k, rep + 1);
      std::vector<HPoint> xs;
      xs.reserve(k);
      for (std::uint32_t p = 0; p < k; ++p) {
        const double rad = acosh1p(rng.next_double() * (std::cosh(4.0) - 1.0));
        xs.push_back(HPoint::polar(rad, rng.uniform(-kPi, kPi)));
      }
      const std::uint64_t count = count_planar_pairs(xs);
      const double bound = std::pow(frozen_c * k, k);
      worst_count = std::max(worst_count, count);
      if (static_cast<double>(count) > bound) {
        detail("k=%u rep=%d: %llu pairs exceeds (%.2fk)^k = %.0f", k, rep,
               static_cast<unsigned long long>(count), frozen_c, bound);
        return false;
      }
    }
  }
  detail("counts 1 and 3; planar pairs max %llu <= (1.35k)^k",
         static_cast<unsigned long long>(worst_count));
  return true;
}

// ---- C12: Z-process tail decay --------------------------------------
Scheme chain_scheme(std::uint32_t k) {
  Scheme s;
  s.k = k;
  for (std::uint32_t i = 3; i <= k; ++i) s.f.push_back({i - 2, i - 1});
  return s;
}

bool c12_z_tail() {
  // eps calibrated once at 1e5 trials (p10=0.116, p40=0.0013, ratio 88) and
  // frozen; the acceptance run re-measures at 1e6.
  const double eps = 0.003;
  const ZParams p10{3.0, 0.1, chain_scheme(10), 777};
  const ZParams p40{3.0, 0.1, chain_scheme(40), 778};
  const double q10 = z_tail(p10, 10, eps, 1000000);
  const double q40 = z_tail(p40, 40, eps, 1000000);
  detail("eps=%.3f P(k=10)=%.5f P(k=40)=%.5f ratio=%.1f", eps, q10, q40,
         q40 > 0 ? q10 / q40 : -1.0);
  return q40 > 0.0 && q10 >= 10.0 * q40;
}

// ---- C13: reversibility ---------------------------------------------
bool c13_reversibility() {
  std::vector<DualGraph> ens;
  for (int i = 0; i < 6; ++i) {
    const Sample s = condition_root(sample_ball(1.0, 12.0, 131000 + 17 * i));
    const DelaunayComplex c = delaunay(s, 7.252073264);
    ens.push_back(dual_voronoi_graph(c, true));
  }
  const double tv = reversibility_test(ens, 100000, 4242);

  DualGraph star;
  star.kind = DualGraph::Kind::voronoi_dual;
  star.n = 5;
  star.root = 0;
  star.adjacency = {{1, 2, 3, 4}, {0}, {0}, {0}, {0}};
  star.core.assign(5, 1);
  star.geometry.push_back(HPoint::origin());
  for (int l = 0; l < 4; ++l) star.geometry.push_back(HPoint::polar(1.0, 1.5 * l));
  const double control = reversibility_test({star}, 100000, 4242, false);
  detail("tv=%.4f (< 0.05), uniform star control=%.4f (> 0.2)", tv, control);
  return tv < 0.05 && control > 0.2;
}

// ---- C14: boundary convergence --------------------------------------
bool c14_boundary_convergence() {
  const Sample s = condition_root(sample_ball(1.0, 9.0, 140001));
  const DelaunayComplex c = delaunay(s, 2.0);
  const DualGraph g = dual_voronoi_graph(c, true);
  std::vector<double> first, tail;
  for (int w = 0; w < 100; ++w) {
    const WalkTrace t = simple_walk(g, static_cast<std::uint32_t>(g.root), 10000,
                                    CounterRng(9100, w + 1).next_u64());
    const std::vector<double> prof = boundary_convergence(t);
    if (prof.size() < 4) continue;
    first.push_back(prof.front());
    tail.push_back(prof[3 * prof.size() / 4]);
  }
  if (first.size() < 90) {
    detail("only %zu of 100 walks long enough", first.size());
    return false;
  }
  std::sort(first.begin(), first.end());
  std::sort(tail.begin(), tail.end());
  const double med_first = first[first.size() / 2];
  const double med_tail = tail[tail.size() / 2];
  detail("median osc %.3f -> %.4f over final quarter (ratio %.1f)", med_first, med_tail,
         med_first / med_tail);
  return med_first >= 4.0 * med_tail;
}

// ---- C15: pipeline determinism --------------------------------------
bool c15_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "hypvoro_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cli = HYPVORO_CLI_PATH;
  const char* threads[] = {"1", "3", "8"};
  std::string sample_text, graph_text, exp_text;
  for (int run = 0; run < 3; ++run) {
    const std::string tag = std::to_string(run);
    const std::string s = (dir / ("s" + tag + ".json")).string();
    const std::string g = (dir / ("g" + tag + ".json")).string();
    const std::string e = (dir / ("e" + tag + ".json")).string();
    const std::string env = std::string("HYPVORO_THREADS=") + threads[run] + " ";
    const auto sh = [&](const std::string& cmd) {
      return std::system((env + cli + " " + cmd + " >/dev/null 2>&1").c_str()) == 0;
    };
    if (!sh("sample --lambda 1 --radius-h 5 --seed 42 --condition root --out " + s) ||
        !sh("tessellate --in " + s + " --margin 1.5 --out " + g) ||
        !sh("expansion --in " + g + " --m 6 --out " + e)) {
      detail("pipeline run %d failed", run);
      return false;
    }
    const std::string st = read_text(s), gt = read_text(g), et = read_text(e);
    if (run == 0) {
      sample_text = st;
      graph_text = gt;
      exp_text = et;
    } else if (st != sample_text || gt != graph_text || et != exp_text) {
      detail("run %d (threads=%s) differs from run 0", run, threads[run]);
      return false;
    }
  }
  fs::remove_all(dir);
  detail("three runs byte-identical across HYPVORO_THREADS 1/3/8");
  return true;
}

struct Criterion {
  int id;
  const char* name;
  int limit_s;
  std::function<bool()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);

  const std::vector<Criterion> criteria = {
      {1, "closed-form geometry", 1, c1_closed_forms},
      {2, "delaunay oracle equivalence", 120, c2_delaunay_oracle},
      {3, "angle-defect locus", 30, c3_locus},
      {4, "formula agreement", 30, c4_formula_agreement},
      {5, "hull volume bound", 120, c5_hull_bound},
      {6, "triangle tail decay", 600, c6_tail_decay},
      {7, "3-regularity and euler count", 300, c7_regularity_euler},
      {8, "tree walk speed oracle", 60, c8_tree_speed},
      {9, "positive speed on duals", 900, c9_positive_speed},
      {10, "expansion positivity", 600, c10_expansion},
      {11, "scheme counts and planar pairs", 300, c11_schemes},
      {12, "z-process tail decay", 300, c12_z_tail},
      {13, "reversibility", 600, c13_reversibility},
      {14, "boundary convergence", 300, c14_boundary_convergence},
      {15, "pipeline determinism", 120, c15_determinism},
  };

  bool all_ok = true;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    g_detail.clear();
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.fn();
    } catch (const std::exception& e) {
      detail("exception: %s", e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = dt <= c.limit_s;
    all_ok = all_ok && ok && in_time;
    std::printf("C%02d %s  %s  [%s]  (%.1fs, limit %ds%s)\n", c.id, ok && in_time ? "pass" : "FAIL",
                c.name, g_detail.c_str(), dt, c.limit_s, in_time ? "" : " EXCEEDED");
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
