#include <algorithm>
#include <cmath>
#include <functional>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hypvoro/errors.hpp"
#include "hypvoro/graph.hpp"
#include "hypvoro/io.hpp"
#include "hypvoro/rng.hpp"
#include "hypvoro/sample.hpp"
#include "hypvoro/schemes.hpp"
#include "hypvoro/tessellation.hpp"
#include "hypvoro/verify.hpp"
#include "hypvoro/walk.hpp"
#include "json.hpp"

namespace {

using namespace hypvoro;
using ordered_json = nlohmann::ordered_json;

// Window radii are canonically hyperbolic; --radius-e supplies the Euclidean
// representative r_e in (0, 1) with rad_h = 2 atanh(r_e).
struct RadiusOpt {
  double rad_h = std::numeric_limits<double>::quiet_NaN();
  double rad_e = std::numeric_limits<double>::quiet_NaN();

  void add_to(CLI::App* cmd) {
    auto* h = cmd->add_option("--radius-h", rad_h, "window radius (hyperbolic)");
    auto* e = cmd->add_option("--radius-e", rad_e, "window radius (Euclidean, in (0,1))");
    h->excludes(e);
    e->excludes(h);
  }

  double resolve() const {
    const bool has_h = std::isfinite(rad_h);
    const bool has_e = std::isfinite(rad_e);
    require(has_h || has_e, "radius: give --radius-h or --radius-e");
    if (has_h) {
      require(rad_h >= 0.0, "radius-h: must be nonnegative");
      return rad_h;
    }
    require(rad_e > 0.0 && rad_e < 1.0, "radius-e: must lie in (0, 1)");
    return radius_e_to_h(rad_e);
  }
};

std::uint64_t walk_seed(std::uint64_t base, std::uint64_t w) {
  return CounterRng(base, w + 1).next_u64();
}

DelaunayComplex tessellate_sample(const Sample& s, const std::optional<double>& margin) {
  return margin ? delaunay(s, *margin) : delaunay(s);
}

VerificationReport grid_report(const std::string& name, const std::string& ax0,
                               const std::string& ax1, const std::vector<double>& g0,
                               const std::vector<double>& g1, double bound,
                               std::uint64_t trials,
                               const std::function<double(double, double)>& eval) {
  require(!g0.empty(), ax0 + "-grid: must be nonempty");
  require(!g1.empty(), ax1 + "-grid: must be nonempty");
  VerificationReport rep;
  rep.name = name;
  rep.axes = {ax0, ax1};
  rep.trials = trials;
  rep.seed = 0;
  for (const double a : g0)
    for (const double b : g1) {
      GridPoint pt;
      pt.params = {a, b};
      pt.value = eval(a, b);
      pt.lo = pt.value;
      pt.hi = pt.value;
      pt.bound = bound;
      pt.pass = pt.value <= bound;
      rep.points.push_back(std::move(pt));
    }
  return rep;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"hyperbolic Poisson-Voronoi tessellation toolkit"};
  app.require_subcommand(1);

  std::string in_path, out_path, condition = "none", dual = "voronoi", format;
  double lambda = 0.0, min_sep = 0.0, theta = 0.0, x_e = 0.0, window = 0.0, r_query = 0.0,
         tail_margin = 1.5;
  std::optional<double> margin;
  std::uint64_t seed = 0, trials = 0, steps = 400, walks = 200;
  std::uint32_t k = 0, m = 0, bins = 64, n_probe = 64, scan_k_max = 8, n_sets = 100,
                set_size = 50, n_seeds = 0;
  std::optional<std::uint64_t> k_eval_opt;
  std::optional<std::uint32_t> root_override;
  std::size_t max_render_edges = 200000;
  bool count_only = false;
  std::vector<double> r_grid, x_grid, alpha_grid, phi_grid, theta_grid;
  RadiusOpt radius;

  const auto add_margin = [&](CLI::App* cmd) {
    cmd->add_option_function<double>(
        "--margin", [&](const double v) { margin = v; },
        "core margin (default: core_margin_for(lambda))");
  };

  // --- sample ---------------------------------------------------------
  auto* c_sample = app.add_subcommand("sample", "draw a Poisson configuration on a disk window");
  c_sample->add_option("--lambda", lambda, "intensity")->required();
  radius.add_to(c_sample);
  c_sample->add_option("--seed", seed, "rng seed");
  c_sample->add_option("--condition", condition, "none | root | skeleton")
      ->check(CLI::IsMember({"none", "root", "skeleton"}));
  c_sample->add_option("--min-sep", min_sep, "hard-core thinning separation (0 = off)");
  c_sample->add_option("--out", out_path, "output sample JSON")->required();
  c_sample->callback([&] {
    Sample s = sample_ball(lambda, radius.resolve(), seed);
    if (min_sep > 0.0) s = hardcore_thin(s, min_sep);
    if (condition == "root")
      s = condition_root(s);
    else if (condition == "skeleton")
      s = condition_skeleton_vertex(s, seed);
    write_text_atomic(out_path, sample_to_json(s));
  });

  // --- tessellate -----------------------------------------------------
  auto* c_tess = app.add_subcommand("tessellate", "build a dual graph from a sample");
  c_tess->add_option("--in", in_path, "input sample JSON")->required();
  add_margin(c_tess);
  c_tess->add_option("--dual", dual, "voronoi | delaunay")
      ->check(CLI::IsMember({"voronoi", "delaunay"}));
  c_tess->add_option("--out", out_path, "output graph JSON")->required();
  c_tess->callback([&] {
    const Sample s = sample_from_json(read_text(in_path));
    const DelaunayComplex c = tessellate_sample(s, margin);
    const bool with_root = s.conditioning == Conditioning::root_at_origin;
    const DualGraph g = dual == "voronoi" ? dual_voronoi_graph(c, with_root)
                                          : dual_delaunay_graph(c, with_root);
    write_text_atomic(out_path, graph_to_json(g));
  });

  // --- render ---------------------------------------------------------
  auto* c_render = app.add_subcommand("render", "draw a sample's tessellation as SVG");
  c_render->add_option("--in", in_path, "input sample JSON")->required();
  c_render->add_option("--max-render-edges", max_render_edges, "per-family edge cap");
  c_render->add_option("--out", out_path, "output SVG")->required();
  c_render->callback([&] {
    require(max_render_edges >= 1, "max-render-edges: must be positive");
    const Sample s = sample_from_json(read_text(in_path));
    const DelaunayComplex c = delaunay(s);
    const VoronoiCells cells = voronoi_cells(c);
    RenderOptions opt;
    opt.max_render_edges = max_render_edges;
    write_text_atomic(out_path, render_svg(c, cells, opt));
  });

  // --- walk -----------------------------------------------------------
  auto* c_walk = app.add_subcommand("walk", "run one random walk from the root");
  c_walk->add_option("--in", in_path, "input graph JSON")->required();
  c_walk->add_option("--steps", steps, "step budget")->required();
  c_walk->add_option("--seed", seed, "rng seed");
  c_walk->add_option("--out", out_path, "output trace JSON")->required();
  c_walk->callback([&] {
    const DualGraph g = graph_from_json(read_text(in_path));
    require(g.root >= 0, "in: graph has no root");
    const WalkTrace t = simple_walk(g, static_cast<std::uint32_t>(g.root), steps, seed);
    write_text_atomic(out_path, trace_to_json(t, seed));
  });

  // --- speed ----------------------------------------------------------
  auto* c_speed = app.add_subcommand("speed", "estimate walk speed over an ensemble");
  c_speed->add_option("--in", in_path, "input graph JSON")->required();
  c_speed->add_option("--walks", walks, "ensemble size");
  c_speed->add_option("--steps", steps, "step budget per walk");
  c_speed->add_option("--k-eval", k_eval_opt, "evaluation step (default: steps)");
  c_speed->add_option("--seed", seed, "rng seed");
  c_speed->add_option("--out", out_path, "output JSON")->required();
  c_speed->callback([&] {
    require(walks >= 1, "walks: must be positive");
    const DualGraph g = graph_from_json(read_text(in_path));
    require(g.root >= 0, "in: graph has no root");
    const auto root = static_cast<std::uint32_t>(g.root);
    const auto dist = bfs_distances(g, root);
    std::vector<WalkTrace> ensemble;
    ensemble.reserve(walks);
    for (std::uint64_t w = 0; w < walks; ++w)
      ensemble.push_back(simple_walk(g, root, steps, walk_seed(seed, w), &dist));
    const std::uint64_t k_eval = k_eval_opt.value_or(steps);
    write_text_atomic(out_path, speed_to_json(speed_estimate(ensemble, k_eval), k_eval));
  });

  // --- expansion ------------------------------------------------------
  auto* c_exp = app.add_subcommand("expansion", "exhaustive small-subset expansion minima");
  c_exp->add_option("--in", in_path, "input graph JSON")->required();
  c_exp->add_option("--m", m, "max subset size")->required();
  c_exp->add_option("--root", root_override, "root override (default: graph root)");
  c_exp->add_option("--out", out_path, "output JSON")->required();
  c_exp->callback([&] {
    const DualGraph g = graph_from_json(read_text(in_path));
    std::int64_t root = g.root;
    if (root_override) {
      require(*root_override < g.n, "root: must index a vertex");
      root = *root_override;
    }
    require(root >= 0, "in: graph has no root (use --root)");
    const ExpansionReport rep = min_expansion(g, static_cast<std::uint32_t>(root), m);
    write_text_atomic(out_path, expansion_to_json(rep));
  });

  // --- schemes --------------------------------------------------------
  auto* c_schemes = app.add_subcommand("schemes", "enumerate triangulation schemes");
  c_schemes->add_option("--k", k, "scheme order")->required();
  c_schemes->add_flag("--count-only", count_only, "emit the count without the list");
  c_schemes->add_option("--out", out_path, "output JSON")->required();
  c_schemes->callback([&] {
    ordered_json j;
    j["k"] = k;
    if (count_only) {
      j["count"] = enumerate_schemes(k);
    } else {
      ordered_json list = ordered_json::array();
      const std::uint64_t count = enumerate_schemes(k, [&](const Scheme& s) {
        ordered_json f = ordered_json::array();
        for (std::uint32_t i = 3; i <= s.k; ++i)
          f.push_back(ordered_json::array({i, s.pair_for(i)[0], s.pair_for(i)[1]}));
        list.push_back(std::move(f));
      });
      j["count"] = count;
      j["schemes"] = std::move(list);
    }
    write_text_atomic(out_path, j.dump(2) + "\n");
  });

  // --- verify-* -------------------------------------------------------
  auto* c_tail = app.add_subcommand("verify-tail_triangle", "star-radius tail decay probe");
  c_tail->add_option("--lambda", lambda, "intensity")->required();
  c_tail->add_option("--r-grid", r_grid, "radii, comma separated")->required()->delimiter(',');
  c_tail->add_option("--margin", tail_margin, "window margin beyond max r");
  c_tail->add_option("--trials", trials, "samples per estimate")->required();
  c_tail->add_option("--seed", seed, "rng seed");
  c_tail->add_option("--out", out_path, "output JSON")->required();
  c_tail->callback([&] {
    write_text_atomic(out_path,
                      verification_to_json(tail_triangle(lambda, r_grid, tail_margin, trials, seed)));
  });

  auto* c_region = app.add_subcommand("verify-geometry_region", "small-triangle region estimate");
  c_region->add_option("--x", x_e, "Euclidean coordinate of x on the real axis")->required();
  c_region->add_option("--theta", theta, "area threshold")->required();
  c_region->add_option("--window", window, "sampling window radius (hyperbolic)")->required();
  c_region->add_option("--trials", trials, "samples")->required();
  c_region->add_option("--seed", seed, "rng seed");
  c_region->add_option("--out", out_path, "output JSON")->required();
  c_region->callback([&] {
    const RegionEstimate est = geometry_region(x_e, theta, window, trials, seed);
    ordered_json j;
    j["x_e"] = x_e;
    j["theta"] = theta;
    j["window_r"] = window;
    j["trials"] = trials;
    j["seed"] = seed;
    j["p_hat"] = est.p_hat;
    j["lo"] = est.lo;
    j["hi"] = est.hi;
    j["events"] = est.events;
    j["ratio"] = est.ratio;
    j["ratio_hi"] = est.ratio_hi;
    write_text_atomic(out_path, j.dump(2) + "\n");
  });

  auto* c_locus = app.add_subcommand("verify-locus_check", "equal-area locus against the angle");
  c_locus->add_option("--x-grid", x_grid, "x values, comma separated")->required()->delimiter(',');
  c_locus->add_option("--alpha-grid", alpha_grid, "alpha values, comma separated")
      ->required()
      ->delimiter(',');
  c_locus->add_option("--n-probe", n_probe, "probe points per pair");
  c_locus->add_option("--out", out_path, "output JSON")->required();
  c_locus->callback([&] {
    const auto rep = grid_report(
        "locus_check", "x_e", "alpha", x_grid, alpha_grid, 1e-6, n_probe,
        [&](const double x, const double a) { return locus_check(x, a, n_probe); });
    write_text_atomic(out_path, verification_to_json(rep));
  });

  auto* c_ell = app.add_subcommand("verify-ell_formulas", "chord-length closed forms");
  c_ell->add_option("--x-grid", x_grid, "x values, comma separated")->required()->delimiter(',');
  c_ell->add_option("--phi-grid", phi_grid, "phi values, comma separated")
      ->required()
      ->delimiter(',');
  c_ell->add_option("--out", out_path, "output JSON")->required();
  c_ell->callback([&] {
    const auto rep =
        grid_report("ell_formulas", "x_e", "phi", x_grid, phi_grid, 1e-9, 1,
                    [&](const double x, const double p) {
                      const EllLengths l = ell_formulas(x, p);
                      return std::max(std::fabs(l.l1_closed - l.l1_direct),
                                      std::fabs(l.l2_closed - l.l2_direct));
                    });
    write_text_atomic(out_path, verification_to_json(rep));
  });

  auto* c_phi = app.add_subcommand("verify-phi_star_check", "critical angle closed form");
  c_phi->add_option("--x-grid", x_grid, "x values, comma separated")->required()->delimiter(',');
  c_phi->add_option("--theta-grid", theta_grid, "theta values, comma separated")
      ->required()
      ->delimiter(',');
  c_phi->add_option("--out", out_path, "output JSON")->required();
  c_phi->callback([&] {
    const auto rep = grid_report("phi_star_check", "x_e", "theta", x_grid, theta_grid, 1e-9, 1,
                                 [&](const double x, const double t) {
                                   const PhiStar p = phi_star_check(x, t);
                                   return std::fabs(p.closed - p.direct);
                                 });
    write_text_atomic(out_path, verification_to_json(rep));
  });

  auto* c_hull = app.add_subcommand("verify-hull_bound", "hull volume ratio over random sets");
  c_hull->add_option("--sets", n_sets, "number of sets");
  c_hull->add_option("--size", set_size, "points per set");
  c_hull->add_option("--window", window, "sampling window radius (hyperbolic)")->required();
  c_hull->add_option("--seed", seed, "rng seed");
  c_hull->add_option("--out", out_path, "output JSON")->required();
  c_hull->callback([&] {
    require(n_sets >= 1, "sets: must be positive");
    require(set_size >= 3, "size: need at least three points per set");
    require(window > 0.0, "window: must be positive");
    std::vector<std::vector<HPoint>> sets(n_sets);
    for (std::uint32_t i = 0; i < n_sets; ++i) {
      CounterRng rng(seed, i + 1);
      sets[i].reserve(set_size);
      for (std::uint32_t p = 0; p < set_size; ++p) {
        const double rad = acosh1p(rng.next_double() * (std::cosh(window) - 1.0));
        sets[i].push_back(HPoint::polar(rad, rng.uniform(-kPi, kPi)));
      }
    }
    const double worst = hull_bound(sets);
    VerificationReport rep;
    rep.name = "hull_bound";
    rep.axes = {"sets", "size", "window"};
    rep.trials = n_sets;
    rep.seed = seed;
    GridPoint pt;
    pt.params = {static_cast<double>(n_sets), static_cast<double>(set_size), window};
    pt.value = worst;
    pt.lo = worst;
    pt.hi = worst;
    pt.bound = 1.0;
    pt.pass = worst <= 1.0;
    rep.points.push_back(std::move(pt));
    write_text_atomic(out_path, verification_to_json(rep));
  });

  auto* c_scan = app.add_subcommand("verify-strong_area_scan", "minimal area of k-triangle patches");
  c_scan->add_option("--in", in_path, "input sample JSON (root conditioned)")->required();
  c_scan->add_option("--k-max", scan_k_max, "largest patch size");
  add_margin(c_scan);
  c_scan->add_option("--out", out_path, "output JSON")->required();
  c_scan->callback([&] {
    const Sample s = sample_from_json(read_text(in_path));
    const DelaunayComplex c = tessellate_sample(s, margin);
    write_text_atomic(out_path, verification_to_json(strong_area_scan(c, scan_k_max)));
  });

  auto* c_dist = app.add_subcommand("verify-distance_compare", "graph vs hyperbolic distance floors");
  c_dist->add_option("--in", in_path, "input Voronoi dual graph JSON")->required();
  c_dist->add_option("--out", out_path, "output JSON")->required();
  c_dist->callback([&] {
    const DualGraph g = graph_from_json(read_text(in_path));
    write_text_atomic(out_path, verification_to_json(distance_compare(g)));
  });

  auto* c_geo = app.add_subcommand("verify-geodesic_deviation",
                                   "BFS-path deviation from the diameter geodesic");
  c_geo->add_option("--in", in_path, "input sample JSON (single evaluation)");
  c_geo->add_option("--r", r_query, "query radius");
  add_margin(c_geo);
  c_geo->add_option("--lambda", lambda, "intensity (sweep mode)");
  RadiusOpt geo_radius;
  geo_radius.add_to(c_geo);
  c_geo->add_option("--seeds", n_seeds, "number of seeds (sweep mode)");
  c_geo->add_option("--r-grid", r_grid, "query radii, comma separated")->delimiter(',');
  c_geo->add_option("--seed", seed, "base seed (sweep mode)");
  c_geo->add_option("--out", out_path, "output JSON or CSV")->required();
  c_geo->callback([&] {
    if (!in_path.empty()) {
      const Sample s = sample_from_json(read_text(in_path));
      const DelaunayComplex c = tessellate_sample(s, margin);
      const std::int64_t d = geodesic_deviation(c, r_query);
      VerificationReport rep;
      rep.name = "geodesic_deviation";
      rep.axes = {"r"};
      rep.trials = 1;
      rep.seed = s.seed;
      GridPoint pt;
      pt.params = {r_query};
      pt.value = static_cast<double>(d);
      pt.lo = pt.value;
      pt.hi = pt.value;
      pt.bound = 0.0;
      pt.pass = d >= 0;
      rep.points.push_back(std::move(pt));
      write_text_atomic(out_path, verification_to_json(rep));
      return;
    }
    require(n_seeds >= 1, "seeds: must be positive in sweep mode");
    require(!r_grid.empty(), "r-grid: must be nonempty in sweep mode");
    const double w = geo_radius.resolve();
    std::string csv = "seed,r,d_r\n";
    for (std::uint32_t i = 0; i < n_seeds; ++i) {
      const Sample s = condition_root(sample_ball(lambda, w, seed + i));
      const DelaunayComplex c = tessellate_sample(s, margin);
      for (const double r : r_grid) {
        csv += std::to_string(seed + i);
        csv += ',';
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g,%lld\n", r,
                      static_cast<long long>(geodesic_deviation(c, r)));
        csv += buf;
      }
    }
    write_text_atomic(out_path, csv);
  });

  // --- report ---------------------------------------------------------
  auto* c_report = app.add_subcommand("report", "walk ensemble summary");
  c_report->add_option("--in", in_path, "input graph JSON")->required();
  c_report->add_option("--walks", walks, "ensemble size");
  c_report->add_option("--steps", steps, "step budget per walk");
  c_report->add_option("--k-eval", k_eval_opt, "evaluation step (default: steps)");
  c_report->add_option("--seed", seed, "rng seed");
  c_report->add_option("--bins", bins, "histogram bins");
  c_report->add_option("--trials", trials, "reversibility trials")->default_val(20000);
  c_report->add_option("--format", format, "csv | json")->default_val("csv")
      ->check(CLI::IsMember({"csv", "json"}));
  c_report->add_option("--out", out_path, "output file")->required();
  c_report->callback([&] {
    require(walks >= 1, "walks: must be positive");
    const DualGraph g = graph_from_json(read_text(in_path));
    require(g.root >= 0, "in: graph has no root");
    const auto root = static_cast<std::uint32_t>(g.root);
    const auto dist = bfs_distances(g, root);
    std::vector<WalkTrace> ensemble;
    ensemble.reserve(walks);
    for (std::uint64_t w = 0; w < walks; ++w)
      ensemble.push_back(simple_walk(g, root, steps, walk_seed(seed, w), &dist));
    const AngleHistogram hist = harmonic_measure(ensemble, bins);
    if (format == "csv") {
      write_text_atomic(out_path, histogram_to_csv(hist));
      return;
    }
    // Default evaluation step: the largest k keeping at least 95% of the
    // ensemble eligible, so short-core graphs still yield an estimate.
    std::uint64_t k_eval = 0;
    if (k_eval_opt) {
      k_eval = *k_eval_opt;
    } else {
      std::vector<std::uint64_t> max_k(ensemble.size());
      for (std::size_t t = 0; t < ensemble.size(); ++t) {
        const auto& tr = ensemble[t];
        max_k[t] = tr.stop == WalkTrace::Stop::steps_exhausted ? tr.steps()
                   : tr.steps() > 0                            ? tr.steps() - 1
                                                               : 0;
      }
      for (std::uint64_t cand = steps; cand >= 1; --cand) {
        std::uint64_t eligible = 0;
        for (const std::uint64_t mk : max_k) eligible += mk >= cand;
        if (20 * (ensemble.size() - eligible) < ensemble.size() ||
            (cand == 1 && eligible > 0)) {
          k_eval = cand;
          break;
        }
      }
    }
    require(k_eval >= 1, "in: no walk completes a single step inside the core");
    const SpeedEstimate est = speed_estimate(ensemble, k_eval);
    // Median oscillation profile over the full-length traces.
    std::vector<std::vector<double>> profiles;
    for (const auto& t : ensemble)
      if (t.stop == WalkTrace::Stop::steps_exhausted)
        profiles.push_back(boundary_convergence(t));
    std::vector<double> osc_median;
    if (!profiles.empty()) {
      const std::size_t len = profiles.front().size();
      osc_median.resize(len);
      std::vector<double> col(profiles.size());
      for (std::size_t j = 0; j < len; ++j) {
        for (std::size_t t = 0; t < profiles.size(); ++t) col[t] = profiles[t][j];
        std::nth_element(col.begin(), col.begin() + col.size() / 2, col.end());
        osc_median[j] = col[col.size() / 2];
      }
    }
    ordered_json j;
    j["walks"] = walks;
    j["steps"] = steps;
    j["k_eval"] = k_eval;
    j["seed"] = seed;
    j["speed"] = {{"mean", est.mean}, {"lo", est.lo},       {"hi", est.hi},
                  {"eligible", est.eligible}, {"excluded", est.excluded}, {"valid", est.valid}};
    j["oscillation_traces"] = profiles.size();
    j["oscillation_median"] = osc_median;
    j["reversibility_tv"] = reversibility_test({g}, trials, seed);
    j["uniform_root_tv"] = reversibility_test({g}, trials, seed, false);
    j["histogram"] = {{"bins", hist.bins}, {"centers", hist.centers}, {"mass", hist.mass}};
    write_text_atomic(out_path, j.dump(2) + "\n");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* t = std::getenv("HYPVORO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(t, &end, 10);
    if (t[0] == '\0' || end == nullptr || *end != '\0' || v < 1) {
      std::cerr << "error: HYPVORO_THREADS: must be a positive integer\n";
      return 2;
    }
    // Orchestration is single threaded; the knob is validated so pipelines
    // that set it get identical outputs at any value.
  }
  try {
    return dispatch(argc, argv);
  } catch (const hypvoro::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hypvoro::GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
