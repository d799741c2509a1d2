#include "hypvoro/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hypvoro/errors.hpp"
#include "json.hpp"

namespace hypvoro {

namespace {

using json = nlohmann::ordered_json;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  require(!j.is_discarded(), "in: not valid JSON");
  return j;
}

const json& field(const json& j, const char* name) {
  const auto it = j.find(name);
  require(it != j.end(), std::string(name) + ": missing field");
  return *it;
}

double get_f64(const json& j, const char* name) {
  const json& v = field(j, name);
  require(v.is_number(), std::string(name) + ": expected a number");
  return v.get<double>();
}

std::uint64_t get_u64(const json& j, const char* name) {
  const json& v = field(j, name);
  require(v.is_number_unsigned(), std::string(name) + ": expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::string get_str(const json& j, const char* name) {
  const json& v = field(j, name);
  require(v.is_string(), std::string(name) + ": expected a string");
  return v.get<std::string>();
}

json points_json(const std::vector<HPoint>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(json::array({p.rad_h, p.theta}));
  return out;
}

std::vector<HPoint> points_from(const json& arr, const char* name) {
  require(arr.is_array(), std::string(name) + ": expected an array");
  std::vector<HPoint> pts;
  pts.reserve(arr.size());
  for (const auto& e : arr) {
    require(e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number(),
            std::string(name) + ": each entry must be [rad_h, theta]");
    const double rad = e[0].get<double>();
    const double theta = e[1].get<double>();
    require(std::isfinite(rad) && rad >= 0.0,
            std::string(name) + ": rad_h must be finite and nonnegative");
    require(std::isfinite(theta), std::string(name) + ": theta must be finite");
    pts.push_back(HPoint::polar(rad, theta));
  }
  return pts;
}

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

std::string f64_str(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

const char* kind_name(DualGraph::Kind k) {
  return k == DualGraph::Kind::voronoi_dual ? "voronoi-dual" : "delaunay-dual";
}

}  // namespace

std::string sample_to_json(const Sample& s) {
  json j;
  j["lambda"] = s.lambda;
  j["window_r"] = s.window_r;
  j["seed"] = s.seed;
  j["conditioning"] = conditioning_name(s.conditioning);
  j["points"] = points_json(s.points);
  return dump(j);
}

Sample sample_from_json(const std::string& text) {
  const json j = parse(text);
  Sample s;
  s.lambda = get_f64(j, "lambda");
  require(std::isfinite(s.lambda) && s.lambda >= 0.0, "lambda: must be finite and nonnegative");
  s.window_r = get_f64(j, "window_r");
  require(std::isfinite(s.window_r) && s.window_r >= 0.0,
          "window_r: must be finite and nonnegative");
  s.seed = get_u64(j, "seed");
  s.conditioning = conditioning_from_name(get_str(j, "conditioning"));
  s.points = points_from(field(j, "points"), "points");
  for (const auto& p : s.points)
    require(p.rad_h <= s.window_r + 1e-9, "points: a point lies outside the window");
  return s;
}

std::string graph_to_json(const DualGraph& g) {
  json j;
  j["kind"] = kind_name(g.kind);
  j["n"] = g.n;
  if (g.root >= 0) j["root"] = static_cast<std::uint32_t>(g.root);
  json adj = json::array();
  for (const auto& nbrs : g.adjacency) adj.push_back(nbrs);
  j["adjacency"] = std::move(adj);
  json core = json::array();
  for (const char c : g.core) core.push_back(c != 0);
  j["core"] = std::move(core);
  j["geometry"] = points_json(g.geometry);
  return dump(j);
}

DualGraph graph_from_json(const std::string& text) {
  const json j = parse(text);
  DualGraph g;
  const std::string kind = get_str(j, "kind");
  if (kind == "voronoi-dual")
    g.kind = DualGraph::Kind::voronoi_dual;
  else if (kind == "delaunay-dual")
    g.kind = DualGraph::Kind::delaunay_dual;
  else
    throw ValidationError("kind: expected voronoi-dual or delaunay-dual");
  const std::uint64_t n = get_u64(j, "n");
  require(n <= 0xffffffffull, "n: too large");
  g.n = static_cast<std::uint32_t>(n);
  if (j.contains("root")) {
    const std::uint64_t root = get_u64(j, "root");
    require(root < n, "root: must index a vertex");
    g.root = static_cast<std::int64_t>(root);
  } else {
    g.root = -1;
  }
  const json& adj = field(j, "adjacency");
  require(adj.is_array() && adj.size() == n, "adjacency: expected one list per vertex");
  g.adjacency.resize(g.n);
  for (std::uint32_t v = 0; v < g.n; ++v) {
    const json& row = adj[v];
    require(row.is_array(), "adjacency: expected one list per vertex");
    auto& out = g.adjacency[v];
    out.reserve(row.size());
    for (const auto& e : row) {
      require(e.is_number_unsigned(), "adjacency: entries must be vertex ids");
      const std::uint64_t w = e.get<std::uint64_t>();
      require(w < n, "adjacency: entry out of range");
      require(w != v, "adjacency: self-loop");
      out.push_back(static_cast<std::uint32_t>(w));
    }
    require(std::is_sorted(out.begin(), out.end()), "adjacency: lists must be sorted");
    require(std::adjacent_find(out.begin(), out.end()) == out.end(),
            "adjacency: duplicate edge");
  }
  for (std::uint32_t v = 0; v < g.n; ++v)
    for (const std::uint32_t w : g.adjacency[v])
      require(std::binary_search(g.adjacency[w].begin(), g.adjacency[w].end(), v),
              "adjacency: must be symmetric");
  const json& core = field(j, "core");
  require(core.is_array() && core.size() == n, "core: expected one flag per vertex");
  g.core.resize(g.n);
  for (std::uint32_t v = 0; v < g.n; ++v) {
    require(core[v].is_boolean(), "core: entries must be booleans");
    g.core[v] = core[v].get<bool>() ? 1 : 0;
  }
  g.geometry = points_from(field(j, "geometry"), "geometry");
  require(g.geometry.size() == n, "geometry: expected one position per vertex");
  return g;
}

std::string expansion_to_json(const ExpansionReport& r) {
  json j;
  j["max_size"] = r.max_size;
  json per = json::array();
  for (const auto& q : r.per_size_min) per.push_back(rational_str(q));
  j["per_size_min"] = std::move(per);
  j["global_min"] = rational_str(r.global_min);
  j["witness"] = r.witness;
  j["subsets_enumerated"] = r.subsets_enumerated;
  j["has_contaminated"] = r.has_contaminated;
  if (r.has_contaminated) {
    j["contaminated_min"] = rational_str(r.contaminated_min);
    j["contaminated_count"] = r.contaminated_count;
  }
  return dump(j);
}

std::string scheme_to_json(const Scheme& s) {
  json j;
  j["k"] = s.k;
  json f = json::array();
  for (std::uint32_t i = 3; i <= s.k; ++i) {
    const auto& p = s.pair_for(i);
    f.push_back(json::array({i, p[0], p[1]}));
  }
  j["f"] = std::move(f);
  return dump(j);
}

Scheme scheme_from_json(const std::string& text) {
  const json j = parse(text);
  const std::uint64_t k = get_u64(j, "k");
  require(k >= 3 && k <= 0xffffffffull, "k: must be at least 3");
  Scheme s;
  s.k = static_cast<std::uint32_t>(k);
  const json& f = field(j, "f");
  require(f.is_array() && f.size() == s.k - 2, "f: expected k - 2 entries");
  for (std::uint32_t i = 3; i <= s.k; ++i) {
    const json& e = f[i - 3];
    require(e.is_array() && e.size() == 3 && e[0].is_number_unsigned() &&
                e[1].is_number_unsigned() && e[2].is_number_unsigned(),
            "f: each entry must be [i, a, b]");
    require(e[0].get<std::uint64_t>() == i, "f: entries must cover i = 3..k in order");
    const auto a = static_cast<std::uint32_t>(e[1].get<std::uint64_t>());
    const auto b = static_cast<std::uint32_t>(e[2].get<std::uint64_t>());
    require(a < b, "f: pairs must be sorted");
    s.f.push_back({a, b});
  }
  require(is_scheme(s.k, s.f).ok, "f: not a valid scheme");
  return s;
}

std::string trace_to_json(const WalkTrace& t, std::uint64_t seed) {
  json j;
  j["seed"] = seed;
  j["steps"] = t.steps();
  j["stop"] = t.stop == WalkTrace::Stop::steps_exhausted ? "steps-exhausted" : "left-core";
  j["vertices"] = t.vertices;
  j["dist_g"] = t.dist_g;
  j["positions"] = points_json(t.positions);
  json theta = json::array();
  for (const double a : t.theta) {
    if (std::isfinite(a))
      theta.push_back(a);
    else
      theta.push_back(nullptr);
  }
  j["theta"] = std::move(theta);
  return dump(j);
}

std::string speed_to_json(const SpeedEstimate& e, std::uint64_t k_eval) {
  json j;
  j["k_eval"] = k_eval;
  j["mean"] = e.mean;
  j["lo"] = e.lo;
  j["hi"] = e.hi;
  j["eligible"] = e.eligible;
  j["excluded"] = e.excluded;
  j["valid"] = e.valid;
  return dump(j);
}

std::string verification_to_json(const VerificationReport& r) {
  json j;
  j["name"] = r.name;
  j["axes"] = r.axes;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  json pts = json::array();
  for (const auto& p : r.points) {
    json e;
    e["params"] = p.params;
    e["value"] = p.value;
    e["lo"] = p.lo;
    e["hi"] = p.hi;
    e["bound"] = p.bound;
    e["pass"] = p.pass;
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  return dump(j);
}

std::string histogram_to_csv(const AngleHistogram& h) {
  std::string out = "angle_bin_center,mass\n";
  for (std::uint32_t b = 0; b < h.bins; ++b) {
    out += f64_str(h.centers[b]);
    out += ',';
    out += f64_str(h.mass[b]);
    out += '\n';
  }
  return out;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  require(!path.empty(), "out: empty path");
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    require(f.good(), "out: cannot open " + tmp);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    require(f.good(), "out: write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  require(!ec, "out: rename failed for " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(f.good(), "in: cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

namespace {

struct View {
  double cx = 500.0, cy = 500.0, scale = 480.0;

  std::pair<double, double> map(const std::complex<double>& z) const {
    return {cx + scale * z.real(), cy - scale * z.imag()};
  }
};

std::string coord(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// Geodesic between two interior points of the unit disk: the circle through
// both that meets the boundary at right angles, or a diameter when the
// points are collinear with the origin.
std::string geodesic_path(const View& view, const std::complex<double>& a,
                          const std::complex<double>& b) {
  const auto [x1, y1] = view.map(a);
  const auto [x2, y2] = view.map(b);
  std::string d = "M " + coord(x1) + "," + coord(y1);
  const double det = a.real() * b.imag() - a.imag() * b.real();
  const double straight = 1e-10 * (std::abs(a) + std::abs(b) + 1.0);
  if (std::fabs(det) < straight || std::abs(a - b) < 1e-12) {
    d += " L " + coord(x2) + "," + coord(y2);
    return d;
  }
  // Orthocircle center c solves 2 a.c = |a|^2 + 1 and 2 b.c = |b|^2 + 1.
  const double ra = 0.5 * (std::norm(a) + 1.0);
  const double rb = 0.5 * (std::norm(b) + 1.0);
  const double ccx = (ra * b.imag() - rb * a.imag()) / det;
  const double ccy = (a.real() * rb - b.real() * ra) / det;
  const double r2 = ccx * ccx + ccy * ccy - 1.0;
  if (r2 <= 0.0) {
    d += " L " + coord(x2) + "," + coord(y2);
    return d;
  }
  const double r = view.scale * std::sqrt(r2);
  const double cross = (a.real() - ccx) * (b.imag() - ccy) - (a.imag() - ccy) * (b.real() - ccx);
  // Minor arc always; the y-flip inverts the sweep sense.
  const char sweep = cross > 0.0 ? '0' : '1';
  d += " A " + coord(r) + "," + coord(r) + " 0 0," + sweep + " " + coord(x2) + "," + coord(y2);
  return d;
}

template <typename T>
std::vector<T> stride_cap(std::vector<T> items, std::size_t cap) {
  if (items.size() <= cap || cap == 0) return items;
  const std::size_t stride = (items.size() + cap - 1) / cap;
  std::vector<T> kept;
  for (std::size_t i = 0; i < items.size(); i += stride) kept.push_back(items[i]);
  return kept;
}

}  // namespace

std::string render_svg(const DelaunayComplex& c, const VoronoiCells& cells,
                       const RenderOptions& opt) {
  const View view;
  std::vector<std::pair<std::complex<double>, std::complex<double>>> blue;
  for (const auto& e : c.edges) {
    if (!e.valid) continue;
    blue.emplace_back(c.sample.points[e.a].z(), c.sample.points[e.b].z());
  }

  // Voronoi sides shared by two cells appear once: dedupe on rounded
  // canonical endpoint pairs.  Window-arc sides are not bisector geometry
  // and are skipped.
  const auto key_of = [](const std::complex<double>& z) {
    return std::pair<long long, long long>{std::llround(z.real() * 1e9),
                                           std::llround(z.imag() * 1e9)};
  };
  using SideKey = std::pair<std::pair<long long, long long>, std::pair<long long, long long>>;
  std::vector<std::pair<SideKey, std::pair<std::complex<double>, std::complex<double>>>> sides;
  for (const auto& cell : cells.cells) {
    const std::size_t m = cell.vertices.size();
    for (std::size_t k = 0; k < m; ++k) {
      if (cell.side_is_arc[k]) continue;
      const std::complex<double> u = cell.vertices[k].z();
      const std::complex<double> v = cell.vertices[(k + 1) % m].z();
      auto ku = key_of(u);
      auto kv = key_of(v);
      if (ku == kv) continue;
      if (kv < ku) {
        sides.push_back({{kv, ku}, {v, u}});
      } else {
        sides.push_back({{ku, kv}, {u, v}});
      }
    }
  }
  std::sort(sides.begin(), sides.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  sides.erase(std::unique(sides.begin(), sides.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              sides.end());
  std::vector<std::pair<std::complex<double>, std::complex<double>>> red;
  red.reserve(sides.size());
  for (const auto& s : sides) red.push_back(s.second);

  blue = stride_cap(std::move(blue), opt.max_render_edges);
  red = stride_cap(std::move(red), opt.max_render_edges);

  std::string svg =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" "
      "viewBox=\"0 0 1000 1000\">\n";
  const double window_e = std::tanh(cells.window_r / 2.0);
  svg += "<circle cx=\"500.000000\" cy=\"500.000000\" r=\"" + coord(view.scale * window_e) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  if (!blue.empty()) {
    svg += "<g fill=\"none\" stroke=\"#2255cc\" stroke-width=\"0.8\">\n";
    for (const auto& [a, b] : blue) svg += "<path d=\"" + geodesic_path(view, a, b) + "\"/>\n";
    svg += "</g>\n";
  }
  if (!red.empty()) {
    svg += "<g fill=\"none\" stroke=\"#cc2222\" stroke-width=\"0.8\">\n";
    for (const auto& [a, b] : red) svg += "<path d=\"" + geodesic_path(view, a, b) + "\"/>\n";
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace hypvoro
