#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <deque>
#include <vector>

#include "hypvoro/errors.hpp"
#include "hypvoro/graph.hpp"

namespace hypvoro {

namespace {

void check_vertex_set(const DualGraph& g, const std::vector<std::uint32_t>& s) {
  std::vector<char> seen(g.n, 0);
  for (std::uint32_t v : s) {
    require(v < g.n, "subset: vertex id out of range");
    require(!seen[v], "subset: duplicate vertex");
    seen[v] = 1;
  }
}

}  // namespace

std::vector<std::int64_t> bfs_distances(const DualGraph& g,
                                        std::uint32_t from) {
  require(from < g.n, "from: vertex id out of range");
  std::vector<std::int64_t> dist(g.n, kUnreachable);
  std::deque<std::uint32_t> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    for (std::uint32_t w : g.adjacency[u]) {
      if (dist[w] >= 0) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

GrowthReport ball_growth(const DualGraph& g, std::uint32_t root,
                         std::uint32_t r_max) {
  require(root < g.n, "root: vertex id out of range");
  require(g.core.size() == g.n && g.core[root], "root: must be a core vertex");
  const std::vector<std::int64_t> dist = bfs_distances(g, root);

  // Counts are trustworthy only while the ball is all-core: a non-core vertex
  // may be missing neighbors lost to the window.
  std::int64_t first_bad = r_max + 1;
  for (std::uint32_t v = 0; v < g.n; ++v)
    if (dist[v] >= 0 && !g.core[v]) first_bad = std::min(first_bad, dist[v]);

  GrowthReport rep;
  rep.trusted_radius = static_cast<std::uint32_t>(
      std::min<std::int64_t>(r_max, first_bad - 1));
  std::vector<std::uint64_t> at(rep.trusted_radius + 1, 0);
  for (std::uint32_t v = 0; v < g.n; ++v)
    if (dist[v] >= 0 && dist[v] <= rep.trusted_radius) ++at[dist[v]];
  rep.ball_sizes.resize(rep.trusted_radius + 1);
  std::uint64_t acc = 0;
  for (std::size_t r = 0; r < at.size(); ++r) {
    acc += at[r];
    rep.ball_sizes[r] = acc;
  }
  for (std::size_t r = 1; r < rep.ball_sizes.size(); ++r)
    rep.growth.push_back(
        std::pow(static_cast<double>(rep.ball_sizes[r]), 1.0 / r));
  return rep;
}

std::pair<std::uint64_t, std::uint64_t> boundary_volume(
    const DualGraph& g, const std::vector<std::uint32_t>& s) {
  check_vertex_set(g, s);
  std::vector<char> in(g.n, 0);
  for (std::uint32_t v : s) in[v] = 1;
  std::uint64_t boundary = 0, vol = 0;
  for (std::uint32_t v : s) {
    vol += g.adjacency[v].size();
    for (std::uint32_t w : g.adjacency[v])
      if (!in[w]) ++boundary;
  }
  return {boundary, vol};
}

ExpansionReport min_expansion(const DualGraph& g, std::uint32_t root,
                              std::uint32_t m) {
  require(root < g.n, "root: vertex id out of range");
  require(m >= 1, "m: must be >= 1");
  guard(m <= 14, "m: exhaustive subset search is guarded to m <= 14");
  require(g.core.size() == g.n, "core: flags missing");

  struct Best {
    bool set = false;
    std::uint64_t b = 0, v = 0;
    std::vector<std::uint32_t> witness;
  };
  // ratio(b1, v1) < ratio(b2, v2), exact; an empty-volume subset counts as 0.
  auto better = [](std::uint64_t b1, std::uint64_t v1, std::uint64_t b2,
                   std::uint64_t v2) { return b1 * v2 < b2 * v1; };

  std::vector<Best> best(m);
  Best cont;
  std::uint64_t visited = 0, cont_count = 0;

  // Flat adjacency keeps the hot loop on two contiguous arrays.
  std::vector<std::uint32_t> off(g.n + 1, 0), tgt;
  for (std::uint32_t v = 0; v < g.n; ++v)
    off[v + 1] = off[v] + static_cast<std::uint32_t>(g.adjacency[v].size());
  tgt.reserve(off[g.n]);
  for (std::uint32_t v = 0; v < g.n; ++v)
    tgt.insert(tgt.end(), g.adjacency[v].begin(), g.adjacency[v].end());

  std::vector<char> in_s(g.n, 0), marked(g.n, 0);
  std::vector<std::uint32_t> s{root};
  std::uint64_t cur_b = g.adjacency[root].size();
  std::uint64_t cur_v = g.adjacency[root].size();
  std::uint32_t noncore = g.core[root] ? 0 : 1;
  in_s[root] = 1;
  marked[root] = 1;

  auto visit = [&] {
    ++visited;
    if (noncore == 0) {
      Best& slot = best[s.size() - 1];
      if (!slot.set || better(cur_b, cur_v, slot.b, slot.v)) {
        slot.set = true;
        slot.b = cur_b;
        slot.v = cur_v;
        slot.witness = s;
      }
    } else {
      ++cont_count;
      if (!cont.set || better(cur_b, cur_v, cont.b, cont.v)) {
        cont.set = true;
        cont.b = cur_b;
        cont.v = cur_v;
        cont.witness = s;
      }
    }
  };
  visit();

  // Canonical augmentation: extend with candidates in list order; candidates
  // skipped at one position stay excluded in that whole branch, so every
  // connected subset containing the root is produced exactly once. Candidate
  // slices live in one arena to keep the inner loop allocation-free, and
  // cnt_in tracks |N(v) ∩ S| so full-size subsets cost O(1): they spawn no
  // children, so neither the candidate slice nor the neighbour counters are
  // needed there.
  std::uint32_t max_deg = 0;
  for (std::uint32_t v = 0; v < g.n; ++v)
    max_deg = std::max(max_deg, off[v + 1] - off[v]);
  std::vector<std::uint32_t> cnt_in(g.n, 0);
  for (std::uint32_t w : g.adjacency[root]) ++cnt_in[w];
  std::vector<std::uint32_t> arena((m + 2ull) * (max_deg * (m + 2ull) + 16));
  std::uint32_t* const base = arena.data();
  std::size_t top = 0;
  for (std::uint32_t w : g.adjacency[root]) {
    marked[w] = 1;
    base[top++] = w;
  }

  auto rec = [&](auto&& self, std::size_t lo, std::size_t hi) -> void {
    const bool leaf = s.size() + 1 == m;
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint32_t v = base[i];
      const std::uint32_t vb = off[v], ve = off[v + 1], deg = ve - vb;
      const std::uint32_t in_nbrs = cnt_in[v];
      cur_b += deg - 2ull * in_nbrs;
      cur_v += deg;
      noncore += g.core[v] ? 0 : 1;
      in_s[v] = 1;
      s.push_back(v);

      if (leaf) {
        visit();
      } else {
        const std::size_t clo = top;
        std::memcpy(base + top, base + i + 1,
                    (hi - i - 1) * sizeof(std::uint32_t));
        top += hi - i - 1;
        std::size_t fresh = 0;
        for (std::uint32_t j = vb; j < ve; ++j) {
          const std::uint32_t w = tgt[j];
          ++cnt_in[w];
          if (in_s[w] || marked[w]) continue;
          marked[w] = 1;
          base[top++] = w;
          ++fresh;
        }
        const std::size_t chi = top;
        visit();
        self(self, clo, chi);
        for (std::size_t j = chi - fresh; j < chi; ++j) marked[base[j]] = 0;
        for (std::uint32_t j = vb; j < ve; ++j) --cnt_in[tgt[j]];
        top = clo;
      }

      s.pop_back();
      in_s[v] = 0;
      noncore -= g.core[v] ? 0 : 1;
      cur_v -= deg;
      cur_b -= deg - 2ull * in_nbrs;
    }
  };
  if (m > 1) rec(rec, 0, top);

  ExpansionReport rep;
  rep.max_size = m;
  rep.subsets_enumerated = visited;
  rep.per_size_min.assign(m, Rational(-1));
  bool any = false;
  std::uint64_t gb = 0, gv = 0;
  for (std::uint32_t k = 0; k < m; ++k) {
    if (!best[k].set) continue;
    rep.per_size_min[k] = best[k].v == 0
                              ? Rational(0)
                              : Rational(best[k].b) / Rational(best[k].v);
    if (!any || better(best[k].b, best[k].v, gb, gv)) {
      any = true;
      gb = best[k].b;
      gv = best[k].v;
      rep.witness = best[k].witness;
    }
  }
  rep.global_min = any ? (gv == 0 ? Rational(0) : Rational(gb) / Rational(gv))
                       : Rational(-1);
  std::sort(rep.witness.begin(), rep.witness.end());
  rep.has_contaminated = cont.set;
  rep.contaminated_count = cont_count;
  rep.contaminated_min =
      cont.set ? (cont.v == 0 ? Rational(0) : Rational(cont.b) / Rational(cont.v))
               : Rational(-1);
  return rep;
}

Rational delta_i(const DualGraph& g, const std::vector<std::uint32_t>& s,
                 const Rational& i) {
  const auto [boundary, vol] = boundary_volume(g, s);
  (void)vol;
  return i * static_cast<int>(s.size()) - Rational(boundary);
}

bool is_isolated_core(const DualGraph& g, const std::vector<std::uint32_t>& s,
                      const Rational& i) {
  check_vertex_set(g, s);
  guard(s.size() <= 20, "subset: isolated-core scan is guarded to |S| <= 20");
  const std::size_t k = s.size();
  std::vector<std::uint32_t> pos(g.n, 0);
  std::vector<char> member(g.n, 0);
  for (std::size_t a = 0; a < k; ++a) {
    member[s[a]] = 1;
    pos[s[a]] = static_cast<std::uint32_t>(a);
  }
  std::vector<std::uint64_t> deg(k), inner(k);
  for (std::size_t a = 0; a < k; ++a) {
    deg[a] = g.adjacency[s[a]].size();
    std::uint64_t mask = 0;
    for (std::uint32_t w : g.adjacency[s[a]])
      if (member[w]) mask |= 1ull << pos[w];
    inner[a] = mask;
  }
  auto delta_of = [&](std::uint64_t mask) {
    std::uint64_t d = 0, count = 0;
    for (std::size_t a = 0; a < k; ++a) {
      if (!(mask >> a & 1)) continue;
      ++count;
      d += deg[a] - static_cast<std::uint64_t>(__builtin_popcountll(inner[a] & mask));
    }
    return i * static_cast<long>(count) - Rational(d);
  };
  const std::uint64_t full = k == 64 ? ~0ull : (1ull << k) - 1;
  const Rational ds = delta_of(full);
  for (std::uint64_t mask = 0; mask < full; ++mask)
    if (!(ds > delta_of(mask))) return false;
  return true;
}

}  // namespace hypvoro
