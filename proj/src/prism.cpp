#include <algorithm>
#include <cmath>
#include <optional>

#include "turan_forge/counting.hpp"
#include "turan_forge/embedders.hpp"
#include "turan_forge/errors.hpp"
#include "turan_forge/rng.hpp"
#include "turan_forge/transforms.hpp"
#include "portfolio.hpp"

namespace tf {

namespace {

constexpr std::size_t kMaxLocalSide = 8192;

// Bipartite graph between X and Y with edge deletions and a codegree table over X.
struct Residue {
  std::vector<int> xs, ys;         // host ids
  std::vector<int> xi, yi;         // host id -> local index, -1 outside
  std::vector<char> alive;         // xs.size() * ys.size()
  std::vector<int> cod;            // xs.size()^2
  std::vector<int> deg_x, deg_y;
  std::vector<std::vector<int>> nx, ny;  // local adjacency, pruned lazily

  std::size_t nX() const { return xs.size(); }
  std::size_t nY() const { return ys.size(); }
  bool edge(int x, int y) const { return alive[std::size_t(x) * nY() + y] != 0; }
  int& codeg(int a, int b) { return cod[std::size_t(a) * nX() + b]; }

  void delete_edge(int x, int y) {
    alive[std::size_t(x) * nY() + y] = 0;
    --deg_x[x];
    --deg_y[y];
    for (int z : ny[y])
      if (z != x && edge(z, y)) {
        --codeg(x, z);
        --codeg(z, x);
      }
  }

  std::vector<int> live_nbrs_y(int y) const {
    std::vector<int> out;
    for (int x : ny[y])
      if (edge(x, y)) out.push_back(x);
    return out;
  }
  std::vector<int> live_nbrs_x(int x) const {
    std::vector<int> out;
    for (int y : nx[x])
      if (edge(x, y)) out.push_back(y);
    return out;
  }

  // z in N(y), z != x, codeg(x, z) >= need
  int qualifying(int x, int y, int need) {
    int c = 0;
    for (int z : ny[y])
      if (z != x && edge(z, y) && codeg(x, z) >= need) ++c;
    return c;
  }
};

Residue make_residue(const Graph& h, const VertexSet& X, const VertexSet& Y) {
  if (X.size() > kMaxLocalSide || Y.size() > kMaxLocalSide)
    throw ResourceError("find_prism_path: parts larger than " + std::to_string(kMaxLocalSide));
  Residue r;
  r.xs = X;
  r.ys = Y;
  r.xi.assign(h.n(), -1);
  r.yi.assign(h.n(), -1);
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (X[i] < 0 || X[i] >= h.n()) throw InputError("find_prism_path: X vertex out of range");
    r.xi[X[i]] = int(i);
  }
  for (std::size_t i = 0; i < Y.size(); ++i) {
    if (Y[i] < 0 || Y[i] >= h.n()) throw InputError("find_prism_path: Y vertex out of range");
    if (r.xi[Y[i]] >= 0) throw InputError("find_prism_path: X and Y overlap");
    r.yi[Y[i]] = int(i);
  }
  r.alive.assign(X.size() * Y.size(), 0);
  r.deg_x.assign(X.size(), 0);
  r.deg_y.assign(Y.size(), 0);
  r.nx.assign(X.size(), {});
  r.ny.assign(Y.size(), {});
  for (std::size_t a = 0; a < X.size(); ++a)
    for (int w : h.neighbors(X[a]))
      if (int b = r.yi[w]; b >= 0) {
        r.alive[a * Y.size() + b] = 1;
        r.nx[a].push_back(b);
        r.ny[b].push_back(int(a));
        ++r.deg_x[a];
        ++r.deg_y[b];
      }
  r.cod.assign(X.size() * X.size(), 0);
  for (std::size_t b = 0; b < Y.size(); ++b)
    for (std::size_t i = 0; i < r.ny[b].size(); ++i)
      for (std::size_t j = i + 1; j < r.ny[b].size(); ++j) {
        ++r.codeg(r.ny[b][i], r.ny[b][j]);
        ++r.codeg(r.ny[b][j], r.ny[b][i]);
      }
  return r;
}

// Greedy ladder on the residue, backtracking over the choices. Rung i joins
// rails[0][i] and rails[1][i]; each new X vertex z extends the rail holding
// the previous Y vertex, and the new Y vertex w the other rail.
struct LadderSearch {
  Residue& r;
  int t;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::vector<char> used_x, used_y;
  // Per rung: (x local, y local, rail of x).
  std::vector<std::tuple<int, int, int>> rungs;

  LadderSearch(Residue& res, int t_, std::uint64_t b)
      : r(res), t(t_), budget(b), used_x(res.nX(), 0), used_y(res.nY(), 0) {}

  bool grow() {
    if (int(rungs.size()) == t) return true;
    if (nodes >= budget) return false;
    auto [x, y, rail_x] = rungs.back();
    for (int z : r.live_nbrs_y(y)) {
      if (used_x[z] || r.codeg(x, z) < 2 * t) continue;
      for (int w : r.live_nbrs_x(x)) {
        if (++nodes >= budget) return false;
        if (used_y[w] || !r.edge(z, w)) continue;
        used_x[z] = used_y[w] = 1;
        rungs.emplace_back(z, w, 1 - rail_x);
        if (grow()) return true;
        rungs.pop_back();
        used_x[z] = used_y[w] = 0;
      }
    }
    return false;
  }

  bool run(const std::vector<Edge>& starts) {
    for (auto [x, y] : starts) {
      if (nodes >= budget) return false;
      ++nodes;
      used_x[x] = used_y[y] = 1;
      rungs = {{x, y, 0}};
      if (grow()) return true;
      used_x[x] = used_y[y] = 0;
    }
    return false;
  }
};

}  // namespace

PrismPathResult find_prism_path(const Graph& h, const VertexSet& X, const VertexSet& Y, int t,
                                std::uint64_t budget) {
  PatternSpec::prism_path(t).validate();
  PrismPathResult out;
  Residue r = make_residue(h, X, Y);
  out.x_size = r.nX();
  out.y_size = r.nY();
  for (int d : r.deg_x) out.edges += d;
  const double e0 = double(out.edges);
  const double ny = std::max<std::size_t>(1, r.nY());
  out.hypothesis_edges = e0 >= 20.0 * t * ny;
  out.hypothesis_degrees = true;
  for (int d : r.deg_x)
    if (d < 20.0 * t * std::sqrt(ny)) out.hypothesis_degrees = false;
  const double type1_cap = e0 / (4 * ny);
  const double threshold = e0 / (8 * ny);
  out.residue_threshold = threshold;

  std::vector<char> y_gone(r.nY(), 0);
  auto type1 = [&](int y) {
    if (y_gone[y] || r.deg_y[y] < 1 || r.deg_y[y] > type1_cap) return false;
    for (int x : r.live_nbrs_y(y)) r.delete_edge(x, y);
    y_gone[y] = 1;
    ++out.type1_deletions;
    return true;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t y = 0; y < r.nY(); ++y) changed |= type1(int(y));
    bool pass = true;
    while (pass) {
      pass = false;
      for (std::size_t x = 0; x < r.nX(); ++x)
        for (int y : r.live_nbrs_x(int(x))) {
          if (!r.edge(int(x), y) || r.qualifying(int(x), y, 2 * t) >= threshold) continue;
          r.delete_edge(int(x), y);
          ++out.type2_deletions;
          pass = changed = true;
          type1(y);
        }
    }
  }

  std::vector<Edge> local;
  for (std::size_t x = 0; x < r.nX(); ++x)
    for (int y : r.live_nbrs_x(int(x))) {
      local.emplace_back(int(x), y);
      out.residue.emplace_back(r.xs[x], r.ys[y]);
      if (r.qualifying(int(x), y, 2 * t) < threshold) out.residue_invariant = false;
    }
  if (!out.residue_invariant) throw IntegrityError("find_prism_path: residue invariant fails after the deletion process");

  Json diag{{"edges", out.edges},
            {"x_size", out.x_size},
            {"y_size", out.y_size},
            {"hypothesis_edges", out.hypothesis_edges},
            {"hypothesis_degrees", out.hypothesis_degrees},
            {"type1_deletions", out.type1_deletions},
            {"type2_deletions", out.type2_deletions},
            {"residue_threshold", threshold},
            {"residue_edges", out.residue.size()}};
  out.embed.diagnostics = diag;
  if (local.empty()) {
    if (out.hypothesis_edges && out.hypothesis_degrees)
      throw IntegrityError("find_prism_path: residue is empty although both hypotheses hold");
    out.embed.reason = "the deletion process removed every edge";
    return out;
  }

  LadderSearch s(r, t, std::max<std::uint64_t>(1, budget));
  const bool ok = s.run(local);
  out.embed.diagnostics["nodes"] = s.nodes;
  if (!ok) {
    out.embed.reason = s.nodes >= s.budget ? "ladder search budget exhausted" : "no ladder found in the residue";
    return out;
  }
  out.rails[0].assign(t, -1);
  out.rails[1].assign(t, -1);
  for (int i = 0; i < t; ++i) {
    auto [x, y, rail_x] = s.rungs[i];
    out.rails[rail_x][i] = r.xs[x];
    out.rails[1 - rail_x][i] = r.ys[y];
  }
  const Pattern p = pattern(PatternSpec::prism_path(t));
  std::vector<int> host_of(p.graph.n(), -1);
  for (int i = 1; i <= t; ++i) {
    host_of[p.vertex(1, i)] = out.rails[0][i - 1];
    host_of[p.vertex(2, i)] = out.rails[1][i - 1];
  }
  out.embed.found = true;
  out.embed.certificate = EmbeddingCertificate::for_pattern(p, host_of, Json{{"embedder", "prism_path"}, {"t", t}});
  auto check = verify_certificate(h, out.embed.certificate);
  if (!check.ok) throw IntegrityError("find_prism_path produced an invalid certificate: " + check.message);
  return out;
}

PrismPathResult find_prism_path(const Graph& h, int t, std::uint64_t budget) {
  auto color = two_coloring(h);
  if (color.empty() && h.n() > 0) throw InputError("find_prism_path needs a bipartite graph");
  VertexSet part[2];
  for (int v = 0; v < h.n(); ++v)
    if (!h.deleted(v)) part[color[v]].push_back(v);
  const int small = part[0].size() <= part[1].size() ? 0 : 1;
  auto first = find_prism_path(h, part[1 - small], part[small], t, budget);
  if (first.embed.found) return first;
  auto second = find_prism_path(h, part[small], part[1 - small], t, budget);
  return second.embed.found ? second : first;
}

namespace {

// Closed walk of 2*ell ordered edges (a_i, b_i) in which consecutive pairs
// span the thin 4-cycle a_i b_i a_{i+1} b_{i+1}. All 4*ell vertices distinct.
struct ThinSearch {
  const Graph& g;
  int ell;
  double tau;
  int branching;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  Rng rng;
  std::vector<char> used;
  std::vector<int> a, b;

  ThinSearch(const Graph& host, int ell_, double tau_, int br, std::uint64_t bud, std::uint64_t seed)
      : g(host), ell(ell_), tau(tau_), branching(br), budget(bud), rng(seed), used(host.n(), 0) {}

  bool thin(int p, int q) const { return g.codegree(p, q) <= tau; }

  // Successors (c, e) of (x, y): c in N(y), e in N(x) and N(c), codeg(x, c) and codeg(y, e) thin.
  std::vector<Edge> successors(int x, int y, std::size_t limit) {
    std::vector<Edge> out;
    std::vector<int> cs(g.neighbors(y).begin(), g.neighbors(y).end());
    rng.shuffle(cs);
    for (int c : cs) {
      if (++nodes >= budget) return out;
      if (used[c] || c == x || !thin(x, c)) continue;
      auto es = common_neighbors(g, x, c);
      rng.shuffle(es);
      for (int e : es) {
        if (++nodes >= budget) return out;
        if (used[e] || e == y || !thin(y, e)) continue;
        out.emplace_back(c, e);
        if (out.size() >= limit) return out;
        break;  // one partner per c keeps the children varied
      }
    }
    return out;
  }

  bool closing() {
    const int x = a.back(), y = b.back();
    const int a1 = a[0], b1 = b[0];
    // a_{2ell} in N(y) and N(b1); b_{2ell} in N(x), N(a_{2ell}) and N(a1).
    for (int c : common_neighbors(g, y, b1)) {
      if (++nodes >= budget) return false;
      if (used[c] || !thin(x, c) || !thin(c, a1)) continue;
      used[c] = 1;
      for (int e : common_neighbors(g, x, c)) {
        if (++nodes >= budget) break;
        if (used[e] || !g.adjacent(e, a1) || !thin(y, e) || !thin(e, b1)) continue;
        a.push_back(c);
        b.push_back(e);
        used[e] = 1;
        return true;
      }
      used[c] = 0;
    }
    return false;
  }

  bool extend() {
    if (nodes >= budget) return false;
    if (int(a.size()) == 2 * ell - 1) return closing();
    for (auto [c, e] : successors(a.back(), b.back(), std::max(1, branching))) {
      a.push_back(c);
      b.push_back(e);
      used[c] = used[e] = 1;
      if (extend()) return true;
      used[c] = used[e] = 0;
      a.pop_back();
      b.pop_back();
      if (nodes >= budget) return false;
    }
    return false;
  }

  bool run(const std::vector<int>& live) {
    while (nodes < budget) {
      ++nodes;
      int x = live[rng.below(live.size())];
      if (g.degree(x) == 0) continue;
      int y = g.neighbors(x)[rng.below(g.degree(x))];
      a = {x};
      b = {y};
      used[x] = used[y] = 1;
      if (extend()) return true;
      used[x] = used[y] = 0;
    }
    return false;
  }
};

EmbedResult prism_certificate(const Graph& g, int ell, const std::vector<int>& outer, const std::vector<int>& inner,
                              Json method) {
  const Pattern p = pattern(PatternSpec::prism(ell));
  std::vector<int> host_of(p.graph.n(), -1);
  for (int i = 1; i <= 2 * ell; ++i) {
    host_of[p.vertex(1, i)] = outer[i - 1];
    host_of[p.vertex(2, i)] = inner[i - 1];
  }
  EmbedResult r;
  r.found = true;
  r.certificate = EmbeddingCertificate::for_pattern(p, host_of, std::move(method));
  auto check = verify_certificate(g, r.certificate);
  if (!check.ok) throw IntegrityError("find_prism produced an invalid certificate: " + check.message);
  return r;
}

}  // namespace

EmbedResult find_prism(const Graph& g, int ell, const PrismOptions& opt) {
  PatternSpec::prism(ell).validate();
  EmbedResult res;
  auto half = bipartite_half(g);
  auto peeled = peel_min_degree(half.graph);
  Graph h = peeled.graph;
  h.build_codegree_cache();
  const double d = h.average_degree();
  const auto cls = classify_c4(h, opt.T, opt.classify_cap, 0);
  const double tau = cls.threshold;
  res.diagnostics["d"] = d;
  res.diagnostics["tau"] = tau;
  res.diagnostics["thin_c4"] = cls.thin_count;
  res.diagnostics["thick_c4"] = cls.thick_count;
  res.diagnostics["c4_truncated"] = cls.truncated;
  const bool thin_first = cls.thin_count >= cls.thick_count;
  res.diagnostics["branch_order"] = thin_first ? Json::array({"thin", "thick"}) : Json::array({"thick", "thin"});
  if (cls.thin_count + cls.thick_count == 0) {
    res.reason = "no 4-cycles after half and peel";
    return res;
  }

  auto live = h.live_vertices();
  std::erase_if(live, [&](int v) { return h.degree(v) == 0; });

  auto thin_branch = [&]() -> std::optional<EmbedResult> {
    const auto& so = opt.search;
    const int restarts = std::max(1, so.restarts);
    const std::uint64_t per_run = std::max<std::uint64_t>(1, so.budget / restarts);
    auto pf = detail::run_portfolio<std::pair<std::vector<int>, std::vector<int>>>(
        restarts, so.threads,
        [&](int r, std::uint64_t& spent) -> std::optional<std::pair<std::vector<int>, std::vector<int>>> {
          ThinSearch s(h, ell, tau, so.branching, per_run, derive_seed(so.seed, r));
          bool ok = s.run(live);
          spent = s.nodes;
          if (!ok) return std::nullopt;
          return std::make_pair(s.a, s.b);
        });
    res.diagnostics["thin"] = {{"restarts_run", pf.runs}, {"nodes", pf.nodes}, {"found", bool(pf.value)}};
    if (!pf.value) return std::nullopt;
    const auto& [a, b] = *pf.value;
    std::vector<int> outer(2 * ell), inner(2 * ell);
    for (int i = 0; i < 2 * ell; ++i) {
      outer[i] = i % 2 == 0 ? a[i] : b[i];
      inner[i] = i % 2 == 0 ? b[i] : a[i];
    }
    return prism_certificate(g, ell, outer, inner,
                             Json{{"embedder", "prism"}, {"branch", "thin"}, {"ell", ell}, {"T", opt.T},
                                  {"seed", so.seed}, {"restart", pf.winner}});
  };

  auto thick_branch = [&]() -> std::optional<EmbedResult> {
    struct Scored {
      std::uint64_t score;
      int u, v;
    };
    std::vector<Scored> scored;
    for (int u : live)
      for (int v : h.neighbors(u)) {
        std::uint64_t s = 0;
        for (int w : h.neighbors(v))
          if (w != u) {
            int c = h.codegree(u, w);
            if (c > tau) s += c - 1;
          }
        if (s > 0) scored.push_back({s, u, v});
      }
    std::sort(scored.begin(), scored.end(), [](const Scored& x, const Scored& y) {
      if (x.score != y.score) return x.score > y.score;
      return std::tie(x.u, x.v) < std::tie(y.u, y.v);
    });
    const int tries = std::min<int>(std::max(1, opt.thick_edges), int(scored.size()));
    Json attempts = Json::array();
    const std::uint64_t per_edge = std::max<std::uint64_t>(1, opt.search.budget / std::max(1, tries));
    for (int i = 0; i < tries; ++i) {
      const int u = scored[i].u, v = scored[i].v;
      VertexSet X, Y;
      for (int w : h.neighbors(v))
        if (w != u && h.codegree(u, w) > tau) X.push_back(w);
      for (int w : h.neighbors(u))
        if (w != v) Y.push_back(w);
      auto pp = find_prism_path(h, X, Y, 2 * ell - 1, per_edge);
      attempts.push_back({{"u", u}, {"v", v}, {"score", scored[i].score}, {"found", pp.embed.found},
                          {"residue_edges", pp.residue.size()}});
      if (!pp.embed.found) continue;
      // The rail starting in Y = N(u) continues the u side.
      const int r1 = h.adjacent(pp.rails[0][0], u) ? 0 : 1;
      std::vector<int> outer{u}, inner{v};
      outer.insert(outer.end(), pp.rails[r1].begin(), pp.rails[r1].end());
      inner.insert(inner.end(), pp.rails[1 - r1].begin(), pp.rails[1 - r1].end());
      res.diagnostics["thick"] = {{"edges_scored", scored.size()}, {"attempts", attempts}};
      return prism_certificate(g, ell, outer, inner,
                               Json{{"embedder", "prism"}, {"branch", "thick"}, {"ell", ell}, {"T", opt.T},
                                    {"u", u}, {"v", v}});
    }
    res.diagnostics["thick"] = {{"edges_scored", scored.size()}, {"attempts", attempts}};
    return std::nullopt;
  };

  for (int step = 0; step < 2; ++step) {
    const bool thin_now = (step == 0) == thin_first;
    auto hit = thin_now ? thin_branch() : thick_branch();
    if (hit) {
      hit->diagnostics = res.diagnostics;
      hit->diagnostics["branch"] = thin_now ? "thin" : "thick";
      return *hit;
    }
  }
  res.reason = "both branches exhausted";
  return res;
}

}  // namespace tf
