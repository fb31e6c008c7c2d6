#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "turan_forge/errors.hpp"
#include "turan_forge/generators.hpp"
#include "turan_forge/transforms.hpp"

using namespace tf;

namespace {

// Largest cut over every 2-colouring.
std::size_t max_cut(const Graph& g) {
  std::size_t best = 0;
  auto edges = g.edges();
  for (unsigned mask = 0; mask < (1u << g.n()); ++mask) {
    std::size_t cut = 0;
    for (auto [u, v] : edges) cut += ((mask >> u) & 1u) != ((mask >> v) & 1u);
    best = std::max(best, cut);
  }
  return best;
}

int live_min_degree(const Graph& g) {
  int m = -1;
  for (int v = 0; v < g.n(); ++v)
    if (!g.deleted(v) && (m < 0 || g.degree(v) < m)) m = g.degree(v);
  return m;
}

int live_max_degree(const Graph& g) {
  int m = 0;
  for (int v = 0; v < g.n(); ++v)
    if (!g.deleted(v)) m = std::max(m, g.degree(v));
  return m;
}

// Recount of the clean condition for uv in the u orientation.
int witnesses(const Graph& g, int u, int v, double min_codeg) {
  int c = 0;
  for (int w = 0; w < g.n(); ++w)
    if (w != v && oracle::adj(g, u, w) && oracle::codeg(g, v, w) >= min_codeg) ++c;
  return c;
}

}  // namespace

TEST_CASE("peel examples") {
  Graph tri = build_graph(4, {{0, 1}, {1, 2}, {0, 2}});
  auto r = peel_min_degree(tri);
  CHECK(r.graph.deleted(3));
  CHECK(r.graph.edge_count() == 3);
  CHECK(r.report.deleted_vertices == std::vector<int>{3});

  Graph star = build_graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  auto s = peel_min_degree(star);
  CHECK(s.graph.live_count() == 6);
  CHECK(s.graph.edge_count() == 5);

  Graph two = build_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK(peel_min_degree(two).graph.edge_count() == 6);

  CHECK_THROWS_AS(peel_min_degree(build_graph(5, {})), InputError);
}

TEST_CASE("peel keeps half the edges and the degree floor") {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 5 + int(rng.below(40));
    Graph g = oracle::random_graph(n, 0.05 + 0.4 * rng.uniform(), rng);
    if (g.edge_count() == 0) continue;
    const double d = g.average_degree();
    auto r = peel_min_degree(g);
    CAPTURE(trial);
    CHECK(2 * r.graph.edge_count() >= g.edge_count());
    CHECK(live_min_degree(r.graph) >= d / 4.0);
    CHECK(r.report.output.e == r.graph.edge_count());
    CHECK(r.report.output.n == r.graph.live_count());
    CHECK(r.report.input.e == g.edge_count());
  }
}

TEST_CASE("peel_below leaves no live vertex under the threshold") {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = oracle::random_graph(30, 0.2, rng);
    const double thr = 1 + int(rng.below(6));
    auto r = peel_below(g, thr);
    for (int v : r.graph.live_vertices()) CHECK(r.graph.degree(v) >= thr);
  }
}

TEST_CASE("bipartite half examples") {
  CHECK(bipartite_half(complete_graph(3)).graph.edge_count() == 2);
  Graph kab = complete_bipartite(3, 4);
  CHECK(bipartite_half(kab).graph.edge_count() == 12);
  Graph c5 = cycle_graph(5);
  CHECK(max_cut(c5) == 4);
  CHECK(bipartite_half(c5).graph.edge_count() == 4);
}

TEST_CASE("bipartite half output is bipartite with at least half the edges") {
  Rng rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = oracle::random_graph(4 + int(rng.below(30)), 0.1 + 0.6 * rng.uniform(), rng);
    auto r = bipartite_half(g);
    CHECK(2 * r.graph.edge_count() >= g.edge_count());
    for (auto [u, v] : r.graph.edges()) CHECK(r.side[u] != r.side[v]);
    // local optimality of the final partition
    for (int v = 0; v < g.n(); ++v) {
      int same = 0;
      for (int w : g.neighbors(v)) same += r.side[w] == r.side[v];
      CHECK(2 * same <= g.degree(v));
    }
    if (g.n() <= 12) CHECK(r.graph.edge_count() <= max_cut(g));
  }
}

TEST_CASE("almost regular examples") {
  auto k10 = almost_regular_subgraph(complete_graph(10), 0.5, 0.5, 1.0);
  REQUIRE(k10.found);
  CHECK(k10.graph.edge_count() == 45);
  CHECK(k10.graph.live_count() == 10);

  std::vector<Edge> e;
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v) e.emplace_back(u, v);
  auto padded = almost_regular_subgraph(build_graph(56, e), 0.1, 0.1, 1.0);
  REQUIRE(padded.found);
  CHECK(padded.graph.live_count() == 6);
  CHECK(padded.graph.edge_count() == 15);

  std::vector<Edge> star;
  for (int v = 1; v <= 1000; ++v) star.emplace_back(0, v);
  CHECK_THROWS_AS(almost_regular_subgraph(build_graph(1001, star), 0.5, 1.0, 8.0), InputError);
  CHECK_THROWS_AS(almost_regular_subgraph(complete_graph(4), 0.5, 0.1, 0.5), InputError);
}

TEST_CASE("almost regular output satisfies its bounds when found") {
  Rng rng(33);
  int found = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = oracle::random_graph(20 + int(rng.below(60)), 0.1 + 0.5 * rng.uniform(), rng);
    const double eps = 0.2, c = 0.2;
    if (double(g.edge_count()) < c * std::pow(g.live_count(), 1 + eps)) continue;
    const double k = 1.5 + 4 * rng.uniform();
    auto r = almost_regular_subgraph(g, eps, c, k);
    if (!r.found) continue;
    ++found;
    const double m = r.graph.live_count();
    CHECK(live_max_degree(r.graph) <= k * live_min_degree(r.graph));
    CHECK(double(r.graph.edge_count()) >= 2 * c / 5 * std::pow(m, 1 + eps));
    for (auto [u, v] : r.graph.edges()) CHECK(g.adjacent(u, v));
  }
  CHECK(found > 0);
}

TEST_CASE("clean examples") {
  auto kmm = clean_subgraph(complete_bipartite(16, 16));
  CHECK(kmm.graph.edge_count() == 256);
  CHECK(kmm.report.deleted_edges.empty());

  // C4 0-1-2-3 with pendant 3-4. n = 5, d = 2: an edge survives only if both
  // ends see a neighbour w != other end with codeg >= 4/640, i.e. codeg >= 1.
  Graph g = build_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {3, 4}});
  const double need = 2.0 / 16, min_codeg = 4.0 / 640;
  CHECK(witnesses(g, 4, 3, min_codeg) < need);
  for (auto [u, v] : std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {0, 3}}) {
    CHECK(witnesses(g, u, v, min_codeg) >= need);
    CHECK(witnesses(g, v, u, min_codeg) >= need);
  }
  auto r = clean_subgraph(g);
  CHECK(r.report.deleted_edges == std::vector<Edge>{{3, 4}});
  CHECK(r.graph.edge_count() == 4);

  CHECK(clean_subgraph(build_graph(4, {})).graph.edge_count() == 0);
}

TEST_CASE("clean output meets the clean condition on direct recount") {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = oracle::random_graph(10 + int(rng.below(25)), 0.15 + 0.5 * rng.uniform(), rng);
    const double n = g.live_count();
    for (CleanMode mode : {CleanMode::fixed, CleanMode::self}) {
      auto r = clean_subgraph(g, mode);
      const Graph& h = r.graph;
      if (h.edge_count() == 0) continue;
      // self mode thresholds come from the output's own average degree
      const double d = mode == CleanMode::self ? h.average_degree() : g.average_degree();
      CHECK(r.d_used == doctest::Approx(d));
      const double need = d / 16, min_codeg = d * d / (128 * n);
      for (auto [u, v] : h.edges()) {
        CHECK(witnesses(h, u, v, min_codeg) >= need);
        CHECK(witnesses(h, v, u, min_codeg) >= need);
        CHECK(clean_witnesses(h, u, v, min_codeg) == witnesses(h, u, v, min_codeg));
      }
      CHECK(h.edge_count() + r.report.deleted_edges.size() == g.edge_count());
    }
  }
}
