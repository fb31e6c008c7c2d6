#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>

#include "oracles.hpp"
#include "turan_forge/counting.hpp"
#include "turan_forge/errors.hpp"
#include "turan_forge/generators.hpp"
#include "turan_forge/oracle.hpp"

using namespace tf;

namespace {

// Largest edge count over all 2^C(n,2) labelled graphs on n vertices
// rejected by `has`, which sees the graph as per-vertex neighbour bitmasks.
template <class Has>
int brute_ex(int n, Has&& has) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  int best = 0;
  std::vector<unsigned> nb(n);
  for (unsigned long mask = 0; mask < (1ul << pairs.size()); ++mask) {
    const int e = std::popcount(mask);
    if (e <= best) continue;
    std::fill(nb.begin(), nb.end(), 0u);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1ul) {
        nb[pairs[i].first] |= 1u << pairs[i].second;
        nb[pairs[i].second] |= 1u << pairs[i].first;
      }
    if (!has(nb)) best = e;
  }
  return best;
}

bool has_c4(const std::vector<unsigned>& nb) {
  for (std::size_t u = 0; u < nb.size(); ++u)
    for (std::size_t v = u + 1; v < nb.size(); ++v)
      if (std::popcount(nb[u] & nb[v]) >= 2) return true;
  return false;
}

bool has_triangle(const std::vector<unsigned>& nb) {
  for (std::size_t u = 0; u < nb.size(); ++u)
    for (std::size_t v = u + 1; v < nb.size(); ++v)
      if ((nb[u] >> v & 1u) && (nb[u] & nb[v])) return true;
  return false;
}

int kst_bound(int n) { return int(std::floor(n / 4.0 * (1 + std::sqrt(4.0 * n - 3)))); }

}  // namespace

TEST_CASE("subgraph search examples") {
  Graph c4 = cycle_graph(4);
  auto self = find_subgraph(c4, c4);
  REQUIRE(self.found());
  CHECK(oracle::check_graph(c4, c4, self.certificate));
  CHECK(verify_certificate(c4, self.certificate).ok);

  auto pol = find_subgraph(polarity_graph(3), c4);
  CHECK(pol.absent());
  CHECK_FALSE(pol.found());

  Graph f33 = pattern(PatternSpec::grid(3)).graph;
  Graph f44 = pattern(PatternSpec::grid(4)).graph;
  auto grid = find_subgraph(f44, f33);
  REQUIRE(grid.found());
  CHECK(oracle::check_graph(f44, f33, grid.certificate));
  CHECK_FALSE(find_subgraph(f33, f44).found());
  CHECK(find_subgraph(f33, f44).absent());
}

TEST_CASE("subgraph search agrees with brute force and cycle counts") {
  Rng rng(301);
  for (int trial = 0; trial < 40; ++trial) {
    Graph host = oracle::random_graph(6 + int(rng.below(14)), 0.1 + 0.3 * rng.uniform(), rng);
    for (int ell = 2; ell <= 3; ++ell) {
      Graph cyc = cycle_graph(2 * ell);
      auto r = find_subgraph(host, cyc);
      CAPTURE(trial);
      CAPTURE(ell);
      CHECK(r.found() == (count_even_cycles(host, ell).count > 0));
      CHECK(r.found() != r.absent());
      if (r.found()) CHECK(oracle::check_graph(host, cyc, r.certificate));
    }
    if (host.n() <= 9) {
      Graph pat = oracle::random_graph(4, 0.6, rng);
      CHECK(find_subgraph(host, pat).found() == oracle::contains(host, pat));
    }
  }
}

TEST_CASE("subgraph search budget and threads") {
  Graph host = random_graph(300, 0.05, 9, false);
  Graph big = pattern(PatternSpec::grid(5)).graph;
  auto tight = find_subgraph(host, big, 50);
  CHECK(tight.stats.kind == SearchKind::budget);
  CHECK_FALSE(tight.found());
  CHECK_FALSE(tight.absent());

  Graph dense = random_graph(60, 0.3, 4, false);
  Graph prism = pattern(PatternSpec::prism(3)).graph;
  auto one = find_subgraph(dense, prism, 100'000'000, 1);
  auto four = find_subgraph(dense, prism, 100'000'000, 4);
  REQUIRE(one.found());
  REQUIRE(four.found());
  CHECK(one.certificate.mapping == four.certificate.mapping);
}

TEST_CASE("certificate verification failures") {
  Graph host = cycle_graph(5);
  Pattern p = pattern(PatternSpec::even_cycle(2));
  std::vector<int> host_of(4);
  for (int v = 0; v < 4; ++v) host_of[v] = v;
  auto bad_edge = EmbeddingCertificate::for_pattern(p, host_of, Json::object());
  auto r = verify_certificate(host, bad_edge);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.message.empty());

  Graph k4 = complete_graph(4);
  CHECK(verify_certificate(k4, bad_edge).ok);
  auto dup = bad_edge;
  dup.mapping[1].second = dup.mapping[0].second;
  CHECK_FALSE(verify_certificate(k4, dup).ok);
  auto missing = bad_edge;
  missing.mapping.pop_back();
  CHECK_FALSE(verify_certificate(k4, missing).ok);
  auto outside = bad_edge;
  outside.mapping[0].second = 17;
  CHECK_FALSE(verify_certificate(k4, outside).ok);

  auto back = certificate_from_json(to_json(bad_edge));
  CHECK(back.mapping == bad_edge.mapping);
  CHECK(verify_certificate(k4, back).ok);
}

TEST_CASE("exhaustive extremal numbers for the 4-cycle") {
  Graph c4 = cycle_graph(4);
  std::vector<int> values;
  for (int n = 3; n <= 7; ++n) {
    auto r = max_edges_exhaustive(n, c4);
    CAPTURE(n);
    CHECK(r.n == n);
    CHECK(r.max_edges == brute_ex(n, has_c4));
    CHECK(r.max_edges <= kst_bound(n));
    CHECK(int(r.witness.edge_count()) == r.max_edges);
    CHECK_FALSE(oracle::contains(r.witness, c4));
    CHECK(r.classes > 0);
    values.push_back(r.max_edges);
  }
  CHECK(values[0] == 3);
  CHECK(values[1] == 4);
  CHECK(values == std::vector<int>{3, 4, 6, 7, 9});
  for (std::size_t i = 1; i < values.size(); ++i) CHECK(values[i] >= values[i - 1]);
  CHECK_THROWS_AS(max_edges_exhaustive(10, c4), InputError);
}

TEST_CASE("exhaustive extremal numbers for the triangle") {
  Graph k3 = complete_graph(3);
  for (int n = 3; n <= 6; ++n) {
    auto r = max_edges_exhaustive(n, k3);
    CHECK(r.max_edges == brute_ex(n, has_triangle));
    CHECK(r.max_edges == n * n / 4);
    CHECK_FALSE(oracle::contains(r.witness, k3));
  }
}
