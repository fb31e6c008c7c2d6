#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "turan_forge/errors.hpp"
#include "turan_forge/generators.hpp"

using namespace tf;

namespace {

// The pattern generator and the definition oracle describe the same labelled graph.
void check_against_definition(const PatternSpec& spec) {
  CAPTURE(spec.describe());
  const Pattern p = pattern(spec);
  const auto def = oracle::define(spec);
  CHECK(p.graph.n() == int(def.vertices.size()));
  CHECK(p.graph.edge_count() == def.edges.size());
  for (const auto& [coord, rep] : def.rep) CHECK(p.vertex(coord) == p.vertex(rep));
  for (const auto& [a, b] : def.edges) CHECK(p.graph.adjacent(p.vertex(a), p.vertex(b)));
}

}  // namespace

TEST_CASE("polarity graphs have the expected size and codegree at most 1") {
  for (int q : {2, 3, 4, 5, 7}) {
    CAPTURE(q);
    Graph g = polarity_graph(q);
    CHECK(g.n() == q * q + q + 1);
    CHECK(g.edge_count() == std::size_t(q * (q + 1) * (q + 1) / 2));
    for (int u = 0; u < g.n(); ++u)
      for (int v = u + 1; v < g.n(); ++v) CHECK(oracle::codeg(g, u, v) <= 1);
  }
  CHECK_THROWS_AS(polarity_graph(6), InputError);
  CHECK_FALSE(polarity_supported(6));
  CHECK(polarity_supported(9));
}

TEST_CASE("polarity points are normalised and distinct") {
  auto pts = polarity_points(3);
  CHECK(pts.size() == 13);
  for (const auto& p : pts) {
    int lead = p[0] != 0 ? p[0] : p[1] != 0 ? p[1] : p[2];
    CHECK(lead == 1);
  }
  CHECK(std::set<std::array<int, 3>>(pts.begin(), pts.end()).size() == pts.size());
}

TEST_CASE("named patterns match their definitions") {
  for (int t = 1; t <= 5; ++t) check_against_definition(PatternSpec::grid(t));
  for (int l = 2; l <= 6; ++l) check_against_definition(PatternSpec::prism(l));
  for (int t = 1; t <= 5; ++t) check_against_definition(PatternSpec::prism_path(t));
  for (int k = 2; k <= 5; ++k)
    for (int l = 2; l <= 5; ++l) check_against_definition(PatternSpec::cylinder(k, l));
  for (int k : {4, 6})
    for (int l = 2; l <= 4; ++l) check_against_definition(PatternSpec::torus(k, l));
  for (auto [k, l] : std::vector<std::pair<int, int>>{{1, 2}, {1, 4}, {3, 2}, {3, 4}, {5, 4}, {5, 6}})
    check_against_definition(PatternSpec::honeycomb(k, l));
  for (int l = 2; l <= 5; ++l) check_against_definition(PatternSpec::even_cycle(l));
}

TEST_CASE("pattern structure") {
  for (int l = 2; l <= 6; ++l) {
    Graph g = pattern(PatternSpec::prism(l)).graph;
    CHECK(!two_coloring(g).empty());
    for (int v = 0; v < g.n(); ++v) CHECK(g.degree(v) == 3);
  }
  for (int k : {4, 6})
    for (int l = 2; l <= 4; ++l) {
      Graph g = pattern(PatternSpec::torus(k, l)).graph;
      for (int v = 0; v < g.n(); ++v) CHECK(g.degree(v) == 4);
    }
  // cylinder k=2, l=3 is a 6-cycle
  Graph cyl = pattern(PatternSpec::cylinder(2, 3)).graph;
  CHECK(cyl.n() == 6);
  CHECK(cyl.edge_count() == 6);
  CHECK(oracle::cycles(cyl, 6) == 1);
  Graph hc = pattern(PatternSpec::honeycomb(3, 4)).graph;
  CHECK(hc.n() == 3 * 4 - 4 + 2);
  CHECK(oracle::cycles(hc, 6) > 0);
  CHECK(oracle::cycles(pattern(PatternSpec::cylinder(3, 3)).graph, 4) > 0);
}

TEST_CASE("pattern parameter constraints") {
  CHECK_THROWS_AS(PatternSpec::grid(0).validate(), InputError);
  CHECK_THROWS_AS(PatternSpec::prism(1).validate(), InputError);
  CHECK_THROWS_AS(PatternSpec::cylinder(1, 3).validate(), InputError);
  CHECK_THROWS_AS(PatternSpec::torus(5, 2).validate(), InputError);
  CHECK_THROWS_AS(PatternSpec::torus(2, 2).validate(), InputError);
  CHECK_THROWS_AS(PatternSpec::honeycomb(2, 2).validate(), InputError);
  CHECK_THROWS_AS(PatternSpec::honeycomb(3, 3).validate(), InputError);
  CHECK_NOTHROW(PatternSpec::honeycomb(1, 2).validate());
  CHECK_THROWS_AS(pattern_kind_from_string("cube"), InputError);
  CHECK(pattern_kind_from_string("prism_path") == PatternKind::prism_path);
}

TEST_CASE("random graphs are reproducible and respect the split") {
  Graph a = random_graph(50, 0.3, 42, false);
  Graph b = random_graph(50, 0.3, 42, false);
  CHECK(a.edges() == b.edges());
  Graph c = random_graph(50, 0.3, 43, false);
  CHECK(a.edges() != c.edges());
  Graph bip = random_graph(40, 0.5, 9, true);
  for (auto [u, v] : bip.edges()) CHECK((u < 20) != (v < 20));
  CHECK(random_graph(10, 1.0, 1, false).edge_count() == 45);
  CHECK(random_graph(10, 0.0, 1, false).edge_count() == 0);
}

TEST_CASE("small families") {
  CHECK(complete_graph(6).edge_count() == 15);
  Graph kab = complete_bipartite(3, 4);
  CHECK(kab.n() == 7);
  CHECK(kab.edge_count() == 12);
  CHECK(cycle_graph(5).edge_count() == 5);
  CHECK(path_graph(5).edge_count() == 4);
}
