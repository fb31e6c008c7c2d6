// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "turan_forge/collections.hpp"
#include "turan_forge/counting.hpp"
#include "turan_forge/embedders.hpp"
#include "turan_forge/generators.hpp"
#include "turan_forge/oracle.hpp"
#include "turan_forge/pipeline.hpp"

using namespace tf;

namespace {

// Time limits, in seconds.
constexpr double kLimitPolarityCase = 1.0;
constexpr double kLimitPatterns = 5.0;
constexpr double kLimitCounting = 60.0;
constexpr double kLimitPathInequality = 30.0;
constexpr double kLimitCollections = 10.0;
constexpr double kLimitEmbedders = 600.0;
constexpr double kLimitNegative = 30.0;
constexpr double kLimitPrismPath = 10.0;
constexpr double kLimitExmax = 300.0;

constexpr double kMinSuccessRate = 0.9;
constexpr std::uint64_t kEmbedderBudget = 10'000'000;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// ---------------------------------------------------------------------------

Outcome polarity_suite() {
  Outcome o;
  double worst = 0.0;
  for (int q : {2, 3, 4, 5, 7, 8, 11, 13}) {
    const auto t0 = Clock::now();
    Graph g = polarity_graph(q);
    int max_codeg = 0;
    for (int u = 0; u < g.n(); ++u)
      for (int v = u + 1; v < g.n(); ++v) max_codeg = std::max(max_codeg, oracle::codeg(g, u, v));
    const double secs = since(t0);
    worst = std::max(worst, secs);
    const std::string tag = "q=" + std::to_string(q);
    o.require(g.n() == q * q + q + 1, tag + " vertex count");
    o.require(2 * g.edge_count() == std::size_t(q * (q + 1) * (q + 1)), tag + " edge count");
    o.require(max_codeg <= 1, tag + " codegree " + std::to_string(max_codeg));
    o.require(secs < kLimitPolarityCase, tag + " took " + std::to_string(secs) + " s");
  }
  o.detail = "8 orders, slowest " + std::to_string(worst) + " s";
  return o;
}

Outcome pattern_suite() {
  Outcome o;
  std::vector<PatternSpec> specs;
  for (int t = 1; t <= 5; ++t) specs.push_back(PatternSpec::grid(t));
  for (int l = 2; l <= 6; ++l) specs.push_back(PatternSpec::prism(l));
  for (int k = 2; k <= 5; ++k)
    for (int l = 2; l <= 5; ++l) specs.push_back(PatternSpec::cylinder(k, l));
  for (int k : {4, 6})
    for (int l = 2; l <= 4; ++l) specs.push_back(PatternSpec::torus(k, l));
  for (auto [k, l] : std::vector<std::pair<int, int>>{{1, 2}, {3, 2}, {3, 4}, {5, 4}})
    specs.push_back(PatternSpec::honeycomb(k, l));
  for (const auto& s : specs) {
    const Pattern p = pattern(s);
    const auto def = oracle::define(s);
    const std::string tag = s.describe();
    o.require(p.graph.n() == int(def.vertices.size()), tag + " vertex count");
    o.require(p.graph.edge_count() == def.edges.size(), tag + " edge count");
    for (const auto& [a, b] : def.edges) o.require(p.graph.adjacent(p.vertex(a), p.vertex(b)), tag + " edge " + a + "-" + b);
    if (s.kind == PatternKind::prism) {
      o.require(!two_coloring(p.graph).empty(), tag + " bipartite");
      for (int v = 0; v < p.graph.n(); ++v) o.require(p.graph.degree(v) == 3, tag + " 3-regular");
    }
    if (s.kind == PatternKind::torus)
      for (int v = 0; v < p.graph.n(); ++v) o.require(p.graph.degree(v) == 4, tag + " 4-regular");
  }
  Graph h34 = pattern(PatternSpec::honeycomb(3, 4)).graph;
  o.require(find_subgraph(h34, cycle_graph(6)).found(), "H(3,4) contains C6");
  o.require(oracle::contains(h34, cycle_graph(6)), "H(3,4) contains C6 (brute force)");
  o.detail = std::to_string(specs.size()) + " patterns";
  return o;
}

Outcome counting_suite() {
  Outcome o;
  Rng rng(derive_seed(3, 0));
  for (int i = 0; i < 200; ++i) {
    Graph g = oracle::random_graph(1 + int(rng.below(10)), rng.uniform(), rng);
    for (int k = 1; k <= 6; ++k)
      o.require(hom_path_count(g, k) == oracle::walks(g, k), "walks graph " + std::to_string(i) + " k=" + std::to_string(k));
  }
  for (int i = 0; i < 100; ++i) {
    Graph g = oracle::random_graph(4 + int(rng.below(22)), 0.05 + 0.5 * rng.uniform(), rng);
    o.require(count_c4(g) == oracle::cycles(g, 4), "c4 graph " + std::to_string(i));
  }
  for (int i = 0; i < 50; ++i) {
    Graph g = oracle::random_graph(6 + int(rng.below(9)), 0.1 + 0.4 * rng.uniform(), rng);
    o.require(count_even_cycles(g, 3).count == oracle::cycles(g, 6), "c6 graph " + std::to_string(i));
  }
  o.detail = "200 walk, 100 C4, 50 C6 graphs";
  return o;
}

Outcome path_inequality_suite() {
  Outcome o;
  Rng rng(derive_seed(4, 0));
  int checks = 0;
  for (int i = 0; i < 500; ++i) {
    Graph g = oracle::random_graph(2 + int(rng.below(40)), 0.02 + 0.6 * rng.uniform(), rng);
    for (int k : {2, 4, 6})
      for (int l = 1; l < k; ++l) {
        ++checks;
        o.require(check_path_inequality(g, k, l).holds,
                  "graph " + std::to_string(i) + " k=" + std::to_string(k) + " l=" + std::to_string(l));
      }
  }
  o.detail = std::to_string(checks) + " comparisons on 500 graphs";
  return o;
}

Outcome collections_suite() {
  Outcome o;
  auto check = [&](const std::string& tag, const Graph& g, const BuildResult& r, int alpha) {
    if (!r.collection.empty()) o.require(verify_collection(r.collection, g, alpha).ok, tag + " verify");
    auto replay = replay_audit(r.collection.kind(), r.collection.length(), r.seed, r.audit);
    LabeledCollection again(r.collection.kind(), r.collection.length(), replay);
    o.require(again.flat() == r.collection.flat(), tag + " audit replay");
  };
  Graph k6 = complete_graph(6);
  auto four = build_rich_paths(k6, 3, 4, 1'000'000);
  check("K6 alpha 4", k6, four, 4);
  o.require(four.collection.size() == 120, "K6 alpha 4 size " + std::to_string(four.collection.size()));
  auto five = build_rich_paths(k6, 3, 5, 1'000'000);
  check("K6 alpha 5", k6, five, 5);
  o.require(five.collection.empty(), "K6 alpha 5 not empty");
  Graph none = build_graph(6, {});
  o.require(build_rich_paths(none, 3, 1, 1000).collection.empty(), "edgeless rich paths");

  for (int q : {2, 3, 5}) {
    Graph pol = polarity_graph(q);
    auto r = build_rich_cycles(pol, 2, 1, 1'000'000);
    check("polarity cycles", pol, r, 1);
    o.require(r.collection.empty(), "polarity q=" + std::to_string(q) + " has rich 4-cycles");
  }
  Graph k44 = complete_bipartite(4, 4);
  auto kc = build_rich_cycles(k44, 2, 2, 1'000'000);
  check("K44 cycles", k44, kc, 2);
  o.require(!kc.collection.empty(), "K44 cycles empty");
  Graph c6 = cycle_graph(6);
  auto cc = build_rich_cycles(c6, 3, 2, 1000);
  check("C6 cycles", c6, cc, 2);
  o.require(cc.collection.empty(), "C6 cycles not empty");

  Graph k88 = complete_bipartite(8, 8);
  auto good = build_good_paths(k88, 1, 2, 16, std::nullopt, 1'000'000);
  check("K88 good", k88, good, 2);
  o.require(good.case_used == 1 && !good.collection.empty(), "K88 good paths");
  auto c6good = build_good_paths(c6, 1, 2, 0.5, std::nullopt, 1000);
  check("C6 good", c6, c6good, 2);
  o.require(c6good.collection.empty(), "C6 good paths not empty");
  o.require(build_good_paths(none, 1, 2, 1, std::nullopt, 1000).collection.empty(), "edgeless good paths");
  Graph k1010 = complete_bipartite(10, 10);
  auto pivot = build_good_paths(k1010, 2, 3, 4, std::nullopt, 10'000'000);
  check("K10,10 pivot", k1010, pivot, 3);
  o.require(pivot.case_used == 2 && !pivot.collection.empty(), "K10,10 pivot good paths");
  o.detail = "K6 sizes 120/0, 12 builder runs";
  return o;
}

// Dense bipartite host number i: n in [200, 600], average degree >= 6 sqrt(n).
Json dense_host(int i) {
  const int n = 200 + 8 * i;
  const double p = std::min(1.0, 1.05 * 12.0 / std::sqrt(double(n)));
  return Json{{"generator", "gnp"}, {"n", n}, {"p", p}, {"bipartite", true}, {"seed", derive_seed(6, i)}};
}

Outcome embedder_suite() {
  Outcome o;
  struct Tally {
    std::string name;
    int runs = 0, found = 0;
  };
  std::vector<Tally> tallies{{"grid"}, {"cylinder"}, {"torus"}, {"honeycomb"}, {"prism_path"}, {"prism"}};
  const std::vector<std::pair<int, int>> cylinders{{2, 2}, {2, 3}, {3, 2}, {3, 3}, {2, 4}, {4, 2}, {3, 4}, {4, 3}, {4, 4}};
  double min_ratio = 1e9;
  for (int i = 0; i < 50; ++i) {
    Json host = dense_host(i);
    Graph g = make_host(host, 0);
    min_ratio = std::min(min_ratio, g.average_degree() / std::sqrt(double(g.n())));
    const auto [ck, cl] = cylinders[i % cylinders.size()];
    std::vector<Json> targets{
        Json{{"kind", "grid"}, {"t", 2 + i % 3}},
        Json{{"kind", "cylinder"}, {"k", ck}, {"ell", cl}},
        Json{{"kind", "torus"}, {"k", 4}, {"ell", 2}},
        Json{{"kind", "honeycomb"}, {"k", 3}, {"ell", 4}},
        Json{{"kind", "prism_path"}, {"t", 1 + i % 5}},
        Json{{"kind", "prism"}, {"ell", 4}},
    };
    for (std::size_t e = 0; e < targets.size(); ++e) {
      Json cfg{{"seed", derive_seed(60, i)}, {"host", host}, {"target", targets[e]},
               {"embedder", Json{{"budget", kEmbedderBudget}}}};
      auto out = run_pipeline(cfg);
      const std::string tag = tallies[e].name + " host " + std::to_string(i);
      ++tallies[e].runs;
      if (out.exit_status == kExitFound) {
        ++tallies[e].found;
        auto cert = certificate_from_json(out.certificate);
        o.require(verify_certificate(g, cert).ok, tag + " certificate rejected");
        o.require(oracle::check_named(g, cert) > 0, tag + " certificate fails the definition check");
      } else {
        o.require(out.exit_status == kExitNotFound,
                  tag + " exit " + std::to_string(out.exit_status) + ": " + out.report.value("error", std::string()));
      }
    }
  }
  o.detail = "min d/sqrt(n) " + std::to_string(min_ratio).substr(0, 5);
  o.require(min_ratio >= 6.0, "host average degree below 6 sqrt(n)");
  for (const auto& t : tallies) {
    o.detail += ", " + t.name + " " + std::to_string(t.found) + "/" + std::to_string(t.runs);
    o.require(t.found >= kMinSuccessRate * t.runs, t.name + " success rate");
  }
  return o;
}

constexpr std::uint64_t kSeedCap = 1'000'000;

Outcome negative_suite() {
  Outcome o;
  int hosts = 0;
  for (int q = 2; q <= 13; ++q) {
    if (!polarity_supported(q)) continue;
    ++hosts;
    Graph g = polarity_graph(q);
    const std::string tag = "q=" + std::to_string(q);
    o.require(!find_prism(g, 4).found, tag + " prism found");
    for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}, {4, 4}}) {
      // long cycles in the larger planes exceed the seed cap, so those runs
      // shift over the host's own cycles as the pipeline does
      if (cycle_seed_bound(g, l) <= kSeedCap) {
        auto coll = build_rich_cycles(g, l, k * l, kSeedCap).collection;
        o.require(!embed_cylinder(coll, g, k, l).found, tag + " cylinder found");
      } else {
        o.require(!embed_cylinder(HostFamily(g, CollectionKind::cycle, 2 * l), g, k, l).found, tag + " cylinder found");
      }
    }
  }
  o.detail = std::to_string(hosts) + " polarity hosts";
  return o;
}

Outcome prism_path_suite() {
  Outcome o;
  int hyp = 0, runs = 0;
  for (int m : {10, 20, 40}) {
    Graph g = complete_bipartite(m, m);
    VertexSet X, Y;
    for (int v = 0; v < m; ++v) X.push_back(v);
    for (int v = m; v < 2 * m; ++v) Y.push_back(v);
    for (int t = 1; t <= 5; ++t) {
      ++runs;
      const std::string tag = "m=" + std::to_string(m) + " t=" + std::to_string(t);
      auto r = find_prism_path(g, X, Y, t);
      hyp += r.hypothesis_edges && r.hypothesis_degrees;
      o.require(r.embed.found, tag + " not found");
      if (r.embed.found) o.require(oracle::check_named(g, r.embed.certificate) == 2 * t, tag + " certificate");
      o.require(r.residue_invariant, tag + " residue invariant flag");
      // direct recount on the residue
      Graph res = build_graph(g.n(), r.residue);
      const double need = double(g.edge_count()) / (8.0 * m);
      for (auto [x, y] : r.residue) {
        int good = 0;
        for (int z : res.neighbors(y))
          if (z != x && oracle::codeg(res, x, z) >= 2 * t) ++good;
        o.require(good >= need, tag + " residue edge below e/(8|Y|)");
      }
    }
  }
  o.detail = std::to_string(runs) + " runs, both hypotheses held in " + std::to_string(hyp);
  return o;
}

Outcome exmax_suite() {
  Outcome o;
  Graph c4 = cycle_graph(4);
  std::vector<int> values;
  for (int n = 3; n <= 7; ++n) {
    auto r = max_edges_exhaustive(n, c4);
    values.push_back(r.max_edges);
    const int bound = int(std::floor(n / 4.0 * (1 + std::sqrt(4.0 * n - 3))));
    const std::string tag = "n=" + std::to_string(n);
    o.require(r.max_edges <= bound, tag + " above bound");
    o.require(int(r.witness.edge_count()) == r.max_edges, tag + " witness size");
    o.require(!oracle::contains(r.witness, c4), tag + " witness contains C4");
  }
  for (std::size_t i = 1; i < values.size(); ++i) o.require(values[i] >= values[i - 1], "not monotone");
  o.require(values[0] == 3, "ex(3) != 3");
  o.require(values[1] == 4, "ex(4) != 4");
  o.detail = "ex(3..7) =";
  for (int v : values) o.detail += " " + std::to_string(v);
  return o;
}

Outcome determinism_suite() {
  Outcome o;
  std::vector<Json> configs{
      Json::parse(R"({"seed": 11, "host": {"generator": "gnp", "n": 400, "p": 0.6, "bipartite": true},
                     "target": {"kind": "torus", "k": 4, "ell": 2}})"),
      Json::parse(R"({"seed": 12, "host": {"generator": "gnp", "n": 300, "p": 0.7, "bipartite": true},
                     "target": {"kind": "prism", "ell": 4}})"),
      Json::parse(R"({"seed": 13, "host": {"generator": "gnp", "n": 400, "p": 0.3, "bipartite": true},
                     "target": {"kind": "cylinder", "k": 3, "ell": 2}, "builder": {"alpha": 6}})"),
      Json::parse(R"({"seed": 14, "host": {"generator": "gnp", "n": 120, "p": 0.5},
                     "transforms": [{"name": "half"}, {"name": "peel"}],
                     "target": {"kind": "grid", "t": 3}})"),
      Json::parse(R"({"seed": 15, "host": {"generator": "gnp", "n": 80, "p": 0.15},
                     "target": {"kind": "even_cycle", "ell": 4}})"),
  };
  int found = 0;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const auto base = run_pipeline(configs[c], 1);
    found += base.exit_status == kExitFound;
    const std::string rep = base.report.dump(2), cert = base.certificate.dump(2);
    for (int threads : {1, 4, 8}) {
      const auto other = run_pipeline(configs[c], threads);
      const std::string tag = "config " + std::to_string(c) + " threads " + std::to_string(threads);
      o.require(other.report.dump(2) == rep, tag + " report differs");
      o.require(other.certificate.dump(2) == cert, tag + " certificate differs");
    }
  }
  o.detail = std::to_string(configs.size()) + " configs (" + std::to_string(found) + " found) x threads 1/4/8";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit;  // seconds, 0 when only per-case limits apply
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "polarity generator suite", 0, polarity_suite},
      {2, "pattern suite", kLimitPatterns, pattern_suite},
      {3, "counting equivalence", kLimitCounting, counting_suite},
      {4, "walk-count inequality", kLimitPathInequality, path_inequality_suite},
      {5, "collection builders", kLimitCollections, collections_suite},
      {6, "embedder soundness", kLimitEmbedders, embedder_suite},
      {7, "negative controls", kLimitNegative, negative_suite},
      {8, "ladder deletion contract", kLimitPrismPath, prism_path_suite},
      {9, "exhaustive extremal values", kLimitExmax, exmax_suite},
      {10, "determinism across threads", 0, determinism_suite},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
  bool all_pass = true;
  for (const auto& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = since(t0);
    if (c.limit > 0 && secs >= c.limit) o.require(false, "over the time limit of " + std::to_string(c.limit) + " s");
    all_pass = all_pass && o.pass;
    std::printf("criterion %d (%s): %s  [%s; %.2f s]\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
