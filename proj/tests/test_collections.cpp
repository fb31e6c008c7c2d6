#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "turan_forge/collections.hpp"
#include "turan_forge/errors.hpp"
#include "turan_forge/generators.hpp"
#include "turan_forge/matching.hpp"

using namespace tf;

namespace {

using Tuple = std::vector<int>;

// All labelled paths on k vertices.
std::set<Tuple> all_paths(const Graph& g, int k) {
  std::set<Tuple> out;
  Tuple cur;
  std::function<void()> rec = [&]() {
    if (int(cur.size()) == k) {
      out.insert(cur);
      return;
    }
    for (int w = 0; w < g.n(); ++w) {
      if (g.deleted(w) || std::find(cur.begin(), cur.end(), w) != cur.end()) continue;
      if (!cur.empty() && !oracle::adj(g, cur.back(), w)) continue;
      cur.push_back(w);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

// Lexicographically smallest of the rotations and reflections.
Tuple dihedral_min(const Tuple& c) {
  const int L = int(c.size());
  Tuple best = c;
  for (int s = 0; s < L; ++s)
    for (int dir : {1, -1}) {
      Tuple t(L);
      for (int i = 0; i < L; ++i) t[i] = c[((s + dir * i) % L + L) % L];
      best = std::min(best, t);
    }
  return best;
}

std::set<Tuple> all_cycles(const Graph& g, int len) {
  std::set<Tuple> out;
  for (const auto& p : all_paths(g, len))
    if (oracle::adj(g, p.back(), p.front())) out.insert(dihedral_min(p));
  return out;
}

bool member_of(const std::set<Tuple>& s, Tuple t, bool cycle) { return s.count(cycle ? dihedral_min(t) : t) > 0; }

int fill_count(const std::set<Tuple>& s, const Tuple& m, int pos, int n, bool cycle) {
  int c = 0;
  Tuple t = m;
  for (int v = 0; v < n; ++v) {
    t[pos] = v;
    if (member_of(s, t, cycle)) ++c;
  }
  return c;
}

// Drops members with a sub-alpha position one at a time until none is left.
std::set<Tuple> rich_fixpoint(std::set<Tuple> s, int n, int alpha, bool cycle) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = s.begin(); it != s.end();) {
      const Tuple& m = *it;
      const int L = int(m.size());
      bool poor = false;
      for (int p = cycle ? 0 : 1; p < (cycle ? L : L - 1) && !poor; ++p)
        if (fill_count(s, m, p, n, cycle) < alpha) poor = true;
      if (poor) {
        it = s.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return s;
}

std::set<Tuple> members(const LabeledCollection& c) {
  std::set<Tuple> out;
  for (std::size_t i = 0; i < c.size(); ++i) out.emplace(c.member(i).begin(), c.member(i).end());
  return out;
}

std::set<Tuple> unflatten(const std::vector<int>& flat, int L) {
  std::set<Tuple> out;
  for (std::size_t i = 0; i + L <= flat.size(); i += L) out.emplace(flat.begin() + i, flat.begin() + i + L);
  return out;
}

}  // namespace

TEST_CASE("rich paths in K6") {
  auto four = build_rich_paths(complete_graph(6), 3, 4, 1000);
  CHECK(four.seed_size == 120);
  CHECK(four.collection.size() == 120);
  CHECK(verify_collection(four.collection, complete_graph(6), 4).ok);
  auto five = build_rich_paths(complete_graph(6), 3, 5, 1000);
  CHECK(five.collection.empty());
  CHECK(build_rich_paths(build_graph(5, {}), 3, 1, 1000).collection.empty());
  CHECK_THROWS_AS(build_rich_paths(complete_graph(6), 3, 1, 100), ResourceError);
  CHECK_THROWS_AS(build_rich_paths(complete_graph(6), 2, 1, 100), InputError);
}

TEST_CASE("rich paths agree with the naive fixpoint") {
  Rng rng(101);
  for (int trial = 0; trial < 25; ++trial) {
    Graph g = oracle::random_graph(5 + int(rng.below(4)), 0.4 + 0.5 * rng.uniform(), rng);
    const int k = 3 + int(rng.below(2));
    const int alpha = 1 + int(rng.below(4));
    auto r = build_rich_paths(g, k, alpha, 1'000'000);
    auto seed = all_paths(g, k);
    CAPTURE(trial);
    CHECK(unflatten(r.seed, k) == seed);
    CHECK(members(r.collection) == rich_fixpoint(seed, g.n(), alpha, false));
    CHECK(verify_collection(r.collection, g, alpha).ok);
    auto replay = replay_audit(CollectionKind::path, k, r.seed, r.audit);
    CHECK(unflatten(replay, k) == members(r.collection));
    for (const auto& m : members(r.collection)) CHECK(seed.count(m));
  }
}

TEST_CASE("rich cycles") {
  CHECK(build_rich_cycles(polarity_graph(3), 2, 1, 1000).collection.empty());
  auto kmm = build_rich_cycles(complete_bipartite(4, 4), 2, 2, 1000);
  CHECK_FALSE(kmm.collection.empty());
  CHECK(verify_collection(kmm.collection, complete_bipartite(4, 4), 2).ok);
  CHECK(build_rich_cycles(cycle_graph(6), 3, 2, 1000).collection.empty());
  CHECK(build_rich_cycles(cycle_graph(6), 3, 1, 1000).collection.size() == 1);
  CHECK_THROWS_AS(build_rich_cycles(cycle_graph(6), 1, 1, 1000), InputError);

  Rng rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = oracle::random_graph(6 + int(rng.below(3)), 0.5 + 0.4 * rng.uniform(), rng);
    const int ell = 2 + int(rng.below(2));
    const int alpha = 1 + int(rng.below(4));
    auto r = build_rich_cycles(g, ell, alpha, 1'000'000);
    auto seed = all_cycles(g, 2 * ell);
    CAPTURE(trial);
    CHECK(r.seed_size == seed.size());
    CHECK(members(r.collection) == rich_fixpoint(seed, g.n(), alpha, true));
    CHECK(verify_collection(r.collection, g, alpha).ok);
    auto replay = replay_audit(CollectionKind::cycle, 2 * ell, r.seed, r.audit);
    std::set<Tuple> canon;
    for (const auto& t : unflatten(replay, 2 * ell)) canon.insert(dihedral_min(t));
    CHECK(canon == members(r.collection));
  }
}

TEST_CASE("fill queries match a scan of the members") {
  Rng rng(107);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = oracle::random_graph(8, 0.6, rng);
    for (bool cycle : {false, true}) {
      const int L = 4;
      auto r = cycle ? build_rich_cycles(g, 2, 2, 1'000'000) : build_rich_paths(g, L, 2, 1'000'000);
      const auto& c = r.collection;
      auto set = members(c);
      for (const auto& m : set) {
        // every labelling of a cycle answers the same queries
        std::vector<Tuple> views{m};
        if (cycle) {
          Tuple rot(m.begin() + 1, m.end());
          rot.push_back(m[0]);
          views.push_back(rot);
          views.emplace_back(m.rbegin(), m.rend());
        }
        for (const auto& t : views) {
          CHECK(c.contains(t));
          for (int p = 0; p < L; ++p) {
            std::vector<int> want;
            Tuple probe = t;
            for (int v = 0; v < g.n(); ++v) {
              probe[p] = v;
              if (member_of(set, probe, cycle)) want.push_back(v);
            }
            CHECK(c.fills(t, p) == want);
          }
        }
      }
    }
  }
}

TEST_CASE("host family answers like the graph") {
  Rng rng(109);
  Graph g = oracle::random_graph(7, 0.5, rng);
  HostFamily paths(g, CollectionKind::path, 4);
  auto all = all_paths(g, 4);
  CHECK(paths.empty() == all.empty());
  for (const auto& t : all) {
    CHECK(paths.contains(t));
    for (int p = 0; p < 4; ++p) {
      std::vector<int> want;
      Tuple probe = t;
      for (int v = 0; v < g.n(); ++v) {
        probe[p] = v;
        if (all.count(probe)) want.push_back(v);
      }
      CHECK(paths.fills(t, p) == want);
    }
    for (int p = 0; p < 3; ++p) {
      std::vector<Edge> want;
      Tuple probe = t;
      for (int a = 0; a < g.n(); ++a)
        for (int b = 0; b < g.n(); ++b) {
          probe[p] = a;
          probe[p + 1] = b;
          if (all.count(probe)) want.emplace_back(a, b);
        }
      CHECK(paths.fill_edges(t, p) == want);
    }
  }
  for (const auto& s : paths.starts(10)) CHECK(all.count(s));
  Rng draw(1);
  for (int i = 0; i < 10; ++i) {
    auto s = paths.sample(draw);
    if (s) CHECK(all.count(*s));
  }
  HostFamily cycles(g, CollectionKind::cycle, 4);
  auto cyc = all_cycles(g, 4);
  CHECK(cycles.empty() == cyc.empty());
  for (const auto& s : cycles.starts(100)) CHECK(cyc.count(dihedral_min(s)));
  CHECK(cycles.starts(1000).size() == cyc.size());
  CHECK(HostFamily(build_graph(4, {}), CollectionKind::path, 3).empty());
}

TEST_CASE("good paths") {
  auto kmm = build_good_paths(complete_bipartite(8, 8), 1, 2, 16, std::nullopt, 1'000'000);
  CHECK(kmm.case_used == 1);
  CHECK_FALSE(kmm.collection.empty());
  CHECK(verify_collection(kmm.collection, complete_bipartite(8, 8), 2).ok);

  CHECK(build_good_paths(build_graph(5, {}), 1, 2, 1, std::nullopt, 1000).collection.empty());

  // All three cherry codegrees in C6 are 1, so C = 1/2 selects the pivot
  // branch; no path through N(v) avoids v.
  auto c6 = build_good_paths(cycle_graph(6), 1, 2, 0.5, std::nullopt, 1000);
  CHECK(c6.case_used == 2);
  CHECK(c6.collection.empty());

  CHECK_THROWS_AS(build_good_paths(complete_graph(4), 0, 1, 1, std::nullopt, 1000), InputError);
  CHECK_THROWS_AS(build_good_paths(complete_graph(6), 2, 1, 100, std::nullopt, 10), ResourceError);
}

TEST_CASE("pivot-branch good paths in K_{10,10}") {
  Graph g = complete_bipartite(10, 10);
  const int alpha = 3;
  auto r = build_good_paths(g, 2, alpha, 4, std::nullopt, 10'000'000);
  REQUIRE(r.case_used == 2);
  REQUIRE_FALSE(r.collection.empty());
  const int v = r.pivot;
  auto set = members(r.collection);
  for (const auto& m : set) {
    for (int i : {0, 2, 4}) CHECK(oracle::adj(g, m[i], v));
    CHECK(std::find(m.begin(), m.end(), v) == m.end());
  }
  // Disjoint fill edges at each inner pair, with their endpoints spread over
  // at least alpha distinct vertices on each side.
  for (const auto& m : set)
    for (int p = 1; p + 2 < 5; ++p) {
      std::vector<Edge> edges;
      Tuple probe = m;
      for (int a = 0; a < g.n(); ++a)
        for (int b = 0; b < g.n(); ++b) {
          probe[p] = a;
          probe[p + 1] = b;
          if (set.count(probe)) edges.emplace_back(a, b);
        }
      CHECK(r.collection.fill_edges(m, p) == edges);
      auto mm = maximum_matching(edges);
      CHECK(int(mm.size()) >= alpha);
      std::set<int> left, right;
      for (auto [a, b] : mm) {
        left.insert(a);
        right.insert(b);
      }
      CHECK(int(left.size()) >= alpha);
      CHECK(int(right.size()) >= alpha);
    }
  auto replay = replay_audit(CollectionKind::path, 5, r.seed, r.audit);
  CHECK(unflatten(replay, 5) == set);
  CHECK(r.final_weight <= r.seed_weight);
  CHECK(r.final_weight > 0);
}

TEST_CASE("good paths property on random hosts") {
  Rng rng(113);
  for (int trial = 0; trial < 15; ++trial) {
    Graph g = oracle::random_graph(8 + int(rng.below(5)), 0.5 + 0.4 * rng.uniform(), rng);
    const double C = 1 + 4 * rng.uniform();
    BuildResult r;
    CHECK_NOTHROW(r = build_good_paths(g, 2, 1, C, std::nullopt, 10'000'000));
    if (!r.collection.empty()) CHECK(verify_collection(r.collection, g, 1).ok);
    for (const auto& m : members(r.collection)) CHECK(is_valid_tuple(g, CollectionKind::path, m));
  }
}

TEST_CASE("verify_collection reports counterexamples") {
  Graph g = complete_graph(5);
  LabeledCollection single(CollectionKind::path, 3, {0, 1, 2}, CollectionProperty::rich, 2);
  auto r = verify_collection(single, g, 2);
  CHECK_FALSE(r.ok);
  CHECK(r.member == std::vector<int>{0, 1, 2});
  CHECK(r.position == 1);
  CHECK(r.measure == 1);
  LabeledCollection broken(CollectionKind::path, 3, {0, 1, 2}, CollectionProperty::rich, 1);
  CHECK_FALSE(verify_collection(broken, build_graph(5, {{0, 1}}), 1).ok);
}

TEST_CASE("last-vertex restriction") {
  auto r = build_rich_paths(complete_graph(5), 3, 1, 1000);
  const int v = most_common_last_vertex(r.collection);
  CHECK(v == 0);
  auto sub = restrict_last_vertex(r.collection, v);
  CHECK(sub.length() == 2);
  std::set<Tuple> want;
  for (const auto& m : members(r.collection))
    if (m.back() == v) want.insert({m[0], m[1]});
  CHECK(members(sub) == want);
  CHECK(sub.alpha() == r.collection.alpha());
  CHECK(most_common_last_vertex(LabeledCollection(CollectionKind::path, 3, {})) == -1);
}

TEST_CASE("collection text round trip") {
  auto r = build_rich_cycles(complete_bipartite(4, 4), 2, 2, 1000);
  std::stringstream s;
  write_collection(s, r.collection);
  auto back = read_collection(s);
  CHECK(back.kind() == CollectionKind::cycle);
  CHECK(back.length() == 4);
  CHECK(back.alpha() == 2);
  CHECK(back.flat() == r.collection.flat());

  LabeledCollection good(CollectionKind::path, 5, {0, 1, 2, 3, 4}, CollectionProperty::good, 1);
  std::stringstream t;
  write_collection(t, good);
  CHECK(read_collection(t).property() == CollectionProperty::good);

  std::istringstream bad("path 3 2\n0 1 2\n");
  CHECK_THROWS_AS(read_collection(bad), InputError);
}

TEST_CASE("canonical cycles") {
  CHECK(canonical_cycle(std::vector<int>{3, 1, 4, 2}) == std::vector<int>{1, 3, 2, 4});
  Rng rng(127);
  for (int trial = 0; trial < 50; ++trial) {
    Tuple c(6);
    std::iota(c.begin(), c.end(), 0);
    rng.shuffle(c);
    CHECK(canonical_cycle(c) == dihedral_min(c));
  }
}

TEST_CASE("seed bounds dominate the seed sizes") {
  Rng rng(131);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = oracle::random_graph(8, 0.5, rng);
    CHECK(path_seed_bound(g, 4) >= BigInt(all_paths(g, 4).size()));
    CHECK(cycle_seed_bound(g, 2) >= BigInt(all_cycles(g, 4).size()));
  }
}
