#include "turan_forge/oracle.hpp"

#include <algorithm>
#include <chrono>

#include "turan_forge/errors.hpp"
#include "turan_forge/parallel.hpp"

namespace tf {

std::string to_string(SearchKind kind) {
  switch (kind) {
    case SearchKind::found: return "found";
    case SearchKind::exhausted: return "exhausted";
    case SearchKind::budget: return "budget";
  }
  return "?";
}

namespace {

struct Plan {
  std::vector<int> order;               // pattern vertices in placement order
  std::vector<std::vector<int>> back;   // placed pattern neighbours of order[i]
  std::vector<std::vector<std::pair<int, int>>> codeg;  // (placed vertex, pattern codegree >= 1), non-adjacent
};

Plan make_plan(const Graph& p) {
  const int m = p.n();
  Plan plan;
  std::vector<char> placed(m, 0);
  std::vector<int> placed_nbrs(m, 0);
  for (int step = 0; step < m; ++step) {
    int best = -1;
    for (int v = 0; v < m; ++v) {
      if (placed[v]) continue;
      if (best < 0 || placed_nbrs[v] > placed_nbrs[best] ||
          (placed_nbrs[v] == placed_nbrs[best] && p.degree(v) > p.degree(best)))
        best = v;
    }
    std::vector<int> back;
    std::vector<std::pair<int, int>> cod;
    for (int i = 0; i < step; ++i) {
      int u = plan.order[i];
      if (p.adjacent(u, best))
        back.push_back(i);
      else if (int c = p.codegree(u, best); c > 0)
        cod.emplace_back(i, c);
    }
    plan.order.push_back(best);
    plan.back.push_back(std::move(back));
    plan.codeg.push_back(std::move(cod));
    placed[best] = 1;
    for (int w : p.neighbors(best)) ++placed_nbrs[w];
  }
  return plan;
}

struct Matcher {
  const Graph& host;
  const Graph& pattern;
  const Plan& plan;
  std::uint64_t cap;
  std::uint64_t nodes = 0;
  std::vector<int> image;  // by placement index
  std::vector<char> used;

  Matcher(const Graph& h, const Graph& p, const Plan& pl, std::uint64_t c)
      : host(h), pattern(p), plan(pl), cap(c), image(p.n(), -1), used(h.n(), 0) {}

  bool fits(int i, int v) const {
    if (used[v] || host.deleted(v) || host.degree(v) < pattern.degree(plan.order[i])) return false;
    for (int j : plan.back[i])
      if (!host.adjacent(image[j], v)) return false;
    for (auto [j, c] : plan.codeg[i])
      if (host.codegree(image[j], v) < c) return false;
    return true;
  }

  // 1 found, 0 exhausted, -1 cap reached
  int place(int i) {
    if (i == pattern.n()) return 1;
    if (plan.back[i].empty()) {
      for (int v = 0; v < host.n(); ++v) {
        if (++nodes > cap) return -1;
        if (!fits(i, v)) continue;
        image[i] = v;
        used[v] = 1;
        int r = place(i + 1);
        if (r != 0) return r;
        used[v] = 0;
      }
      return 0;
    }
    int anchor = image[plan.back[i][0]];
    for (int j : plan.back[i])
      if (host.degree(image[j]) < host.degree(anchor)) anchor = image[j];
    for (int v : host.neighbors(anchor)) {
      if (++nodes > cap) return -1;
      if (!fits(i, v)) continue;
      image[i] = v;
      used[v] = 1;
      int r = place(i + 1);
      if (r != 0) return r;
      used[v] = 0;
    }
    return 0;
  }
};

}  // namespace

SubgraphResult find_subgraph(const Graph& host, const Graph& pattern, std::uint64_t budget, int threads) {
  const auto t0 = std::chrono::steady_clock::now();
  SubgraphResult res;
  auto done = [&](SearchKind kind) {
    res.stats.kind = kind;
    res.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
  };
  if (pattern.n() == 0) {
    res.certificate = EmbeddingCertificate::for_graph(pattern, {}, Json{{"method", "backtracking"}});
    return done(SearchKind::found);
  }
  if (pattern.n() > host.live_count() || pattern.edge_count() > host.edge_count())
    return done(SearchKind::exhausted);

  const Plan plan = make_plan(pattern);
  std::vector<int> roots;
  for (int v = 0; v < host.n(); ++v)
    if (!host.deleted(v) && host.degree(v) >= pattern.degree(plan.order[0])) roots.push_back(v);
  std::stable_sort(roots.begin(), roots.end(), [&](int a, int b) { return host.degree(a) > host.degree(b); });

  // Each root is searched on its own; scanning them in order with the
  // remaining budget gives the sequential answer.
  struct RootRun {
    int status = 0;
    std::uint64_t nodes = 0;
    std::vector<int> image;
  };
  auto run_root = [&](int idx, std::uint64_t cap) {
    Matcher m(host, pattern, plan, cap);
    RootRun rr;
    m.nodes = 1;
    if (m.nodes > cap) {
      rr.status = -1;
      rr.nodes = cap;
      return rr;
    }
    const int v = roots[idx];
    if (m.fits(0, v)) {
      m.image[0] = v;
      m.used[v] = 1;
      rr.status = m.place(1);
    }
    rr.nodes = std::min(m.nodes, cap);
    if (rr.status == 1) rr.image = m.image;
    return rr;
  };

  std::uint64_t spent = 0;
  const int total = int(roots.size());
  const int workers = std::max(1, threads);
  for (int batch = 0; batch < total; batch += workers) {
    const int count = std::min(workers, total - batch);
    std::vector<RootRun> runs(count);
    if (workers == 1) {
      runs[0] = run_root(batch, budget - spent);
    } else {
      parallel_for(count, workers, [&](int i) { runs[i] = run_root(batch + i, budget); });
    }
    for (int i = 0; i < count; ++i) {
      const std::uint64_t left = budget - spent;
      if (runs[i].status == -1 || runs[i].nodes > left) {
        spent = budget;
        res.stats.nodes = spent;
        return done(SearchKind::budget);
      }
      spent += runs[i].nodes;
      if (runs[i].status == 1) {
        std::vector<int> host_of(pattern.n());
        for (int j = 0; j < pattern.n(); ++j) host_of[plan.order[j]] = runs[i].image[j];
        res.certificate = EmbeddingCertificate::for_graph(pattern, host_of, Json{{"method", "backtracking"}});
        auto check = verify_certificate(host, res.certificate);
        if (!check.ok) throw IntegrityError("find_subgraph produced an invalid certificate: " + check.message);
        res.stats.nodes = spent;
        return done(SearchKind::found);
      }
    }
  }
  res.stats.nodes = spent;
  return done(SearchKind::exhausted);
}

}  // namespace tf
