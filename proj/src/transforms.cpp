#include "turan_forge/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "turan_forge/errors.hpp"

namespace tf {

GraphStats stats_of(const Graph& g) {
  GraphStats s;
  s.n = g.live_count();
  s.e = g.edge_count();
  s.d = g.average_degree();
  s.min_degree = g.min_degree();
  s.max_degree = g.max_degree();
  return s;
}

PeelResult peel_below(const Graph& g, double threshold) {
  std::vector<int> deg(g.n());
  std::set<std::pair<int, int>> queue;
  for (int v = 0; v < g.n(); ++v) {
    if (g.deleted(v)) continue;
    deg[v] = g.degree(v);
    queue.emplace(deg[v], v);
  }
  std::vector<char> gone(g.n(), 0);
  PeelResult r;
  r.report.input = stats_of(g);
  while (!queue.empty() && queue.begin()->first < threshold) {
    int v = queue.begin()->second;
    queue.erase(queue.begin());
    gone[v] = 1;
    r.report.deleted_vertices.push_back(v);
    for (int w : g.neighbors(v)) {
      if (gone[w]) continue;
      queue.erase({deg[w], w});
      --deg[w];
      queue.emplace(deg[w], w);
    }
  }
  r.report.steps = static_cast<long long>(r.report.deleted_vertices.size());
  std::vector<int> sorted = r.report.deleted_vertices;
  std::sort(sorted.begin(), sorted.end());
  r.graph = remove(g, sorted, {});
  r.report.output = stats_of(r.graph);
  return r;
}

PeelResult peel_min_degree(const Graph& g) {
  if (g.edge_count() == 0) throw InputError("peel_min_degree needs at least one edge");
  auto r = peel_below(g, g.average_degree() / 4.0);
  r.report.name = "peel";
  return r;
}

HalfResult bipartite_half(const Graph& g) {
  std::vector<int> side(g.n());
  for (int v = 0; v < g.n(); ++v) side[v] = v % 2;
  long long moves = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.n(); ++v) {
      int same = 0;
      for (int w : g.neighbors(v)) same += (side[w] == side[v]);
      if (2 * same > g.degree(v)) {
        side[v] ^= 1;
        ++moves;
        changed = true;
      }
    }
  }
  std::vector<Edge> keep;
  std::vector<Edge> dropped;
  for (const auto& e : g.edges()) (side[e.first] != side[e.second] ? keep : dropped).push_back(e);
  HalfResult r;
  r.graph = edge_subgraph(g, keep);
  r.side = std::move(side);
  r.report.name = "half";
  r.report.input = stats_of(g);
  r.report.output = stats_of(r.graph);
  r.report.steps = moves;
  r.report.deleted_edges = std::move(dropped);
  return r;
}

AlmostRegularResult almost_regular_subgraph(const Graph& g, double epsilon, double c, double k_target) {
  if (!(epsilon > 0.0) || !(c > 0.0) || !(k_target >= 1.0))
    throw InputError("almost_regular_subgraph needs epsilon > 0, c > 0, K >= 1");
  const double n = g.live_count();
  if (static_cast<double>(g.edge_count()) < c * std::pow(n, 1.0 + epsilon))
    throw InputError("precondition e(G) >= c n^(1+eps) fails: e=" + std::to_string(g.edge_count()) +
                     ", bound=" + std::to_string(c * std::pow(n, 1.0 + epsilon)));

  AlmostRegularResult best;
  double best_score = -1.0;
  bool have_feasible = false;
  const int top = g.max_degree();
  for (long long lo = 1; lo <= top; lo *= 2) {
    const double hi = 2.0 * static_cast<double>(lo) * k_target;
    std::vector<int> too_high;
    for (int v = 0; v < g.n(); ++v)
      if (!g.deleted(v) && g.degree(v) > hi) too_high.push_back(v);
    Graph cur = remove(g, too_high, {});
    long long steps = static_cast<long long>(too_high.size());
    double floor_deg = static_cast<double>(lo);
    while (true) {
      auto peeled = peel_below(cur, floor_deg);
      steps += peeled.report.steps;
      cur = std::move(peeled.graph);
      if (cur.edge_count() == 0) break;
      int mx = cur.max_degree();
      int mn = cur.min_degree();
      if (mx <= k_target * mn) break;
      floor_deg = std::max(floor_deg, mx / k_target);
    }
    if (cur.edge_count() == 0) continue;
    const double m = cur.live_count();
    const double target = 2.0 * c / 5.0 * std::pow(m, 1.0 + epsilon);
    const bool ok = static_cast<double>(cur.edge_count()) >= target;
    const double score = static_cast<double>(cur.edge_count()) / std::pow(m, 1.0 + epsilon);
    bool take = false;
    if (ok && (!have_feasible || score > best_score)) take = true;
    if (!ok && !have_feasible && score > best_score) take = true;
    if (take) {
      have_feasible = have_feasible || ok;
      best_score = score;
      best.found = ok;
      best.band_low = static_cast<double>(lo);
      best.band_high = hi;
      best.edge_target = target;
      best.graph = cur;
      best.report.steps = steps;
    }
  }
  best.report.name = "regularize";
  best.report.input = stats_of(g);
  if (best_score < 0) best.graph = remove(g, g.live_vertices(), {});
  best.report.output = stats_of(best.graph);
  return best;
}

int clean_witnesses(const Graph& g, int u, int v, double min_codegree) {
  int count = 0;
  for (int w : g.neighbors(u))
    if (w != v && g.codegree(v, w) >= min_codegree) ++count;
  return count;
}

namespace {

// Mutable graph with an optional dense codegree table, used while deleting edges.
class EditableGraph {
 public:
  explicit EditableGraph(const Graph& g) : n_(g.n()), adj_(g.n()) {
    for (int v = 0; v < n_; ++v) adj_[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
    e_ = g.edge_count();
    if (n_ <= 5000) {
      table_.assign(static_cast<std::size_t>(n_) * n_, 0);
      for (int w = 0; w < n_; ++w)
        for (std::size_t i = 0; i < adj_[w].size(); ++i)
          for (std::size_t j = i + 1; j < adj_[w].size(); ++j) {
            ++at(adj_[w][i], adj_[w][j]);
            ++at(adj_[w][j], adj_[w][i]);
          }
    }
  }

  const std::vector<int>& nbrs(int v) const { return adj_[v]; }
  std::size_t edges() const { return e_; }
  bool has(int u, int v) const { return std::binary_search(adj_[u].begin(), adj_[u].end(), v); }

  int codeg(int u, int v) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(u) * n_ + v];
    std::vector<int> out;
    std::set_intersection(adj_[u].begin(), adj_[u].end(), adj_[v].begin(), adj_[v].end(),
                          std::back_inserter(out));
    return static_cast<int>(out.size());
  }

  void erase(int u, int v) {
    if (!table_.empty()) {
      for (int x : adj_[v])
        if (x != u) {
          --at(u, x);
          --at(x, u);
        }
      for (int x : adj_[u])
        if (x != v) {
          --at(v, x);
          --at(x, v);
        }
    }
    adj_[u].erase(std::lower_bound(adj_[u].begin(), adj_[u].end(), v));
    adj_[v].erase(std::lower_bound(adj_[v].begin(), adj_[v].end(), u));
    --e_;
  }

 private:
  std::uint16_t& at(int u, int v) { return table_[static_cast<std::size_t>(u) * n_ + v]; }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::size_t e_ = 0;
  std::vector<std::uint16_t> table_;
};

}  // namespace

CleanResult clean_subgraph(const Graph& g, CleanMode mode) {
  CleanResult r;
  r.report.name = mode == CleanMode::fixed ? "clean(fixed)" : "clean(self)";
  r.report.input = stats_of(g);
  EditableGraph h(g);
  const double n = g.live_count();
  const auto order = g.edges();
  double d = g.average_degree();
  bool changed = true;
  while (changed && h.edges() > 0) {
    changed = false;
    if (mode == CleanMode::self) d = 2.0 * static_cast<double>(h.edges()) / n;
    const double need = d / 16.0;
    const double min_codeg = d * d / (128.0 * n);
    auto witnesses = [&](int u, int v) {
      int c = 0;
      for (int w : h.nbrs(u))
        if (w != v && h.codeg(v, w) >= min_codeg) ++c;
      return c;
    };
    for (auto [u, v] : order) {
      if (!h.has(u, v)) continue;
      if (witnesses(u, v) < need || witnesses(v, u) < need) {
        h.erase(u, v);
        r.report.deleted_edges.emplace_back(u, v);
        changed = true;
      }
    }
  }
  r.d_used = d;
  r.report.steps = static_cast<long long>(r.report.deleted_edges.size());
  r.graph = remove(g, {}, r.report.deleted_edges);
  r.report.output = stats_of(r.graph);
  return r;
}

}  // namespace tf
