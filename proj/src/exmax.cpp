#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_set>

#include "turan_forge/errors.hpp"
#include "turan_forge/oracle.hpp"

namespace tf {

namespace {

// Small graph as neighbour bitmasks.
using Rows = std::vector<std::uint16_t>;

std::uint64_t code_of(const Rows& rows, const std::vector<int>& perm) {
  // perm[new] = old; bits of the upper triangle in row-major order.
  const int m = int(rows.size());
  std::uint64_t code = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) code = (code << 1) | ((rows[perm[i]] >> perm[j]) & 1u);
  return code;
}

// Refined colour classes: start from degrees, split by the multiset of
// neighbour colours until stable. Cells are ordered by their signatures, so
// the order is an isomorphism invariant.
std::vector<std::vector<int>> refined_cells(const Rows& rows) {
  const int m = int(rows.size());
  std::vector<int> color(m);
  for (int v = 0; v < m; ++v) color[v] = __builtin_popcount(rows[v]);
  int classes = -1;
  while (true) {
    std::vector<std::pair<std::vector<int>, int>> sig(m);
    for (int v = 0; v < m; ++v) {
      std::vector<int> s{color[v]};
      std::vector<int> nb;
      for (int w = 0; w < m; ++w)
        if ((rows[v] >> w) & 1u) nb.push_back(color[w]);
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      sig[v] = {std::move(s), v};
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> next(m);
    int c = 0;
    for (int i = 0; i < m; ++i) {
      if (i > 0 && sorted[i].first != sorted[i - 1].first) ++c;
      next[sorted[i].second] = c;
    }
    color = next;
    if (c + 1 == classes) break;
    classes = c + 1;
  }
  std::vector<std::vector<int>> cells(classes);
  for (int v = 0; v < m; ++v) cells[color[v]].push_back(v);
  return cells;
}

// Smallest code over all orderings that list the refined cells in order.
std::uint64_t canonical_code(const Rows& rows) {
  auto cells = refined_cells(rows);
  std::uint64_t best = UINT64_MAX;
  std::vector<int> perm;
  auto rec = [&](auto&& self, std::size_t cell) -> void {
    if (cell == cells.size()) {
      best = std::min(best, code_of(rows, perm));
      return;
    }
    auto& c = cells[cell];
    std::sort(c.begin(), c.end());
    do {
      perm.insert(perm.end(), c.begin(), c.end());
      self(self, cell + 1);
      perm.resize(perm.size() - c.size());
    } while (std::next_permutation(c.begin(), c.end()));
  };
  rec(rec, 0);
  return best;
}

Rows decode(std::uint64_t code, int m) {
  Rows rows(m, 0);
  int bit = m * (m - 1) / 2 - 1;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j, --bit)
      if ((code >> bit) & 1u) {
        rows[i] |= std::uint16_t(1u << j);
        rows[j] |= std::uint16_t(1u << i);
      }
  return rows;
}

Graph to_graph(const Rows& rows) {
  std::vector<Edge> edges;
  for (int i = 0; i < int(rows.size()); ++i)
    for (int j = i + 1; j < int(rows.size()); ++j)
      if ((rows[i] >> j) & 1u) edges.emplace_back(i, j);
  return build_graph(int(rows.size()), edges);
}

int edge_total(const Rows& rows) {
  int e = 0;
  for (auto r : rows) e += __builtin_popcount(r);
  return e / 2;
}

bool contains_pattern(const Rows& rows, const Graph& pattern) {
  auto r = find_subgraph(to_graph(rows), pattern, UINT64_MAX);
  return r.found();
}

}  // namespace

ExmaxResult max_edges_exhaustive(int n, const Graph& pattern) {
  if (n < 0 || n > kExmaxMaxN)
    throw InputError("max_edges_exhaustive supports 0 <= n <= " + std::to_string(kExmaxMaxN));
  // Pattern-free graphs are closed under vertex deletion, so every class on
  // m vertices extends a class on m-1 vertices by one new vertex.
  std::vector<std::uint64_t> level{0};  // the graph on 0 vertices
  for (int m = 1; m <= n; ++m) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint64_t> next;
    for (std::uint64_t parent : level) {
      Rows base = decode(parent, m - 1);
      base.push_back(0);
      for (std::uint32_t mask = 0; mask < (1u << (m - 1)); ++mask) {
        Rows child = base;
        child[m - 1] = std::uint16_t(mask);
        for (int v = 0; v < m - 1; ++v)
          if ((mask >> v) & 1u) child[v] |= std::uint16_t(1u << (m - 1));
        std::uint64_t code = canonical_code(child);
        if (seen.count(code)) continue;
        seen.insert(code);
        if (contains_pattern(child, pattern)) continue;
        next.push_back(code);
      }
    }
    std::sort(next.begin(), next.end());
    level = std::move(next);
  }
  ExmaxResult res;
  res.n = n;
  res.classes = level.size();
  res.max_edges = -1;
  for (std::uint64_t code : level) {
    Rows rows = decode(code, n);
    int e = edge_total(rows);
    if (e > res.max_edges) {
      res.max_edges = e;
      res.witness = to_graph(rows);
    }
  }
  if (level.empty()) {
    // Only possible when the pattern has no edges and fits into n vertices.
    res.max_edges = -1;
  }
  return res;
}

}  // namespace tf
