#include "turan_forge/counting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "turan_forge/errors.hpp"
#include "turan_forge/matching.hpp"
#include "turan_forge/parallel.hpp"

namespace tf {

std::string to_decimal(const BigInt& x) { return x.str(); }

BigInt hom_path_count(const Graph& g, int k) {
  if (k < 1) throw InputError("hom_path_count needs k >= 1");
  std::vector<BigInt> walks(g.n()), next(g.n());
  for (int v = 0; v < g.n(); ++v) walks[v] = g.deleted(v) ? 0 : 1;
  for (int step = 1; step < k; ++step) {
    for (int v = 0; v < g.n(); ++v) {
      BigInt s = 0;
      for (int w : g.neighbors(v)) s += walks[w];
      next[v] = std::move(s);
    }
    walks.swap(next);
  }
  BigInt total = 0;
  for (const auto& w : walks) total += w;
  return total;
}

PathInequality check_path_inequality(const Graph& g, int k, int l) {
  if (k < 2 || k % 2 != 0 || l < 1 || l >= k)
    throw InputError("check_path_inequality needs k even and 1 <= l < k");
  PathInequality r;
  r.hom_long = hom_path_count(g, k + 1);
  r.hom_short = hom_path_count(g, l + 1);
  const int n = g.live_count();
  if (n == 0) return r;
  BigInt left = boost::multiprecision::pow(r.hom_long, l) * boost::multiprecision::pow(BigInt(n), k - l);
  BigInt right = boost::multiprecision::pow(r.hom_short, k);
  r.holds = left >= right;
  r.lhs = std::pow(r.hom_long.convert_to<double>() / n, 1.0 / k);
  r.rhs = std::pow(r.hom_short.convert_to<double>() / n, 1.0 / l);
  return r;
}

BigInt count_c4(const Graph& g, int threads) {
  const int n = g.n();
  std::vector<std::uint64_t> per_root(n, 0);
  parallel_for(n, threads, [&](int u) {
    std::vector<int> cnt(n, 0);
    std::vector<int> touched;
    for (int m : g.neighbors(u))
      for (int v : g.neighbors(m))
        if (v > u) {
          if (cnt[v]++ == 0) touched.push_back(v);
        }
    std::uint64_t s = 0;
    for (int v : touched) s += static_cast<std::uint64_t>(cnt[v]) * (cnt[v] - 1) / 2;
    per_root[u] = s;
  });
  BigInt total = 0;
  for (auto s : per_root) total += s;
  return total / 2;
}

namespace {

// Rooted enumeration truncated at a global cap, identical for any thread
// count: every root is first run with the whole cap as its budget; the
// sequential scan then keeps whole roots while they fit and re-runs the first
// root that does not fit with the remaining budget.
struct RootRun {
  std::uint64_t items = 0;
  bool overflow = false;  // found an item beyond the budget
};

template <class Run, class Accept>
bool capped_over_roots(int roots, int threads, std::uint64_t cap, Run&& run, Accept&& accept) {
  std::vector<RootRun> first(roots);
  parallel_for(roots, threads, [&](int r) { first[r] = run(r, cap, false); });
  std::uint64_t used = 0;
  for (int r = 0; r < roots; ++r) {
    if (!first[r].overflow && used + first[r].items <= cap) {
      used += first[r].items;
      accept(r);
      continue;
    }
    run(r, cap - used, true);
    accept(r);
    return true;
  }
  return false;
}

}  // namespace

CycleCount count_even_cycles(const Graph& g, int ell, std::uint64_t cap, int threads) {
  if (ell < 2) throw InputError("count_even_cycles needs ell >= 2");
  const int n = g.n();
  const int len = 2 * ell;
  std::vector<std::uint64_t> counted(n, 0);

  auto run = [&](int root, std::uint64_t budget, bool) {
    RootRun rr;
    if (g.deleted(root) || g.degree(root) < 2) return rr;
    std::vector<char> on(n, 0);
    std::vector<int> path{root};
    on[root] = 1;
    auto dfs = [&](auto&& self, int v) -> bool {
      if (static_cast<int>(path.size()) == len) {
        if (!g.adjacent(v, root) || path[1] >= v) return true;
        if (rr.items == budget) {
          rr.overflow = true;
          return false;
        }
        ++rr.items;
        return true;
      }
      for (int w : g.neighbors(v)) {
        if (w <= root || on[w]) continue;
        on[w] = 1;
        path.push_back(w);
        bool go = self(self, w);
        path.pop_back();
        on[w] = 0;
        if (!go) return false;
      }
      return true;
    };
    dfs(dfs, root);
    counted[root] = rr.items;
    return rr;
  };
  CycleCount out;
  std::vector<std::uint64_t> kept(n, 0);
  out.truncated = capped_over_roots(n, threads, cap, run, [&](int r) { kept[r] = counted[r]; });
  for (auto c : kept) out.count += c;
  return out;
}

C4Classification classify_c4(const Graph& g, double T, std::uint64_t cap, std::size_t list_cap) {
  if (!(T > 0.0)) throw InputError("classify_c4 needs T > 0");
  C4Classification out;
  out.threshold = T * std::sqrt(g.average_degree());
  const int n = g.n();
  std::vector<int> cnt(n, 0);
  std::vector<int> touched;
  std::uint64_t seen = 0;
  for (int x = 0; x < n && !out.truncated; ++x) {
    touched.clear();
    for (int m : g.neighbors(x))
      for (int z : g.neighbors(m))
        if (z > x && cnt[z]++ == 0) touched.push_back(z);
    std::sort(touched.begin(), touched.end());
    for (int z : touched) {
      if (out.truncated) break;
      if (cnt[z] < 2) continue;
      const bool xz_thin = cnt[z] <= out.threshold;
      std::vector<int> mids;
      for (int m : common_neighbors(g, x, z))
        if (m > x) mids.push_back(m);
      for (std::size_t i = 0; i < mids.size() && !out.truncated; ++i)
        for (std::size_t j = i + 1; j < mids.size(); ++j) {
          if (seen == cap) {
            out.truncated = true;
            break;
          }
          ++seen;
          FourCycle c{x, mids[i], z, mids[j]};
          const bool thin = xz_thin && g.codegree(c.y, c.w) <= out.threshold;
          auto& list = thin ? out.thin : out.thick;
          (thin ? out.thin_count : out.thick_count)++;
          if (list.size() < list_cap)
            list.push_back(c);
          else
            out.lists_truncated = true;
        }
    }
    for (int z : touched) cnt[z] = 0;
  }
  return out;
}

RichTuple is_rich_tuple(const Graph& g, int w, int z, int w2, int z2, int ell) {
  const int n = g.n();
  for (int v : {w, z, w2, z2})
    if (v < 0 || v >= n) throw InputError("is_rich_tuple: vertex out of range");
  if (w == z || w == w2 || w == z2 || z == w2 || z == z2 || w2 == z2)
    throw InputError("is_rich_tuple: the four vertices must be distinct");
  if (!g.adjacent(w, z) || !g.adjacent(w2, z2)) throw InputError("is_rich_tuple: wz and w'z' must be edges");
  VertexSet xs = common_neighbors(g, w, w2);
  VertexSet ys = common_neighbors(g, z, z2);
  std::vector<Edge> link;
  for (int x : xs)
    for (int y : g.neighbors(x))
      if (std::binary_search(ys.begin(), ys.end(), y)) link.emplace_back(x, y);
  RichTuple r;
  r.witness = maximum_matching(link);
  r.matching_size = static_cast<int>(r.witness.size());
  r.rich = r.matching_size >= 4 * ell;
  return r;
}

double ladder_weight(const Graph& g, const std::vector<int>& x, const std::vector<int>& y, double d, double n) {
  const double floor_value = d * d / n;
  double prod = 1.0;
  for (std::size_t i = 1; i < x.size(); ++i)
    prod *= std::max(static_cast<double>(g.codegree(x[i - 1], y[i])), floor_value);
  return 1.0 / prod;
}

namespace {

struct RootTally {
  double total = 0, nice = 0, wa = 0, wb = 0, wc = 0;
  std::uint64_t copies = 0, a = 0, b = 0, c = 0;
  std::vector<LadderCopy> samples;
};

}  // namespace

WeightReport prism_path_weight_report(const Graph& g, int ell, double C0, std::uint64_t cap, int threads,
                                      std::size_t sample_count) {
  if (ell < 2) throw InputError("prism_path_weight_report needs ell >= 2");
  WeightReport rep;
  rep.ell = ell;
  rep.C0 = C0;
  rep.n_ref = g.live_count();
  rep.d_ref = g.average_degree();
  if (rep.n_ref == 0) return rep;
  const double high = C0 * std::sqrt(rep.d_ref);
  const int n = g.n();
  const int rungs = ell + 1;
  std::vector<RootTally> tallies(n);

  auto run = [&](int root, std::uint64_t budget, bool) {
    RootRun rr;
    RootTally t;
    if (g.deleted(root)) {
      tallies[root] = t;
      return rr;
    }
    std::map<std::tuple<int, int, int, int>, bool> rich_cache;
    auto rich = [&](int a, int b, int c, int d) {
      auto key = std::make_tuple(a, b, c, d);
      auto it = rich_cache.find(key);
      if (it != rich_cache.end()) return it->second;
      bool v = is_rich_tuple(g, a, b, c, d, ell).rich;
      rich_cache.emplace(key, v);
      return v;
    };
    std::vector<char> on(n, 0);
    std::vector<int> x, y;
    auto finish = [&]() {
      int failure = 0;
      for (int i = 1; i < rungs && !failure; ++i)
        if (g.codegree(x[i - 1], y[i]) > high) failure = 1;
      for (int i = 1; i < rungs && !failure; ++i)
        if (g.codegree(x[i], y[i - 1]) > high) failure = 2;
      for (int j = 1; j + 1 < rungs && !failure; ++j)
        if (rich(x[j - 1], y[j - 1], x[j + 1], y[j + 1])) failure = 3;
      const double wgt = ladder_weight(g, x, y, rep.d_ref, rep.n_ref);
      t.total += wgt;
      switch (failure) {
        case 0: t.nice += wgt; break;
        case 1: t.wa += wgt; ++t.a; break;
        case 2: t.wb += wgt; ++t.b; break;
        default: t.wc += wgt; ++t.c; break;
      }
      if (t.samples.size() < sample_count) t.samples.push_back({x, y, wgt, failure});
    };
    // Extends rung by rung: x_i from N(x_{i-1}), then y_i from N(x_i) ∩ N(y_{i-1}).
    auto dfs = [&](auto&& self) -> bool {
      if (static_cast<int>(x.size()) == rungs) {
        if (rr.items == budget) {
          rr.overflow = true;
          return false;
        }
        ++rr.items;
        finish();
        return true;
      }
      for (int xi : g.neighbors(x.back())) {
        if (on[xi]) continue;
        on[xi] = 1;
        x.push_back(xi);
        for (int yi : g.neighbors(xi)) {
          if (on[yi] || !g.adjacent(yi, y.back())) continue;
          on[yi] = 1;
          y.push_back(yi);
          bool go = self(self);
          y.pop_back();
          on[yi] = 0;
          if (!go) {
            x.pop_back();
            on[xi] = 0;
            return false;
          }
        }
        x.pop_back();
        on[xi] = 0;
      }
      return true;
    };
    on[root] = 1;
    x.push_back(root);
    for (int y0 : g.neighbors(root)) {
      on[y0] = 1;
      y.push_back(y0);
      bool go = dfs(dfs);
      y.pop_back();
      on[y0] = 0;
      if (!go) break;
    }
    t.copies = rr.items;
    tallies[root] = std::move(t);
    return rr;
  };

  std::vector<RootTally> kept(n);
  rep.truncated = capped_over_roots(n, threads, cap, run, [&](int r) { kept[r] = tallies[r]; });
  for (const auto& t : kept) {
    rep.total_weight += t.total;
    rep.nice_weight += t.nice;
    rep.weight_high_codegree_a += t.wa;
    rep.weight_high_codegree_b += t.wb;
    rep.weight_rich_tuple += t.wc;
    rep.copies_enumerated += t.copies;
    rep.high_codegree_a += t.a;
    rep.high_codegree_b += t.b;
    rep.rich_tuple += t.c;
    rep.nice += t.copies - t.a - t.b - t.c;
    for (const auto& s : t.samples)
      if (rep.samples.size() < sample_count) rep.samples.push_back(s);
  }
  return rep;
}

}  // namespace tf
