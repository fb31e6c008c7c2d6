#include <algorithm>
#include <cmath>
#include <optional>

#include "turan_forge/embedders.hpp"
#include "turan_forge/errors.hpp"
#include "turan_forge/rng.hpp"
#include "portfolio.hpp"

namespace tf {

namespace {

// x1 y1 x2 y2 ... x_ell y_ell
std::vector<int> interleave(const std::vector<int>& x, const std::vector<int>& y) {
  std::vector<int> t(2 * x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    t[2 * j] = x[j];
    t[2 * j + 1] = y[j];
  }
  return t;
}

struct TorusSearch {
  const Family& coll;
  const Graph& g;
  int k;
  int ell;
  int branching;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  Rng rng;
  std::vector<char> used;
  std::vector<std::vector<int>> rows;  // rows[0] is a_1

  TorusSearch(const Family& c, const Graph& host, int k_, int ell_, int br, std::uint64_t b, std::uint64_t seed)
      : coll(c), g(host), k(k_), ell(ell_), branching(br), budget(b), rng(seed), used(host.n(), 0) {}

  bool out_of_budget() const { return nodes >= budget; }

  // Partners of `f`. For an A-tuple (a_side) the partner y has y_j adjacent
  // to f_j and f_{j+1}; for a B-tuple the partner z has z_j adjacent to
  // f_{j-1} and f_j. Stops after `limit` partners. `close` is an extra
  // A-tuple the partner must also pair with.
  std::vector<std::vector<int>> partners(const std::vector<int>& f, bool a_side, std::size_t limit,
                                         const std::vector<int>* close) {
    std::vector<std::vector<int>> cand(ell);
    for (int j = 0; j + 1 < ell; ++j) {
      int p = a_side ? j : (j + ell - 1) % ell;
      int q = a_side ? (j + 1) % ell : j;
      cand[j] = common_neighbors(g, f[p], f[q]);
      std::erase_if(cand[j], [&](int v) { return used[v] != 0; });
      rng.shuffle(cand[j]);
    }
    std::vector<std::vector<int>> found;
    std::vector<int> pick(ell, -1);
    auto member_of = [&](const std::vector<int>& other) {
      return a_side ? interleave(f, other) : interleave(other, f);
    };
    auto fresh = [&](int v, int upto) {
      if (used[v]) return false;
      for (int i = 0; i < upto; ++i)
        if (pick[i] == v) return false;
      return true;
    };
    // Coordinates 0..ell-2 from common neighbourhoods, the last one from fills.
    auto rec = [&](auto&& self, int j) -> void {
      if (found.size() >= limit || out_of_budget()) return;
      if (j == ell - 1) {
        pick[j] = f[0];  // placeholder, overwritten by each fill
        auto t = member_of(pick);
        const int pos = a_side ? 2 * j + 1 : 2 * j;
        for (int v : coll.fills(t, pos)) {
          ++nodes;
          if (!fresh(v, j)) continue;
          pick[j] = v;
          if (close) {
            ++nodes;
            if (!coll.contains(interleave(*close, pick))) continue;
          }
          found.push_back(pick);
          if (found.size() >= limit || out_of_budget()) return;
        }
        return;
      }
      for (int v : cand[j]) {
        ++nodes;
        if (out_of_budget()) return;
        if (!fresh(v, j)) continue;
        pick[j] = v;
        self(self, j + 1);
        if (found.size() >= limit) return;
      }
    };
    rec(rec, 0);
    return found;
  }

  void mark(const std::vector<int>& t, char on) {
    for (int v : t) used[v] = on;
  }

  // rows[0..i] are placed; row index i is 0-based, so rows[i] is an A-tuple when i is even.
  bool extend(int i) {
    if (out_of_budget()) return false;
    const bool a_side = i % 2 == 0;
    if (i == k - 2) {
      auto last = partners(rows[i], a_side, 1, &rows[0]);
      if (last.empty()) return false;
      rows.push_back(last[0]);
      mark(last[0], 1);
      return true;
    }
    for (auto& p : partners(rows[i], a_side, std::max(1, branching), nullptr)) {
      rows.push_back(p);
      mark(p, 1);
      if (extend(i + 1)) return true;
      mark(p, 0);
      rows.pop_back();
      if (out_of_budget()) return false;
    }
    return false;
  }

  bool run(const std::vector<int>& side) {
    auto start = coll.sample(rng);
    ++nodes;
    if (!start) return false;
    std::vector<int> m = *start;
    if (side[m[0]] != 0) std::rotate(m.begin(), m.begin() + 1, m.end());
    std::vector<int> x(ell);
    for (int j = 0; j < ell; ++j) x[j] = m[2 * j];
    rows = {x};
    mark(x, 1);
    return extend(0);
  }
};

}  // namespace

EmbedResult embed_torus(const Family& coll, const Graph& g, int k, int ell, const SearchOptions& opt) {
  const auto spec = PatternSpec::torus(k, ell);
  spec.validate();
  if (coll.kind() != CollectionKind::cycle) throw InputError("embed_torus needs a cycle collection");
  if (coll.length() != 2 * ell)
    throw InputError("embed_torus(ell=" + std::to_string(ell) + ") needs " + std::to_string(2 * ell) +
                     "-cycles, collection has length " + std::to_string(coll.length()));
  auto side = two_coloring(g);
  if (side.empty() && g.n() > 0) throw InputError("embed_torus needs a bipartite host");

  EmbedResult res;
  const double n = std::max(2, g.live_count());
  const double threshold = std::pow(2.0, 20) * std::pow(k / 2.0, 3) * std::pow(ell * std::log(n), 4) *
                           std::pow(n, 2.0 * ell / k);
  res.diagnostics["richness_threshold"] = threshold;
  if (coll.alpha()) {
    res.diagnostics["alpha"] = *coll.alpha();
    res.diagnostics["threshold_met"] = *coll.alpha() / double(ell * ell) > threshold;
  }
  if (coll.empty()) {
    res.reason = "collection is empty";
    return res;
  }
  std::size_t part[2] = {0, 0};
  for (int v = 0; v < g.n(); ++v)
    if (!g.deleted(v)) ++part[side[v]];
  if (2 * std::min(part[0], part[1]) < static_cast<std::size_t>(k) * ell) {
    res.reason = "a part of the host has fewer than k*ell/2 vertices";
    return res;
  }

  const int restarts = std::max(1, opt.restarts);
  const std::uint64_t per_run = std::max<std::uint64_t>(1, opt.budget / restarts);
  auto pf = detail::run_portfolio<std::vector<std::vector<int>>>(
      restarts, opt.threads, [&](int r, std::uint64_t& spent) -> std::optional<std::vector<std::vector<int>>> {
        TorusSearch s(coll, g, k, ell, opt.branching, per_run, derive_seed(opt.seed, r));
        bool ok = s.run(side);
        spent = s.nodes;
        if (!ok) return std::nullopt;
        return s.rows;
      });
  res.diagnostics["restarts_run"] = pf.runs;
  res.diagnostics["nodes"] = pf.nodes;
  if (!pf.value) {
    res.reason = "search budget exhausted without a conflict-free k-cycle of tuples";
    return res;
  }
  const int winner = pf.winner;

  const Pattern p = pattern(spec);
  std::vector<int> host_of(p.graph.n(), -1);
  const auto& rows = *pf.value;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= ell; ++j) host_of[p.vertex(i, j)] = rows[i - 1][j - 1];
  res.found = true;
  res.certificate = EmbeddingCertificate::for_pattern(
      p, host_of, Json{{"embedder", "torus"}, {"k", k}, {"ell", ell}, {"seed", opt.seed}, {"restart", winner}});
  auto check = verify_certificate(g, res.certificate);
  if (!check.ok) throw IntegrityError("embed_torus produced an invalid certificate: " + check.message);
  return res;
}

}  // namespace tf
