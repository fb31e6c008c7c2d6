#include <algorithm>

#include "turan_forge/embedders.hpp"
#include "turan_forge/errors.hpp"

namespace tf {

namespace {

bool is_used(const std::vector<int>& used, int v) { return std::find(used.begin(), used.end(), v) != used.end(); }

int fresh_fill(const Family& coll, const std::vector<int>& q, int pos, const std::vector<int>& used) {
  for (int v : coll.fills(q, pos))
    if (!is_used(used, v)) return v;
  return -1;
}

void check_alpha(const Family& coll, long need, const char* what) {
  if (coll.alpha() && *coll.alpha() < need)
    throw InputError(std::string(what) + " needs alpha >= " + std::to_string(need) + ", collection has " +
                     std::to_string(*coll.alpha()));
}

EmbedResult finish(const Graph& host, const Pattern& p, const std::vector<int>& host_of, Json method) {
  EmbedResult r;
  r.found = true;
  r.certificate = EmbeddingCertificate::for_pattern(p, host_of, std::move(method));
  auto check = verify_certificate(host, r.certificate);
  if (!check.ok) throw IntegrityError("shifting produced an invalid certificate: " + check.message);
  r.diagnostics["distinct_host_vertices"] = p.graph.n();
  return r;
}

// A dead end is only a contradiction when the collection promises enough fills.
void dead_end(const Family& coll, const std::string& what) {
  if (coll.alpha()) throw IntegrityError(what + " ran out of fresh fills despite alpha " + std::to_string(*coll.alpha()));
}
}  // namespace

EmbedResult embed_grid(const Family& coll, const Graph& host, int t, std::size_t max_starts) {
  const auto spec = PatternSpec::grid(t);
  spec.validate();
  if (coll.kind() != CollectionKind::path) throw InputError("embed_grid needs a path collection");
  if (t >= 2 && coll.length() != 2 * t - 1)
    throw InputError("embed_grid(t=" + std::to_string(t) + ") needs paths on " + std::to_string(2 * t - 1) +
                     " vertices, collection has " + std::to_string(coll.length()));
  check_alpha(coll, static_cast<long>(t) * t, "embed_grid");
  const Pattern p = pattern(spec);
  EmbedResult miss;
  if (coll.empty()) {
    miss.reason = "collection is empty";
    return miss;
  }
  auto starts = coll.starts(std::max<std::size_t>(1, max_starts));
  for (std::size_t si = 0; si < starts.size(); ++si) {
    std::vector<int> q = starts[si];
    std::vector<int> host_of(p.graph.n(), -1);
    auto place = [&](int i, int j, int v) { host_of[p.vertex(i, j)] = v; };
    if (t == 1) {
      place(1, 1, q[0]);
      return finish(host, p, host_of, Json{{"embedder", "grid"}, {"t", t}, {"start", si}});
    }
    std::vector<int> used(q.begin(), q.end());
    for (int j = 1; j <= t; ++j) place(1, j, q[j - 1]);
    for (int i = 2; i <= t; ++i) place(i, t, q[t + i - 2]);
    bool dead = false;
    for (int r = 1; r < t && !dead; ++r)
      for (int j = t; j >= 2; --j) {
        const int pos = r + j - 2;
        int v = fresh_fill(coll, q, pos, used);
        if (v < 0) {
          dead = true;
          break;
        }
        q[pos] = v;
        used.push_back(v);
        place(r + 1, j - 1, v);
      }
    if (dead) {
      dead_end(coll, "embed_grid");
      continue;
    }
    auto res = finish(host, p, host_of, Json{{"embedder", "grid"}, {"t", t}, {"start", si}});
    res.diagnostics["starts_tried"] = si + 1;
    return res;
  }
  miss.reason = "every start ran out of fresh fills";
  miss.diagnostics["starts_tried"] = starts.size();
  return miss;
}

EmbedResult embed_cylinder(const Family& coll, const Graph& host, int k, int ell, std::size_t max_starts) {
  const auto spec = PatternSpec::cylinder(k, ell);
  spec.validate();
  if (coll.kind() != CollectionKind::cycle) throw InputError("embed_cylinder needs a cycle collection");
  if (coll.length() != 2 * ell)
    throw InputError("embed_cylinder(ell=" + std::to_string(ell) + ") needs " + std::to_string(2 * ell) +
                     "-cycles, collection has length " + std::to_string(coll.length()));
  check_alpha(coll, static_cast<long>(k) * ell, "embed_cylinder");
  const Pattern p = pattern(spec);
  EmbedResult miss;
  if (coll.empty()) {
    miss.reason = "collection is empty";
    return miss;
  }
  auto starts = coll.starts(std::max<std::size_t>(1, max_starts));
  for (std::size_t si = 0; si < starts.size(); ++si) {
    std::vector<int> q = starts[si];
    std::vector<std::vector<int>> rows(2, std::vector<int>(ell));
    for (int j = 0; j < ell; ++j) {
      rows[0][j] = q[2 * j];
      rows[1][j] = q[2 * j + 1];
    }
    std::vector<int> used(q.begin(), q.end());
    bool dead = false;
    for (int it = 0; it < k - 2 && !dead; ++it) {
      std::vector<int> fresh(ell);
      // Position 0 receives the last new vertex, positions 2, 4, ... the others in order.
      for (int step = 0; step < ell; ++step) {
        const int pos = 2 * step;
        int v = fresh_fill(coll, q, pos, used);
        if (v < 0) {
          dead = true;
          break;
        }
        q[pos] = v;
        used.push_back(v);
        fresh[step == 0 ? ell - 1 : step - 1] = v;
      }
      if (dead) break;
      rows.push_back(fresh);
      std::rotate(q.begin(), q.begin() + 1, q.end());
    }
    if (dead) {
      dead_end(coll, "embed_cylinder");
      continue;
    }
    std::vector<int> host_of(p.graph.n(), -1);
    for (int i = 1; i <= k; ++i) {
      const int shift = -((i - 1) / 2);
      for (int j = 1; j <= ell; ++j) {
        const int idx = (((j - 1 + shift) % ell) + ell) % ell;
        host_of[p.vertex(i, j)] = rows[i - 1][idx];
      }
    }
    auto res = finish(host, p, host_of, Json{{"embedder", "cylinder"}, {"k", k}, {"ell", ell}, {"start", si}});
    res.diagnostics["starts_tried"] = si + 1;
    return res;
  }
  miss.reason = "every start ran out of fresh fills";
  miss.diagnostics["starts_tried"] = starts.size();
  return miss;
}

EmbedResult embed_honeycomb(const Family& coll, const Graph& host, int k, int ell, std::size_t max_starts) {
  const auto spec = PatternSpec::honeycomb(k, ell);
  spec.validate();
  if (coll.kind() != CollectionKind::path) throw InputError("embed_honeycomb needs a path collection");
  if (coll.length() != 2 * k)
    throw InputError("embed_honeycomb(k=" + std::to_string(k) + ") needs paths on " + std::to_string(2 * k) +
                     " vertices, collection has " + std::to_string(coll.length()));
  check_alpha(coll, static_cast<long>(k) * ell, "embed_honeycomb");
  const Pattern p = pattern(spec);
  EmbedResult miss;
  if (coll.empty()) {
    miss.reason = "collection is empty";
    return miss;
  }
  auto starts = coll.starts(std::max<std::size_t>(1, max_starts));
  for (std::size_t si = 0; si < starts.size(); ++si) {
    std::vector<int> q = starts[si];
    std::vector<int> host_of(p.graph.n(), -1);
    // Path j covers columns j and j+1; row i sits at positions 2i-2, 2i-1.
    auto record = [&](int j) {
      for (int i = 1; i <= k; ++i) {
        const bool swapped = (i + j) % 2 == 0;
        host_of[p.vertex(i, swapped ? j + 1 : j)] = q[2 * i - 2];
        host_of[p.vertex(i, swapped ? j : j + 1)] = q[2 * i - 1];
      }
    };
    std::vector<int> used(q.begin(), q.end());
    record(1);
    bool dead = false;
    for (int j = 1; j + 1 < ell && !dead; ++j) {
      // Column j leaves, column j+2 arrives, one row pair at a time.
      for (int start = j % 2 == 1 ? 1 : 3; start + 1 <= 2 * k - 2; start += 4) {
        std::pair<int, int> pick{-1, -1};
        for (auto [a, b] : coll.fill_edges(q, start))
          if (!is_used(used, a) && !is_used(used, b)) {
            pick = {a, b};
            break;
          }
        if (pick.first < 0) {
          dead = true;
          break;
        }
        q[start] = pick.first;
        q[start + 1] = pick.second;
        used.push_back(pick.first);
        used.push_back(pick.second);
      }
      if (!dead) record(j + 1);
    }
    if (dead) {
      dead_end(coll, "embed_honeycomb");
      continue;
    }
    auto res = finish(host, p, host_of, Json{{"embedder", "honeycomb"}, {"k", k}, {"ell", ell}, {"start", si}});
    res.diagnostics["starts_tried"] = si + 1;
    return res;
  }
  miss.reason = "every start ran out of fresh fill edges";
  miss.diagnostics["starts_tried"] = starts.size();
  return miss;
}

}  // namespace tf
