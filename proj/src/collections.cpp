#include "turan_forge/collections.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>

#include "signature_index.hpp"
#include "turan_forge/errors.hpp"

namespace tf {

namespace {

void check_cap(std::size_t members, std::uint64_t cap) {
  if (members > cap)
    throw ResourceError("seed collection exceeds the cap of " + std::to_string(cap) + " members");
}

// All labelled paths on k vertices, lexicographic. `extend_ok(path, w)`
// filters each extension.
template <class Ok>
std::vector<int> enumerate_paths(const Graph& g, int k, std::uint64_t cap, Ok&& extend_ok) {
  std::vector<int> flat;
  std::vector<char> on(g.n(), 0);
  std::vector<int> cur;
  std::size_t count = 0;
  auto dfs = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == k) {
      check_cap(++count, cap);
      flat.insert(flat.end(), cur.begin(), cur.end());
      return;
    }
    for (int w : g.neighbors(cur.back())) {
      if (on[w] || !extend_ok(cur, w)) continue;
      on[w] = 1;
      cur.push_back(w);
      self(self);
      cur.pop_back();
      on[w] = 0;
    }
  };
  for (int v = 0; v < g.n(); ++v) {
    if (g.deleted(v)) continue;
    cur = {v};
    if (!extend_ok(std::vector<int>{}, v)) continue;
    on[v] = 1;
    dfs(dfs);
    on[v] = 0;
  }
  return flat;
}

std::vector<int> enumerate_cycles(const Graph& g, int ell, std::uint64_t cap) {
  const int len = 2 * ell;
  std::vector<int> flat;
  std::vector<char> on(g.n(), 0);
  std::vector<int> cur;
  std::size_t count = 0;
  auto dfs = [&](auto&& self) -> void {
    const int v = cur.back();
    if (static_cast<int>(cur.size()) == len) {
      if (g.adjacent(v, cur[0]) && cur[1] < v) {
        check_cap(++count, cap);
        flat.insert(flat.end(), cur.begin(), cur.end());
      }
      return;
    }
    for (int w : g.neighbors(v)) {
      if (w <= cur[0] || on[w]) continue;
      on[w] = 1;
      cur.push_back(w);
      self(self);
      cur.pop_back();
      on[w] = 0;
    }
  };
  for (int r = 0; r < g.n(); ++r) {
    if (g.deleted(r)) continue;
    cur = {r};
    on[r] = 1;
    dfs(dfs);
    on[r] = 0;
  }
  return flat;
}

// Removes whole signature groups while their measure is positive and below
// the type's bound. Dirty groups wait in one FIFO queue per priority; the
// lowest non-empty priority is served first. Returns the alive flags.
std::vector<char> prune(const std::vector<int>& flat, int arity, std::vector<detail::SigType> types,
                        PruneAudit& audit) {
  const std::size_t members = flat.size() / arity;
  std::vector<char> alive(members, 1);
  if (members == 0) return alive;
  int max_priority = 0;
  for (const auto& t : types) max_priority = std::max(max_priority, t.priority);
  detail::SignatureIndex idx(flat.data(), members, arity, std::move(types));

  std::vector<std::deque<std::uint32_t>> queues(max_priority + 1);
  std::vector<char> queued(idx.group_count(), 1);
  auto priority_of = [&](std::size_t g) { return idx.type(idx.group(g)[0].type).priority; };
  for (std::size_t g = 0; g < idx.group_count(); ++g) queues[priority_of(g)].push_back(static_cast<std::uint32_t>(g));

  std::vector<int> seen_values;
  while (true) {
    int p = 0;
    while (p <= max_priority && queues[p].empty()) ++p;
    if (p > max_priority) break;
    const std::uint32_t g = queues[p].front();
    queues[p].pop_front();
    queued[g] = 0;
    auto group = idx.group(g);
    const detail::SigType& st = idx.type(group[0].type);
    int measure = 0;
    if (st.measure_pos < 0) {
      for (const auto& e : group) measure += alive[e.member];
    } else {
      seen_values.clear();
      for (const auto& e : group)
        if (alive[e.member]) seen_values.push_back(idx.tuple(e.member)[st.measure_pos]);
      std::sort(seen_values.begin(), seen_values.end());
      measure = static_cast<int>(std::unique(seen_values.begin(), seen_values.end()) - seen_values.begin());
    }
    if (measure == 0 || measure >= st.bound) continue;
    audit.entries.push_back({idx.key(group[0]), st.priority, measure});
    for (const auto& e : group) {
      if (!alive[e.member]) continue;
      alive[e.member] = 0;
      for (std::uint32_t h : idx.member_groups(e.member)) {
        if (h == g || queued[h]) continue;
        queued[h] = 1;
        queues[priority_of(h)].push_back(h);
      }
    }
  }
  return alive;
}

std::vector<int> survivors(const std::vector<int>& flat, int arity, const std::vector<char>& alive) {
  std::vector<int> out;
  for (std::size_t m = 0; m < alive.size(); ++m)
    if (alive[m]) out.insert(out.end(), flat.begin() + m * arity, flat.begin() + (m + 1) * arity);
  return out;
}

}  // namespace

BuildResult build_rich_paths(const Graph& g, int k, int alpha, std::uint64_t cap) {
  if (k < 3) throw InputError("build_rich_paths needs k >= 3");
  if (alpha < 1) throw InputError("alpha must be positive");
  BuildResult r;
  r.seed = enumerate_paths(g, k, cap, [](const std::vector<int>&, int) { return true; });
  r.seed_size = r.seed.size() / k;
  std::vector<detail::SigType> types;
  for (int p = 1; p + 1 < k; ++p) types.push_back({{p}, false, -1, alpha, 0});
  auto alive = prune(r.seed, k, std::move(types), r.audit);
  r.collection = LabeledCollection(CollectionKind::path, k, survivors(r.seed, k, alive), CollectionProperty::rich, alpha);
  return r;
}

BuildResult build_rich_cycles(const Graph& g, int ell, int alpha, std::uint64_t cap) {
  if (ell < 2) throw InputError("build_rich_cycles needs ell >= 2");
  if (alpha < 1) throw InputError("alpha must be positive");
  BuildResult r;
  const int len = 2 * ell;
  r.seed = enumerate_cycles(g, ell, cap);
  r.seed_size = r.seed.size() / len;
  std::vector<detail::SigType> types{{{}, true, -1, alpha, 0}};
  auto alive = prune(r.seed, len, std::move(types), r.audit);
  r.collection =
      LabeledCollection(CollectionKind::cycle, len, survivors(r.seed, len, alive), CollectionProperty::rich, alpha);
  return r;
}

BuildResult build_good_paths(const Graph& g, int k, int alpha, double C, std::optional<double> L,
                             std::uint64_t cap) {
  if (k < 1) throw InputError("build_good_paths needs k >= 1");
  if (alpha < 1) throw InputError("alpha must be positive");
  if (!(C > 0.0)) throw InputError("C must be positive");
  BuildResult r;
  const int len = 2 * k + 1;
  const double n = g.live_count();
  const double d = g.average_degree();
  const double K = std::max(1.0, static_cast<double>(g.max_degree()) / std::max(1, g.min_degree()));
  r.L = L ? *L : 64.0 * k * K * K;
  if (!(r.L > 0.0)) throw InputError("L must be positive");
  r.cherry_bound = n * d * d / r.L;

  std::vector<std::uint64_t> cherries(g.n(), 0);
  for (int v = 0; v < g.n(); ++v) {
    auto nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (g.codegree(nb[i], nb[j]) > C) cherries[v] += 2;  // uvw and wvu
    r.high_cherries += cherries[v];
  }

  std::vector<detail::SigType> types;
  if (static_cast<double>(r.high_cherries) <= r.cherry_bound) {
    r.case_used = 1;
    r.seed = enumerate_paths(g, len, cap, [&](const std::vector<int>& cur, int w) {
      return cur.size() < 2 || g.codegree(cur[cur.size() - 2], w) <= C;
    });
    const double c2 = C * C;
    const int bound = c2 >= 2e9 ? 2'000'000'000 : static_cast<int>(std::floor(c2)) + 1;
    for (int p = 1; p + 2 < len; ++p) types.push_back({{p, p + 1}, false, -1, bound, 0});
  } else {
    r.case_used = 2;
    r.pivot = static_cast<int>(std::max_element(cherries.begin(), cherries.end()) - cherries.begin());
    const int v = r.pivot;
    r.seed = enumerate_paths(g, len, cap, [&](const std::vector<int>& cur, int w) {
      if (w == v) return false;
      const std::size_t pos = cur.size();
      if (pos % 2 == 1) return true;
      if (!g.adjacent(w, v)) return false;
      return pos == 0 || g.codegree(cur[pos - 2], w) > C;
    });
    const int bound = 2 * alpha + 1;
    for (int i = 1; i <= k; ++i) types.push_back({{2 * i - 1}, false, -1, bound, 1});
    for (int i = 0; i <= k - 2; ++i) types.push_back({{2 * i + 1, 2 * i + 2}, false, 2 * i + 2, bound, 2});
    for (int i = 1; i <= k - 1; ++i) types.push_back({{2 * i, 2 * i + 1}, false, 2 * i, bound, 3});
  }
  r.seed_size = r.seed.size() / len;

  auto weight = [&](std::span<const int> m) {
    double prod = 1.0;
    for (int i = 1; i <= k; ++i) prod *= g.codegree(m[2 * i - 2], m[2 * i]);
    return 1.0 / prod;
  };
  std::vector<char> alive = types.empty() ? std::vector<char>(r.seed_size, 1) : prune(r.seed, len, types, r.audit);
  if (r.case_used == 2)
    for (std::size_t m = 0; m < r.seed_size; ++m) {
      double w = weight({r.seed.data() + m * len, std::size_t(len)});
      r.seed_weight += w;
      if (alive[m]) r.final_weight += w;
    }
  r.collection =
      LabeledCollection(CollectionKind::path, len, survivors(r.seed, len, alive), CollectionProperty::good, alpha);

  auto check = verify_collection(r.collection, g, alpha);
  if (!check.ok) {
    std::ostringstream os;
    os << "good-path collection (case " << r.case_used << ") is not " << alpha << "-good: " << check.message
       << " at position " << check.position << " of member";
    for (int v : check.member) os << ' ' << v;
    throw IntegrityError(os.str());
  }
  return r;
}

BigInt path_seed_bound(const Graph& g, int k) { return hom_path_count(g, k); }

BigInt cycle_seed_bound(const Graph& g, int ell) { return hom_path_count(g, 2 * ell) / (4 * ell); }

LabeledCollection restrict_last_vertex(const LabeledCollection& c, int v) {
  if (c.kind() != CollectionKind::path || c.length() < 2) throw InputError("restriction needs a path collection");
  std::vector<int> flat;
  const int L = c.length();
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto m = c.member(i);
    if (m[L - 1] == v) flat.insert(flat.end(), m.begin(), m.end() - 1);
  }
  return LabeledCollection(CollectionKind::path, L - 1, std::move(flat), c.property(), c.alpha());
}

int most_common_last_vertex(const LabeledCollection& c) {
  std::map<int, std::size_t> freq;
  for (std::size_t i = 0; i < c.size(); ++i) ++freq[c.member(i)[c.length() - 1]];
  int best = -1;
  std::size_t best_count = 0;
  for (auto [v, f] : freq)
    if (f > best_count) {
      best = v;
      best_count = f;
    }
  return best;
}

std::vector<int> replay_audit(CollectionKind kind, int length, const std::vector<int>& seed, const PruneAudit& audit) {
  const std::size_t members = seed.size() / length;
  std::vector<char> alive(members, 1);
  auto matches = [&](const int* m, const std::vector<int>& key) {
    if (kind == CollectionKind::path) {
      for (int j = 0; j < length; ++j)
        if (key[j] >= 0 && key[j] != m[j]) return false;
      return true;
    }
    for (int start = 0; start < length; ++start)
      for (int dir : {1, -1}) {
        bool ok = true;
        for (int j = 0; j < length && ok; ++j) {
          int v = m[((start + dir * j) % length + length) % length];
          if (key[j] >= 0 && key[j] != v) ok = false;
        }
        if (ok) return true;
      }
    return false;
  };
  for (const auto& entry : audit.entries) {
    if (static_cast<int>(entry.key.size()) != length) throw InputError("audit key has the wrong length");
    for (std::size_t m = 0; m < members; ++m)
      if (alive[m] && matches(seed.data() + m * length, entry.key)) alive[m] = 0;
  }
  std::vector<int> out;
  for (std::size_t m = 0; m < members; ++m)
    if (alive[m]) out.insert(out.end(), seed.begin() + m * length, seed.begin() + (m + 1) * length);
  return out;
}

}  // namespace tf
