#include "turan_forge/generators.hpp"

#include <algorithm>

#include "turan_forge/errors.hpp"
#include "turan_forge/rng.hpp"

namespace tf {

std::string to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::grid: return "grid";
    case PatternKind::prism: return "prism";
    case PatternKind::prism_path: return "prism_path";
    case PatternKind::cylinder: return "cylinder";
    case PatternKind::torus: return "torus";
    case PatternKind::honeycomb: return "honeycomb";
    case PatternKind::even_cycle: return "even_cycle";
  }
  return "?";
}

PatternKind pattern_kind_from_string(const std::string& name) {
  for (auto k : {PatternKind::grid, PatternKind::prism, PatternKind::prism_path, PatternKind::cylinder,
                 PatternKind::torus, PatternKind::honeycomb, PatternKind::even_cycle})
    if (to_string(k) == name) return k;
  if (name == "prismpath") return PatternKind::prism_path;
  if (name == "cycle") return PatternKind::even_cycle;
  throw InputError("unknown pattern kind: " + name);
}

void PatternSpec::validate() const {
  auto fail = [&](const std::string& why) { throw InputError(describe() + ": " + why); };
  switch (kind) {
    case PatternKind::grid:
      if (a < 1) fail("grid needs t >= 1");
      break;
    case PatternKind::prism:
      if (a < 2) fail("prism needs ell >= 2");
      break;
    case PatternKind::prism_path:
      if (a < 1) fail("prism path needs t >= 1");
      break;
    case PatternKind::cylinder:
      if (a < 2 || b < 2) fail("cylinder needs k, ell >= 2");
      break;
    case PatternKind::torus:
      if (a < 4 || a % 2 != 0) fail("torus needs even k >= 4");
      if (b < 2) fail("torus needs ell >= 2");
      break;
    case PatternKind::honeycomb:
      if (a < 1 || a % 2 == 0) fail("honeycomb needs odd k >= 1");
      if (b < 2 || b % 2 != 0) fail("honeycomb needs even ell >= 2");
      break;
    case PatternKind::even_cycle:
      if (a < 2) fail("even cycle needs ell >= 2");
      break;
  }
}

std::string PatternSpec::describe() const {
  switch (kind) {
    case PatternKind::grid: return "grid(t=" + std::to_string(a) + ")";
    case PatternKind::prism: return "prism(ell=" + std::to_string(a) + ")";
    case PatternKind::prism_path: return "prism_path(t=" + std::to_string(a) + ")";
    case PatternKind::even_cycle: return "even_cycle(ell=" + std::to_string(a) + ")";
    default:
      return to_string(kind) + "(k=" + std::to_string(a) + ",ell=" + std::to_string(b) + ")";
  }
}

int Pattern::vertex(const std::string& coord) const {
  auto it = index_.find(coord);
  if (it == index_.end()) throw InputError("pattern has no coordinate " + coord);
  return it->second;
}

namespace {

std::string coord(int i, int j) { return std::to_string(i) + "," + std::to_string(j); }

struct PatternBuilder {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, int>> labels;
  std::map<std::string, int> index;
  std::vector<Edge> edges;

  int add(int i, int j) {
    int id = static_cast<int>(names.size());
    names.push_back(coord(i, j));
    alias(i, j, id);
    return id;
  }
  void alias(int i, int j, int id) {
    labels.emplace_back(coord(i, j), id);
    index[coord(i, j)] = id;
  }
  int at(int i, int j) const { return index.at(coord(i, j)); }
  void join(int i1, int j1, int i2, int j2) { edges.emplace_back(at(i1, j1), at(i2, j2)); }
};

// Quadrangulation rule shared by cylinder and torus: rows i and i+1 are joined
// by x_{i,j}x_{i+1,j}, plus x_{i,j+1}x_{i+1,j} for odd i or x_{i,j}x_{i+1,j+1}
// for even i, with column ell+1 read as column 1.
void join_rows(PatternBuilder& b, int i, int next, int ell) {
  for (int j = 1; j <= ell; ++j) {
    int jn = j % ell + 1;
    b.join(i, j, next, j);
    if (i % 2 == 1)
      b.join(i, jn, next, j);
    else
      b.join(i, j, next, jn);
  }
}

}  // namespace

Pattern pattern(const PatternSpec& spec) {
  spec.validate();
  PatternBuilder b;
  const int a = spec.a;
  const int c = spec.b;
  switch (spec.kind) {
    case PatternKind::grid:
      for (int i = 1; i <= a; ++i)
        for (int j = 1; j <= a; ++j) b.add(i, j);
      for (int i = 1; i <= a; ++i)
        for (int j = 1; j <= a; ++j) {
          if (j < a) b.join(i, j, i, j + 1);
          if (i < a) b.join(i, j, i + 1, j);
        }
      break;
    case PatternKind::prism:
    case PatternKind::even_cycle: {
      int len = 2 * a;
      int rings = spec.kind == PatternKind::prism ? 2 : 1;
      for (int r = 1; r <= rings; ++r)
        for (int i = 1; i <= len; ++i) b.add(r, i);
      for (int r = 1; r <= rings; ++r)
        for (int i = 1; i <= len; ++i) b.join(r, i, r, i % len + 1);
      if (rings == 2)
        for (int i = 1; i <= len; ++i) b.join(1, i, 2, i);
      break;
    }
    case PatternKind::prism_path:
      for (int r = 1; r <= 2; ++r)
        for (int i = 1; i <= a; ++i) b.add(r, i);
      for (int i = 1; i <= a; ++i) {
        b.join(1, i, 2, i);
        if (i < a) {
          b.join(1, i, 1, i + 1);
          b.join(2, i, 2, i + 1);
        }
      }
      break;
    case PatternKind::cylinder:
      for (int i = 1; i <= a; ++i)
        for (int j = 1; j <= c; ++j) b.add(i, j);
      for (int i = 1; i < a; ++i) join_rows(b, i, i + 1, c);
      break;
    case PatternKind::torus:
      for (int i = 1; i <= a; ++i)
        for (int j = 1; j <= c; ++j) b.add(i, j);
      for (int i = 1; i <= a; ++i) join_rows(b, i, i % a + 1, c);
      break;
    case PatternKind::honeycomb: {
      // x_{k,j} for odd j is one vertex, x_{1,j} for even j is another.
      int u = -1, v = -1;
      for (int i = 1; i <= a; ++i)
        for (int j = 1; j <= c; ++j) {
          if (i == a && j % 2 == 1) {
            if (u < 0)
              u = b.add(i, j);
            else
              b.alias(i, j, u);
          } else if (i == 1 && j % 2 == 0) {
            if (v < 0)
              v = b.add(i, j);
            else
              b.alias(i, j, v);
          } else {
            b.add(i, j);
          }
        }
      for (int i = 1; i <= a; ++i)
        for (int j = 1; j < c; ++j) b.join(i, j, i, j + 1);
      for (int i = 1; 2 * i <= a; ++i)
        for (int j = 1; j <= c; ++j) {
          if (j % 2 == 1) b.join(2 * i - 1, j, 2 * i, j);
          if (j % 2 == 0 && 2 * i + 1 <= a) b.join(2 * i, j, 2 * i + 1, j);
        }
      break;
    }
  }
  Pattern p;
  p.spec = spec;
  p.graph = build_graph(static_cast<int>(b.names.size()), b.edges);
  p.names = std::move(b.names);
  p.labels = std::move(b.labels);
  p.index_ = std::move(b.index);
  return p;
}

// ---- finite fields and PG(2,q) ----

namespace {

struct Field {
  int q = 0;
  std::vector<int> add;  // q*q
  std::vector<int> mul;  // q*q
  int plus(int x, int y) const { return add[x * q + y]; }
  int times(int x, int y) const { return mul[x * q + y]; }
};

bool is_prime(int x) {
  if (x < 2) return false;
  for (int d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

// Monic irreducible polynomials, coefficients from the constant term up.
struct PowerEntry {
  int q, p, m;
  std::vector<int> poly;
};

const std::vector<PowerEntry>& power_table() {
  static const std::vector<PowerEntry> table = {
      {4, 2, 2, {1, 1, 1}},        // x^2 + x + 1
      {8, 2, 3, {1, 1, 0, 1}},     // x^3 + x + 1
      {9, 3, 2, {1, 0, 1}},        // x^2 + 1
      {16, 2, 4, {1, 1, 0, 0, 1}}  // x^4 + x + 1
  };
  return table;
}

Field make_field(int q) {
  Field f;
  f.q = q;
  f.add.resize(q * q);
  f.mul.resize(q * q);
  if (is_prime(q)) {
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y) {
        f.add[x * q + y] = (x + y) % q;
        f.mul[x * q + y] = (x * y) % q;
      }
    return f;
  }
  const PowerEntry* e = nullptr;
  for (const auto& entry : power_table())
    if (entry.q == q) e = &entry;
  if (!e) throw InputError("unsupported field order " + std::to_string(q));
  const int p = e->p, m = e->m;
  auto digits = [&](int x) {
    std::vector<int> d(m);
    for (int i = 0; i < m; ++i, x /= p) d[i] = x % p;
    return d;
  };
  auto encode = [&](const std::vector<int>& d) {
    int x = 0;
    for (int i = m - 1; i >= 0; --i) x = x * p + d[i];
    return x;
  };
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) {
      auto dx = digits(x), dy = digits(y);
      std::vector<int> s(m);
      for (int i = 0; i < m; ++i) s[i] = (dx[i] + dy[i]) % p;
      f.add[x * q + y] = encode(s);
      std::vector<int> prod(2 * m - 1, 0);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + dx[i] * dy[j]) % p;
      for (int deg = 2 * m - 2; deg >= m; --deg) {
        int coef = prod[deg];
        if (coef == 0) continue;
        for (int i = 0; i <= m; ++i) prod[deg - m + i] = ((prod[deg - m + i] - coef * e->poly[i]) % p + p) % p;
      }
      prod.resize(m);
      f.mul[x * q + y] = encode(prod);
    }
  return f;
}

}  // namespace

bool polarity_supported(int q) {
  if (is_prime(q)) return true;
  for (const auto& e : power_table())
    if (e.q == q) return true;
  return false;
}

std::vector<std::array<int, 3>> polarity_points(int q) {
  if (!polarity_supported(q))
    throw InputError("polarity graph needs a supported prime power, got q=" + std::to_string(q));
  std::vector<std::array<int, 3>> pts;
  pts.push_back({0, 0, 1});
  for (int b = 0; b < q; ++b) pts.push_back({0, 1, b});
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) pts.push_back({1, a, b});
  return pts;
}

Graph polarity_graph(int q) {
  auto pts = polarity_points(q);
  Field f = make_field(q);
  int n = static_cast<int>(pts.size());
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int dot = 0;
      for (int c = 0; c < 3; ++c) dot = f.plus(dot, f.times(pts[i][c], pts[j][c]));
      if (dot == 0) edges.emplace_back(i, j);
    }
  return Graph::from_normalized(n, edges);
}

// ---- hosts ----

Graph random_graph(int n, double p, std::uint64_t seed, bool bipartite) {
  if (n < 0) throw InputError("negative vertex count");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0,1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  int half = n / 2;
  for (int u = 0; u < n; ++u) {
    int start = bipartite ? std::max(u + 1, half) : u + 1;
    if (bipartite && u >= half) break;
    for (int v = start; v < n; ++v)
      if (rng.uniform() < p) edges.emplace_back(u, v);
  }
  return Graph::from_normalized(n, edges);
}

Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_normalized(n, e);
}

Graph complete_bipartite(int a, int b) {
  std::vector<Edge> e;
  for (int u = 0; u < a; ++u)
    for (int v = a; v < a + b; ++v) e.emplace_back(u, v);
  return Graph::from_normalized(a + b, e);
}

Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return build_graph(n, e);
}

Graph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return build_graph(n, e);
}

}  // namespace tf
