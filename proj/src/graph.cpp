#include "turan_forge/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "turan_forge/errors.hpp"

namespace tf {

namespace {

constexpr int kBitMatrixCap = 4096;

std::vector<Edge> normalize(int n, const std::vector<Edge>& edges) {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InputError("edge endpoint out of range: (" + std::to_string(u) + "," +
                       std::to_string(v) + ") with n=" + std::to_string(n));
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    out.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void check_vertex(const Graph& g, int v) {
  if (v < 0 || v >= g.n()) throw InputError("vertex out of range: " + std::to_string(v));
}

}  // namespace

Graph Graph::from_normalized(int n, const std::vector<Edge>& edges, std::vector<char> deleted) {
  Graph g;
  g.n_ = n;
  g.offsets_.assign(n + 1, 0);
  for (auto [u, v] : edges) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (int i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.nbrs_.resize(g.offsets_[n]);
  std::vector<int> pos(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges arrive sorted by (u, v), so appending in two sweeps keeps lists sorted.
  for (auto [u, v] : edges) g.nbrs_[pos[u]++] = v;
  for (auto [u, v] : edges) g.nbrs_[pos[v]++] = u;
  for (int v = 0; v < n; ++v)
    std::sort(g.nbrs_.begin() + g.offsets_[v], g.nbrs_.begin() + g.offsets_[v + 1]);
  g.edge_count_ = edges.size();

  bool any_deleted = false;
  for (char c : deleted) any_deleted |= (c != 0);
  if (any_deleted) {
    deleted.resize(n, 0);
    g.deleted_ = std::move(deleted);
  }
  g.live_ = n;
  for (char c : g.deleted_) g.live_ -= (c != 0);

  if (n <= kBitMatrixCap) {
    std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
    g.bits_.assign(words * n, 0);
    for (auto [u, v] : edges) {
      g.bits_[u * words + v / 64] |= std::uint64_t{1} << (v % 64);
      g.bits_[v * words + u / 64] |= std::uint64_t{1} << (u % 64);
    }
  }
  return g;
}

bool Graph::adjacent(int u, int v) const {
  if (!bits_.empty()) {
    std::size_t words = (static_cast<std::size_t>(n_) + 63) / 64;
    return (bits_[u * words + v / 64] >> (v % 64)) & 1U;
  }
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

int Graph::codegree(int u, int v) const {
  if (codeg_) return (*codeg_)[static_cast<std::size_t>(u) * n_ + v];
  if (!bits_.empty()) {
    std::size_t words = (static_cast<std::size_t>(n_) + 63) / 64;
    const std::uint64_t* a = &bits_[u * words];
    const std::uint64_t* b = &bits_[v * words];
    int c = 0;
    for (std::size_t i = 0; i < words; ++i) c += __builtin_popcountll(a[i] & b[i]);
    return c;
  }
  auto a = neighbors(u);
  auto b = neighbors(v);
  int c = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++c;
      ++i;
      ++j;
    }
  }
  return c;
}

std::vector<int> Graph::live_vertices() const {
  std::vector<int> out;
  out.reserve(live_);
  for (int v = 0; v < n_; ++v)
    if (!deleted(v)) out.push_back(v);
  return out;
}

double Graph::average_degree() const {
  if (live_ == 0) return 0.0;
  return 2.0 * static_cast<double>(edge_count_) / live_;
}

int Graph::max_degree() const {
  int m = 0;
  for (int v = 0; v < n_; ++v) m = std::max(m, degree(v));
  return m;
}

int Graph::min_degree() const {
  int m = -1;
  for (int v = 0; v < n_; ++v) {
    if (deleted(v)) continue;
    if (m < 0 || degree(v) < m) m = degree(v);
  }
  return std::max(m, 0);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (int u = 0; u < n_; ++u)
    for (int v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

bool Graph::build_codegree_cache(int cap) {
  if (codeg_) return true;
  if (n_ > cap) return false;
  auto table = std::make_shared<std::vector<std::uint16_t>>(static_cast<std::size_t>(n_) * n_, 0);
  for (int w = 0; w < n_; ++w) {
    auto nb = neighbors(w);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        ++(*table)[static_cast<std::size_t>(nb[i]) * n_ + nb[j]];
        ++(*table)[static_cast<std::size_t>(nb[j]) * n_ + nb[i]];
      }
  }
  codeg_ = std::move(table);
  return true;
}

void Graph::adopt_codegree_table(std::vector<std::uint16_t> table) {
  if (table.size() != static_cast<std::size_t>(n_) * n_)
    throw InputError("codegree table has the wrong size");
  codeg_ = std::make_shared<const std::vector<std::uint16_t>>(std::move(table));
}

Graph build_graph(int n, const std::vector<Edge>& edges) {
  if (n < 0) throw InputError("negative vertex count");
  return Graph::from_normalized(n, normalize(n, edges));
}

VertexSet common_neighbors(const Graph& g, int u, int v) {
  check_vertex(g, u);
  check_vertex(g, v);
  if (u == v) throw InputError("common_neighbors needs two distinct vertices");
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Graph remove(const Graph& g, const VertexSet& vertices, const std::vector<Edge>& edges) {
  std::vector<char> del(g.n(), 0);
  for (int v = 0; v < g.n(); ++v) del[v] = g.deleted(v) ? 1 : 0;
  for (int v : vertices) {
    check_vertex(g, v);
    del[v] = 1;
  }
  std::vector<Edge> drop;
  drop.reserve(edges.size());
  for (auto [u, v] : edges) {
    check_vertex(g, u);
    check_vertex(g, v);
    drop.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(drop.begin(), drop.end());
  std::vector<Edge> keep;
  keep.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    if (del[e.first] || del[e.second]) continue;
    if (std::binary_search(drop.begin(), drop.end(), e)) continue;
    keep.push_back(e);
  }
  return Graph::from_normalized(g.n(), keep, std::move(del));
}

Graph with_tombstones(const Graph& g, const VertexSet& vertices) {
  for (int v : vertices) {
    check_vertex(g, v);
    if (g.degree(v) != 0) throw InputError("tombstoned vertex must be isolated");
  }
  return remove(g, vertices, {});
}

Graph edge_subgraph(const Graph& g, const std::vector<Edge>& keep) {
  auto es = normalize(g.n(), keep);
  for (auto [u, v] : es)
    if (!g.adjacent(u, v)) throw InputError("edge_subgraph: edge not present in host");
  std::vector<char> del(g.n(), 0);
  for (int v = 0; v < g.n(); ++v) del[v] = g.deleted(v) ? 1 : 0;
  return Graph::from_normalized(g.n(), es, std::move(del));
}

std::vector<int> two_coloring(const Graph& g) {
  std::vector<int> color(g.n(), -1);
  std::vector<int> stack;
  for (int s = 0; s < g.n(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : g.neighbors(u)) {
        if (color[w] < 0) {
          color[w] = 1 - color[u];
          stack.push_back(w);
        } else if (color[w] == color[u]) {
          return {};
        }
      }
    }
  }
  return color;
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  int declared_n = -1;
  int max_id = -1;
  std::vector<Edge> edges;
  std::vector<int> deleted;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream ss(line.substr(first + 1));
      std::string word;
      if (ss >> word && word == "deleted") {
        int v;
        while (ss >> v) deleted.push_back(v);
      }
      continue;
    }
    std::istringstream ss(line);
    if (line[first] == 'n') {
      std::string tag;
      ss >> tag;
      if (tag != "n" || !(ss >> declared_n) || declared_n < 0)
        throw InputError("bad header on line " + std::to_string(lineno));
      continue;
    }
    long long a, b;
    if (!(ss >> a >> b)) throw InputError("bad edge on line " + std::to_string(lineno));
    std::string rest;
    if (ss >> rest) throw InputError("trailing data on line " + std::to_string(lineno));
    if (a < 0 || b < 0 || a > (1LL << 30) || b > (1LL << 30))
      throw InputError("vertex id out of range on line " + std::to_string(lineno));
    edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    max_id = std::max<int>(max_id, static_cast<int>(std::max(a, b)));
  }
  for (int v : deleted) max_id = std::max(max_id, v);
  int n = declared_n >= 0 ? declared_n : max_id + 1;
  Graph g = build_graph(n, edges);
  if (!deleted.empty()) g = with_tombstones(g, deleted);
  return g;
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n " << g.n() << "\n";
  bool any = false;
  for (int v = 0; v < g.n(); ++v) {
    if (!g.deleted(v)) continue;
    if (!any) out << "# deleted";
    any = true;
    out << ' ' << v;
  }
  if (any) out << "\n";
  for (auto [u, v] : g.edges()) out << u << ' ' << v << "\n";
}

void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  write_edge_list(out, g);
}

}  // namespace tf
