#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tf {

using Edge = std::pair<int, int>;

// Sorted distinct vertex ids.
using VertexSet = std::vector<int>;

// Immutable simple undirected graph in CSR form.
//
// Deleted vertices keep their ids: they become isolated and carry a
// tombstone flag, so tuples recorded before a deletion still name the same
// vertices afterwards.
class Graph {
 public:
  Graph() = default;

  int n() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const int> neighbors(int v) const {
    return {nbrs_.data() + offsets_[v], nbrs_.data() + offsets_[v + 1]};
  }
  int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(int u, int v) const;
  int codegree(int u, int v) const;

  bool deleted(int v) const { return !deleted_.empty() && deleted_[v] != 0; }
  int live_count() const { return live_; }
  std::vector<int> live_vertices() const;

  // 2e / (number of live vertices); 0 for a graph with no live vertices.
  double average_degree() const;
  int max_degree() const;
  // Minimum over live vertices; 0 if there are none.
  int min_degree() const;

  std::vector<Edge> edges() const;  // u < v, lexicographic

  // Dense codegree table, built only when n <= cap. Call before sharing the
  // graph between threads. Returns whether the table exists afterwards.
  bool build_codegree_cache(int cap = 5000);
  bool has_codegree_cache() const { return codeg_ != nullptr; }
  // Raw table access for spilling to disk (row-major n*n).
  const std::vector<std::uint16_t>* codegree_table() const { return codeg_.get(); }
  void adopt_codegree_table(std::vector<std::uint16_t> table);

  // Edges must already be normalized: u < v, sorted, distinct, in range.
  static Graph from_normalized(int n, const std::vector<Edge>& edges, std::vector<char> deleted = {});

 private:
  int n_ = 0;
  int live_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<int> offsets_{0};
  std::vector<int> nbrs_;
  std::vector<char> deleted_;
  std::vector<std::uint64_t> bits_;  // adjacency bit matrix, small graphs only
  std::shared_ptr<const std::vector<std::uint16_t>> codeg_;
};

// Duplicates and reversed duplicates collapse; self-loops and out-of-range
// endpoints throw InputError.
Graph build_graph(int n, const std::vector<Edge>& edges);

// N(u) ∩ N(v). Throws InputError when u == v or either id is invalid.
VertexSet common_neighbors(const Graph& g, int u, int v);

// G minus the given vertices (tombstoned) and edges.
Graph remove(const Graph& g, const VertexSet& vertices, const std::vector<Edge>& edges);

// Marks vertices as deleted without touching edges; they must already be isolated.
Graph with_tombstones(const Graph& g, const VertexSet& vertices);

// Subgraph keeping exactly the listed edges (all must exist in g); tombstones carry over.
Graph edge_subgraph(const Graph& g, const std::vector<Edge>& keep);

// 2-colouring, or empty if g is not bipartite. Colour 0 goes to the lowest id
// of each component.
std::vector<int> two_coloring(const Graph& g);

// Edge-list text format. Header "n <count>" optional; '#' lines are comments,
// except "# deleted <ids...>" which restores tombstones.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

}  // namespace tf
