#pragma once

#include <cstdint>
#include <string>

#include "turan_forge/certificate.hpp"
#include "turan_forge/graph.hpp"

namespace tf {

enum class SearchKind { found, exhausted, budget };
std::string to_string(SearchKind kind);

struct SearchStats {
  std::uint64_t nodes = 0;
  double seconds = 0.0;
  SearchKind kind = SearchKind::exhausted;
};

struct SubgraphResult {
  bool found() const { return stats.kind == SearchKind::found; }
  // Definitive negative: the whole search tree was explored.
  bool absent() const { return stats.kind == SearchKind::exhausted; }
  EmbeddingCertificate certificate;  // labels are pattern vertex ids
  SearchStats stats;
};

// Backtracking subgraph search (not necessarily induced). Pattern vertices
// are placed in a greedy order (most placed neighbours, then degree); host
// candidates come from the neighbourhood of a placed neighbour and are
// filtered by degree, adjacency and codegree. Root candidates are searched
// one at a time in order of decreasing host degree; with threads > 1 they
// are searched concurrently and the lowest successful root wins, so the
// result does not depend on the thread count.
SubgraphResult find_subgraph(const Graph& host, const Graph& pattern, std::uint64_t budget = 100'000'000,
                             int threads = 1);

struct ExmaxResult {
  int n = 0;
  int max_edges = 0;
  Graph witness;
  std::uint64_t classes = 0;  // pattern-free graphs on n vertices up to isomorphism
};

constexpr int kExmaxMaxN = 9;

// Largest edge count of an n-vertex graph with no copy of `pattern`, by
// generating pattern-free graphs vertex by vertex up to isomorphism.
// Throws InputError for n > 9.
ExmaxResult max_edges_exhaustive(int n, const Graph& pattern);

}  // namespace tf
