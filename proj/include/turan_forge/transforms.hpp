#pragma once

#include <optional>
#include <string>
#include <vector>

#include "turan_forge/graph.hpp"

namespace tf {

struct GraphStats {
  int n = 0;  // live vertices
  std::size_t e = 0;
  double d = 0.0;  // 2e/n
  int min_degree = 0;
  int max_degree = 0;
};

GraphStats stats_of(const Graph& g);

struct TransformReport {
  std::string name;
  GraphStats input;
  GraphStats output;
  long long steps = 0;
  std::vector<int> deleted_vertices;  // in deletion order
  std::vector<Edge> deleted_edges;    // in deletion order
};

// Repeatedly deletes a vertex of degree < d/4 (d = input average degree),
// smallest degree first, ties by id.
struct PeelResult {
  Graph graph;
  TransformReport report;
};
PeelResult peel_min_degree(const Graph& g);
// Same process with an explicit threshold: deletes live vertices of degree < threshold.
PeelResult peel_below(const Graph& g, double threshold);

struct HalfResult {
  Graph graph;
  std::vector<int> side;  // 0/1 per vertex
  TransformReport report;
};
// Local search max-cut: starting from id parity, a vertex with more
// same-side than cross-side neighbours switches sides until none does.
HalfResult bipartite_half(const Graph& g);

struct AlmostRegularResult {
  bool found = false;
  Graph graph;  // best band tried when !found
  TransformReport report;
  double band_low = 0.0;
  double band_high = 0.0;
  double edge_target = 0.0;  // (2c/5) m^{1+eps} for the returned graph
};
// Throws InputError when e(G) < c n^{1+eps}.
AlmostRegularResult almost_regular_subgraph(const Graph& g, double epsilon, double c, double k_target);

enum class CleanMode { fixed, self };

struct CleanResult {
  Graph graph;
  TransformReport report;
  double d_used = 0.0;  // average degree the final thresholds came from
};
// Deletes edges uv where u has fewer than d/16 neighbours w != v with
// codeg(v, w) >= d^2/(128 n). `fixed` takes d from the input graph,
// `self` recomputes it from the current graph at every pass.
CleanResult clean_subgraph(const Graph& g, CleanMode mode = CleanMode::fixed);

// Number of w in N(u) \ {v} with codeg(v, w) >= min_codegree.
int clean_witnesses(const Graph& g, int u, int v, double min_codegree);

}  // namespace tf
