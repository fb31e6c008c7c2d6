#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "turan_forge/certificate.hpp"
#include "turan_forge/collections.hpp"
#include "turan_forge/graph.hpp"

namespace tf {

// Outcome of an embedder. `found == false` is an honest negative; invalid
// inputs throw InputError and broken guarantees throw IntegrityError.
struct EmbedResult {
  bool found = false;
  EmbeddingCertificate certificate;
  std::string reason;
  Json diagnostics = Json::object();
};

// Randomised searches: `restarts` independent runs share the node budget
// evenly; run r is seeded with derive_seed(seed, r) and the lowest
// successful run wins, so the answer does not depend on `threads`.
struct SearchOptions {
  std::uint64_t budget = 10'000'000;
  std::uint64_t seed = 1;
  int threads = 1;
  int restarts = 32;
  int branching = 3;  // children tried per level before backtracking further up
};

// The shifting embedders check their certificate against `host` before
// returning and throw IntegrityError if it fails.

// Staircase shifting on paths with 2t-1 vertices. When the family has no
// alpha (an unpruned family), a dead end moves on to the next start, up to
// `max_starts`; with alpha >= t^2 a dead end is an IntegrityError.
EmbedResult embed_grid(const Family& coll, const Graph& host, int t, std::size_t max_starts = 64);

// Row-by-row shifting on 2*ell-cycles, giving the cylinder with k rows.
EmbedResult embed_cylinder(const Family& coll, const Graph& host, int k, int ell, std::size_t max_starts = 64);

// Searches the auxiliary graph on ell-tuples (A-tuple x ~ B-tuple y when
// x1 y1 x2 y2 ... x_ell y_ell is a member) for a k-cycle of pairwise
// vertex-disjoint tuples. g must be bipartite.
EmbedResult embed_torus(const Family& coll, const Graph& g, int k, int ell, const SearchOptions& opt = {});

// Column-by-column shifting on paths with 2k vertices: each step replaces
// the adjacent position pairs holding one column by fresh disjoint fill edges.
EmbedResult embed_honeycomb(const Family& coll, const Graph& host, int k, int ell, std::size_t max_starts = 64);

struct PrismPathResult {
  EmbedResult embed;
  std::size_t edges = 0;  // e(H) between the parts
  std::size_t x_size = 0;
  std::size_t y_size = 0;
  bool hypothesis_edges = false;    // e(H) >= 20 t |Y|
  bool hypothesis_degrees = false;  // d(x) >= 20 t |Y|^{1/2} for all x in X
  std::size_t type1_deletions = 0;
  std::size_t type2_deletions = 0;
  double residue_threshold = 0.0;  // e(H) / (8 |Y|)
  std::vector<Edge> residue;       // (x, y) pairs surviving the process
  bool residue_invariant = true;
  // The ladder: rails[0][i] - rails[1][i] are the rungs.
  std::vector<int> rails[2];
};

// Two-type deletion process on the bipartite graph between X and Y (edges of
// h inside X or inside Y are ignored), then a greedy ladder with
// backtracking on the residue.
PrismPathResult find_prism_path(const Graph& h, const VertexSet& X, const VertexSet& Y, int t,
                                std::uint64_t budget = 10'000'000);
// Parts from the 2-colouring of h: the smaller side is tried as Y first.
PrismPathResult find_prism_path(const Graph& h, int t, std::uint64_t budget = 10'000'000);

struct PrismOptions {
  double T = 8.0;
  SearchOptions search;
  std::uint64_t classify_cap = 2'000'000;
  int thick_edges = 16;  // best-scoring edges tried in the thick branch
};

// Half + peel, thin/thick 4-cycle split at T sqrt(d), then the majority
// branch first: a disjoint 2*ell-cycle in the thin auxiliary graph, or the
// ladder search around a thick edge. Certificates refer to g's vertex ids.
EmbedResult find_prism(const Graph& g, int ell, const PrismOptions& opt = {});

}  // namespace tf
