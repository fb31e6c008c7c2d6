#pragma once

#include <vector>

#include "turan_forge/graph.hpp"

namespace tf {

// Maximum matching of the simple graph spanned by `edges` on arbitrary vertex
// ids (Edmonds' blossom algorithm). Returns the matched edges, each as listed
// in the input, ordered by first appearance in `edges`.
std::vector<Edge> maximum_matching(const std::vector<Edge>& edges);

// True when the edges are pairwise vertex-disjoint.
bool is_matching(const std::vector<Edge>& edges);

}  // namespace tf
