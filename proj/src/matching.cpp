#include "turan_forge/matching.hpp"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>
#include <unordered_map>

namespace tf {

std::vector<Edge> maximum_matching(const std::vector<Edge>& edges) {
  if (edges.empty()) return {};
  std::vector<int> ids;
  ids.reserve(edges.size() * 2);
  for (auto [a, b] : edges) {
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto local = [&](int v) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  };

  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BGraph bg(ids.size());
  std::vector<Edge> seen;
  for (auto [a, b] : edges) {
    if (a == b) continue;
    Edge key{std::min(a, b), std::max(a, b)};
    seen.push_back(key);
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  for (auto [a, b] : seen) boost::add_edge(local(a), local(b), bg);

  std::vector<boost::graph_traits<BGraph>::vertex_descriptor> mate(ids.size());
  boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);

  const auto none = boost::graph_traits<BGraph>::null_vertex();
  std::vector<Edge> out;
  std::vector<char> used(ids.size(), 0);
  for (auto [a, b] : edges) {
    if (a == b) continue;
    std::size_t la = local(a), lb = local(b);
    if (used[la] || used[lb]) continue;
    if (mate[la] != none && mate[la] == lb) {
      used[la] = used[lb] = 1;
      out.emplace_back(a, b);
    }
  }
  return out;
}

bool is_matching(const std::vector<Edge>& edges) {
  std::vector<int> vs;
  for (auto [a, b] : edges) {
    if (a == b) return false;
    vs.push_back(a);
    vs.push_back(b);
  }
  std::sort(vs.begin(), vs.end());
  return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

}  // namespace tf
