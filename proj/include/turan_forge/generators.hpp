#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "turan_forge/graph.hpp"

namespace tf {

enum class PatternKind { grid, prism, prism_path, cylinder, torus, honeycomb, even_cycle };

std::string to_string(PatternKind kind);
PatternKind pattern_kind_from_string(const std::string& name);

struct PatternSpec {
  PatternKind kind = PatternKind::grid;
  int a = 1;  // grid t, prism ell, prism_path t, cylinder/torus/honeycomb k, even_cycle ell
  int b = 0;  // cylinder/torus/honeycomb ell; unused otherwise

  static PatternSpec grid(int t) { return {PatternKind::grid, t, 0}; }
  static PatternSpec prism(int ell) { return {PatternKind::prism, ell, 0}; }
  static PatternSpec prism_path(int t) { return {PatternKind::prism_path, t, 0}; }
  static PatternSpec cylinder(int k, int ell) { return {PatternKind::cylinder, k, ell}; }
  static PatternSpec torus(int k, int ell) { return {PatternKind::torus, k, ell}; }
  static PatternSpec honeycomb(int k, int ell) { return {PatternKind::honeycomb, k, ell}; }
  static PatternSpec even_cycle(int ell) { return {PatternKind::even_cycle, ell, 0}; }

  // Throws InputError when a defining constraint is violated.
  void validate() const;
  std::string describe() const;
  bool operator==(const PatternSpec&) const = default;
};

// A pattern graph with its coordinate labels. Coordinates are "i,j" strings.
// Several coordinates may name the same vertex (honeycomb identifications);
// `names[v]` is the first coordinate assigned to v.
struct Pattern {
  PatternSpec spec;
  Graph graph;
  std::vector<std::string> names;
  std::vector<std::pair<std::string, int>> labels;  // every coordinate, in generation order

  int vertex(const std::string& coord) const;
  int vertex(int i, int j) const { return vertex(std::to_string(i) + "," + std::to_string(j)); }

 private:
  friend Pattern pattern(const PatternSpec& spec);
  std::map<std::string, int> index_;
};

// Coordinates per kind:
//   grid        (i,j), 1 <= i,j <= t
//   prism       (1,i) outer cycle, (2,i) inner cycle, 1 <= i <= 2*ell; rungs (1,i)-(2,i)
//   prism_path  (1,i) and (2,i), 1 <= i <= t; rungs (1,i)-(2,i)
//   cylinder    (i,j), 1 <= i <= k, 1 <= j <= ell
//   torus       (i,j), as cylinder with row k+1 identified with row 1
//   honeycomb   (i,j), row k odd columns merged into one vertex, row 1 even columns into another
//   even_cycle  (1,i), 1 <= i <= 2*ell
Pattern pattern(const PatternSpec& spec);

// Orthogonal-polarity graph of PG(2,q). Points are normalised so the first
// nonzero coordinate is 1 and numbered in lexicographic order. Supports
// primes and the prime powers 4, 8, 9, 16.
Graph polarity_graph(int q);
bool polarity_supported(int q);
// Homogeneous coordinates of each vertex of polarity_graph(q).
std::vector<std::array<int, 3>> polarity_points(int q);

// G(n, p): pairs u < v visited in lexicographic order, one uniform draw each.
// With `bipartite`, only pairs across the split {0..n/2-1} | {n/2..n-1} are drawn.
Graph random_graph(int n, double p, std::uint64_t seed, bool bipartite);

Graph complete_graph(int n);
Graph complete_bipartite(int a, int b);
Graph cycle_graph(int n);
Graph path_graph(int n);

}  // namespace tf
