#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "turan_forge/graph.hpp"

namespace tf {

using BigInt = boost::multiprecision::cpp_int;

constexpr std::uint64_t kDefaultCap = 100'000'000;

// Number of walks on k vertices (homomorphisms from the k-vertex path).
// Tombstoned vertices are not part of the vertex set.
BigInt hom_path_count(const Graph& g, int k);

struct PathInequality {
  bool holds = true;
  double lhs = 0.0;  // (hom(P_{k+1})/n)^{1/k}
  double rhs = 0.0;  // (hom(P_{l+1})/n)^{1/l}
  BigInt hom_long;
  BigInt hom_short;
};
// Compares (hom(P_{k+1})/n)^{1/k} against (hom(P_{l+1})/n)^{1/l} exactly,
// as hom_long^l * n^(k-l) >= hom_short^k. k even, 1 <= l < k.
PathInequality check_path_inequality(const Graph& g, int k, int l);

// Unlabeled 4-cycles: half the sum over pairs u < v of C(codeg(u,v), 2).
BigInt count_c4(const Graph& g, int threads = 1);

struct CycleCount {
  BigInt count;
  bool truncated = false;
};
// Unlabeled cycles of length 2*ell. Each is found once, from its smallest
// vertex, in the direction of the smaller of that vertex's two cycle
// neighbours. Stops at `cap`. Multiply by 4*ell for labelled copies.
CycleCount count_even_cycles(const Graph& g, int ell, std::uint64_t cap = kDefaultCap, int threads = 1);

// Cycle x-y-z-w-x; diagonals are (x,z) and (y,w).
struct FourCycle {
  int x, y, z, w;
};

struct C4Classification {
  double threshold = 0.0;  // T * sqrt(d)
  std::uint64_t thin_count = 0;
  std::uint64_t thick_count = 0;
  std::vector<FourCycle> thin;
  std::vector<FourCycle> thick;
  bool truncated = false;       // enumeration stopped at cap
  bool lists_truncated = false; // counts exceed the stored lists
};
// Thin iff both diagonal codegrees are <= T sqrt(d), d the average degree.
C4Classification classify_c4(const Graph& g, double T, std::uint64_t cap = kDefaultCap,
                             std::size_t list_cap = 1'000'000);

struct RichTuple {
  bool rich = false;
  int matching_size = 0;
  std::vector<Edge> witness;  // (x, y) with x ~ w, w' and y ~ z, z'
};
// Maximum matching in the link graph {xy in E : wx, xw', zy, yz' in E}.
// Throws InputError unless wz and w'z' are edges and the four are distinct.
RichTuple is_rich_tuple(const Graph& g, int w, int z, int w2, int z2, int ell);

// A labelled ladder copy: rungs x[i]y[i], rails x[i-1]x[i] and y[i-1]y[i].
struct LadderCopy {
  std::vector<int> x, y;
  double weight = 0.0;
  int failure = 0;  // 0 nice, 1 high codeg(x_{i-1},y_i), 2 high codeg(x_i,y_{i-1}), 3 rich tuple
};

struct WeightReport {
  int ell = 0;
  double d_ref = 0.0;  // average degree of the input graph
  double n_ref = 0.0;  // live vertices of the input graph
  double C0 = 0.0;
  double total_weight = 0.0;
  double nice_weight = 0.0;
  double weight_high_codegree_a = 0.0;
  double weight_high_codegree_b = 0.0;
  double weight_rich_tuple = 0.0;
  std::uint64_t nice = 0;
  std::uint64_t high_codegree_a = 0;
  std::uint64_t high_codegree_b = 0;
  std::uint64_t rich_tuple = 0;
  std::uint64_t copies_enumerated = 0;
  bool truncated = false;
  std::vector<LadderCopy> samples;  // first copies in enumeration order
};

// 1 / prod_{i=1..ell} max(codeg(x_{i-1}, y_i), d^2/n).
double ladder_weight(const Graph& g, const std::vector<int>& x, const std::vector<int>& y, double d, double n);

// Enumerates labelled copies of the ladder with ell+1 rungs (x_0..x_ell,
// y_0..y_ell), accumulating weights and classifying each copy by its first
// failure in the order: codeg(x_{i-1},y_i) > C0 sqrt(d); codeg(x_i,y_{i-1}) >
// C0 sqrt(d); (x_{j-1},y_{j-1},x_{j+1},y_{j+1}) rich. Sums are reduced in root
// order, so results do not depend on `threads`.
WeightReport prism_path_weight_report(const Graph& g, int ell, double C0, std::uint64_t cap = kDefaultCap,
                                      int threads = 1, std::size_t sample_count = 16);

std::string to_decimal(const BigInt& x);

}  // namespace tf
