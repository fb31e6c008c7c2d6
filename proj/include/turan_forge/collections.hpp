#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "turan_forge/counting.hpp"
#include "turan_forge/graph.hpp"
#include "turan_forge/rng.hpp"

namespace tf {

enum class CollectionKind { path, cycle };
enum class CollectionProperty { rich, good };

std::string to_string(CollectionKind kind);

// Rotation/reflection of a cycle that starts at its smallest vertex and
// continues towards the smaller of that vertex's two neighbours.
std::vector<int> canonical_cycle(std::span<const int> cycle);

// Whether `t` is a path (resp. cycle) of g on distinct vertices.
bool is_valid_tuple(const Graph& g, CollectionKind kind, std::span<const int> t);

// Read-only view of a collection of labelled paths or cycles, as consumed by
// the embedders. Cycles answer every one of their 4*ell labellings.
class Family {
 public:
  virtual ~Family() = default;
  virtual CollectionKind kind() const = 0;
  virtual int length() const = 0;
  // Richness/goodness the collection was built for; empty when unknown.
  virtual std::optional<int> alpha() const = 0;
  virtual bool empty() const = 0;
  virtual bool contains(std::span<const int> t) const = 0;
  // Sorted values v such that t with position pos set to v is a member.
  // Contains t[pos] itself when t is a member.
  virtual std::vector<int> fills(std::span<const int> t, int pos) const = 0;
  // Edges (a, b) such that t with positions pos, pos+1 set to a, b is a member. Paths only.
  virtual std::vector<Edge> fill_edges(std::span<const int> t, int pos) const = 0;
  // The first `count` members in a fixed order.
  virtual std::vector<std::vector<int>> starts(std::size_t count) const = 0;
  // A random member, or nothing if none was found.
  virtual std::optional<std::vector<int>> sample(Rng& rng) const = 0;
  virtual std::string describe() const = 0;
};

// Explicit, immutable collection. Members are sorted and distinct; cycles are
// stored in canonical form. A signature index answers fill queries.
class LabeledCollection : public Family {
 public:
  LabeledCollection();
  LabeledCollection(CollectionKind kind, int length, std::vector<int> flat_members,
                    CollectionProperty property = CollectionProperty::rich, std::optional<int> alpha = {});
  ~LabeledCollection() override;
  LabeledCollection(const LabeledCollection&);
  LabeledCollection& operator=(const LabeledCollection&);
  LabeledCollection(LabeledCollection&&) noexcept;
  LabeledCollection& operator=(LabeledCollection&&) noexcept;

  CollectionKind kind() const override { return kind_; }
  int length() const override { return length_; }
  std::optional<int> alpha() const override { return alpha_; }
  bool empty() const override { return size() == 0; }
  bool contains(std::span<const int> t) const override;
  std::vector<int> fills(std::span<const int> t, int pos) const override;
  std::vector<Edge> fill_edges(std::span<const int> t, int pos) const override;
  std::vector<std::vector<int>> starts(std::size_t count) const override;
  std::optional<std::vector<int>> sample(Rng& rng) const override;
  std::string describe() const override;

  CollectionProperty property() const { return property_; }
  std::size_t size() const { return length_ == 0 ? 0 : flat_.size() / length_; }
  std::span<const int> member(std::size_t i) const { return {flat_.data() + i * length_, std::size_t(length_)}; }
  const std::vector<int>& flat() const { return flat_; }

 private:
  struct Index;
  void build_index();

  CollectionKind kind_ = CollectionKind::path;
  int length_ = 0;
  CollectionProperty property_ = CollectionProperty::rich;
  std::optional<int> alpha_;
  std::vector<int> flat_;
  std::unique_ptr<Index> index_;
};

// Every path (or cycle) of a host graph, without materialising any of them.
// This is the starting collection of the builders before pruning.
class HostFamily : public Family {
 public:
  HostFamily(const Graph& g, CollectionKind kind, int length);

  CollectionKind kind() const override { return kind_; }
  int length() const override { return length_; }
  std::optional<int> alpha() const override { return std::nullopt; }
  bool empty() const override;
  bool contains(std::span<const int> t) const override;
  std::vector<int> fills(std::span<const int> t, int pos) const override;
  std::vector<Edge> fill_edges(std::span<const int> t, int pos) const override;
  std::vector<std::vector<int>> starts(std::size_t count) const override;
  std::optional<std::vector<int>> sample(Rng& rng) const override;
  std::string describe() const override;

 private:
  const Graph* g_;
  CollectionKind kind_;
  int length_;
};

// One pruning step: every member matching `key` outside its -1 entries was
// removed. For cycles the key is a (length-1)-vertex path followed by -1 and
// a member matches if any of its labellings does.
struct AuditEntry {
  std::vector<int> key;
  int type = 0;     // deletion type; 0 for plain richness pruning
  int measure = 0;  // sub-threshold count observed when pruning
};

struct PruneAudit {
  std::vector<AuditEntry> entries;
};

struct BuildResult {
  LabeledCollection collection;
  PruneAudit audit;
  std::vector<int> seed;  // flat starting collection, in enumeration order
  std::size_t seed_size = 0;
  int case_used = 0;      // good paths only: 1 or 2
  std::uint64_t high_cherries = 0;  // good paths: ordered paths uvw with codeg(u,w) > C
  double cherry_bound = 0.0;        // good paths: n d^2 / L
  double L = 0.0;
  int pivot = -1;                   // good paths, case 2: the chosen centre vertex
  double seed_weight = 0.0;         // good paths, case 2: total weight of the seed
  double final_weight = 0.0;        // good paths, case 2: total weight of survivors
};

// All labelled paths on k vertices, pruned until every internal position has
// at least alpha fills. Throws ResourceError if the seed exceeds cap.
BuildResult build_rich_paths(const Graph& g, int k, int alpha, std::uint64_t cap);

// All 2*ell-cycles, pruned until every (2*ell-1)-vertex subpath has at least
// alpha fills.
BuildResult build_rich_cycles(const Graph& g, int ell, int alpha, std::uint64_t cap);

// Paths on 2k+1 vertices, pruned by the two-case deletion process. `L`
// defaults to 64 k K^2 with K = max degree / min degree. The result is
// checked for alpha-goodness and an IntegrityError is thrown if it fails.
BuildResult build_good_paths(const Graph& g, int k, int alpha, double C, std::optional<double> L,
                             std::uint64_t cap);

// Upper bounds on the seed sizes, from walk counts.
BigInt path_seed_bound(const Graph& g, int k);
BigInt cycle_seed_bound(const Graph& g, int ell);

// Members x_1..x_m with x_1..x_m v in c (v the last vertex). Keeps alpha and property.
LabeledCollection restrict_last_vertex(const LabeledCollection& c, int v);
// Last vertex shared by the most members; lowest id on ties. -1 if empty.
int most_common_last_vertex(const LabeledCollection& c);

// Re-applies an audit to a seed by direct pattern matching; returns the
// surviving members in seed order.
std::vector<int> replay_audit(CollectionKind kind, int length, const std::vector<int>& seed,
                              const PruneAudit& audit);

struct CollectionCheck {
  bool ok = true;
  std::string message;
  std::vector<int> member;  // first counterexample
  int position = -1;
  int measure = 0;
};

// Every member is a path/cycle of g; rich collections have >= alpha fills at
// every internal (path) or every (cycle) position; good collections have
// >= alpha disjoint fill edges at every pair (p, p+1) with 1 <= p <= length-3.
CollectionCheck verify_collection(const LabeledCollection& c, const Graph& g, int alpha);

// Text format: "<kind> <length> <count>" header, optional "# alpha N" and
// "# property good" lines, then one member per line.
void write_collection(std::ostream& out, const LabeledCollection& c);
LabeledCollection read_collection(std::istream& in);
void write_collection_file(const std::string& path, const LabeledCollection& c);
LabeledCollection read_collection_file(const std::string& path);

}  // namespace tf
