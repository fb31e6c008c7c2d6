#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "signature_index.hpp"
#include "turan_forge/collections.hpp"
#include "turan_forge/errors.hpp"
#include "turan_forge/matching.hpp"

namespace tf {

std::string to_string(CollectionKind kind) { return kind == CollectionKind::path ? "path" : "cycle"; }

std::vector<int> canonical_cycle(std::span<const int> cycle) {
  const int L = static_cast<int>(cycle.size());
  if (L == 0) return {};
  int s = static_cast<int>(std::min_element(cycle.begin(), cycle.end()) - cycle.begin());
  const int next = cycle[(s + 1) % L];
  const int prev = cycle[(s - 1 + L) % L];
  std::vector<int> out(L);
  for (int i = 0; i < L; ++i) out[i] = next <= prev ? cycle[(s + i) % L] : cycle[((s - i) % L + L) % L];
  return out;
}

bool is_valid_tuple(const Graph& g, CollectionKind kind, std::span<const int> t) {
  const int L = static_cast<int>(t.size());
  if (L == 0) return false;
  for (int v : t)
    if (v < 0 || v >= g.n() || g.deleted(v)) return false;
  std::vector<int> sorted(t.begin(), t.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (int i = 0; i + 1 < L; ++i)
    if (!g.adjacent(t[i], t[i + 1])) return false;
  if (kind == CollectionKind::cycle && (L < 3 || !g.adjacent(t[L - 1], t[0]))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// LabeledCollection

struct LabeledCollection::Index {
  detail::SignatureIndex sig;
  std::vector<int> single_type;  // per position, -1 if not indexed
  std::vector<int> pair_type;    // per position, -1 if not indexed
  int cyclic_type = -1;
};

LabeledCollection::LabeledCollection() = default;
LabeledCollection::~LabeledCollection() = default;
LabeledCollection::LabeledCollection(LabeledCollection&&) noexcept = default;
LabeledCollection& LabeledCollection::operator=(LabeledCollection&&) noexcept = default;

LabeledCollection::LabeledCollection(const LabeledCollection& o)
    : kind_(o.kind_), length_(o.length_), property_(o.property_), alpha_(o.alpha_), flat_(o.flat_) {
  build_index();
}

LabeledCollection& LabeledCollection::operator=(const LabeledCollection& o) {
  if (this != &o) {
    kind_ = o.kind_;
    length_ = o.length_;
    property_ = o.property_;
    alpha_ = o.alpha_;
    flat_ = o.flat_;
    build_index();
  }
  return *this;
}

LabeledCollection::LabeledCollection(CollectionKind kind, int length, std::vector<int> flat,
                                     CollectionProperty property, std::optional<int> alpha)
    : kind_(kind), length_(length), property_(property), alpha_(alpha) {
  if (length < 1 || length > detail::SignatureIndex::kMaxArity)
    throw InputError("collection tuple length must be between 1 and 62");
  if (kind == CollectionKind::cycle && (length < 4 || length % 2 != 0))
    throw InputError("cycle collections need an even length >= 4");
  if (flat.size() % length != 0) throw InputError("member data is not a multiple of the tuple length");
  const std::size_t m = flat.size() / length;
  if (kind == CollectionKind::cycle)
    for (std::size_t i = 0; i < m; ++i) {
      auto c = canonical_cycle({flat.data() + i * length, std::size_t(length)});
      std::copy(c.begin(), c.end(), flat.begin() + i * length);
    }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  auto at = [&](std::size_t i) { return flat.begin() + i * length; };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(at(a), at(a) + length, at(b), at(b) + length);
  });
  flat_.reserve(flat.size());
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t i = order[k];
    if (k > 0 && std::equal(at(i), at(i) + length, at(order[k - 1]))) continue;
    flat_.insert(flat_.end(), at(i), at(i) + length);
  }
  build_index();
}

void LabeledCollection::build_index() {
  index_.reset();
  if (length_ == 0) return;
  auto idx = std::make_unique<Index>();
  std::vector<detail::SigType> types;
  idx->single_type.assign(length_, -1);
  idx->pair_type.assign(length_, -1);
  if (kind_ == CollectionKind::cycle) {
    idx->cyclic_type = 0;
    types.push_back({{}, true, -1, 0, 0});
  } else {
    for (int p = 1; p + 1 < length_; ++p) {
      idx->single_type[p] = static_cast<int>(types.size());
      types.push_back({{p}, false, -1, 0, 0});
    }
    if (property_ == CollectionProperty::good)
      for (int p = 1; p + 2 < length_; ++p) {
        idx->pair_type[p] = static_cast<int>(types.size());
        types.push_back({{p, p + 1}, false, -1, 0, 0});
      }
  }
  idx->sig = detail::SignatureIndex(flat_.data(), size(), length_, std::move(types));
  index_ = std::move(idx);
}

bool LabeledCollection::contains(std::span<const int> t) const {
  if (static_cast<int>(t.size()) != length_ || empty()) return false;
  std::vector<int> q(t.begin(), t.end());
  if (kind_ == CollectionKind::cycle) q = canonical_cycle(q);
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto m = member(mid);
    if (std::lexicographical_compare(m.begin(), m.end(), q.begin(), q.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo < size() && std::equal(q.begin(), q.end(), member(lo).begin());
}

std::vector<int> LabeledCollection::fills(std::span<const int> t, int pos) const {
  if (static_cast<int>(t.size()) != length_ || pos < 0 || pos >= length_)
    throw InputError("fill query does not match the collection shape");
  std::vector<int> out;
  if (empty()) return out;
  int type = kind_ == CollectionKind::cycle ? index_->cyclic_type : index_->single_type[pos];
  if (type >= 0) {
    long g = index_->sig.find(t, type, pos);
    if (g < 0) return out;
    for (const auto& e : index_->sig.group(static_cast<std::size_t>(g))) out.push_back(member(e.member)[e.pos]);
  } else {
    for (std::size_t i = 0; i < size(); ++i) {
      auto m = member(i);
      bool match = true;
      for (int j = 0; j < length_ && match; ++j)
        if (j != pos && m[j] != t[j]) match = false;
      if (match) out.push_back(m[pos]);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Edge> LabeledCollection::fill_edges(std::span<const int> t, int pos) const {
  if (kind_ != CollectionKind::path || static_cast<int>(t.size()) != length_ || pos < 0 || pos + 1 >= length_)
    throw InputError("fill-edge query does not match the collection shape");
  std::vector<Edge> out;
  if (empty()) return out;
  int type = index_->pair_type[pos];
  if (type >= 0) {
    long g = index_->sig.find(t, type, pos);
    if (g < 0) return out;
    for (const auto& e : index_->sig.group(static_cast<std::size_t>(g)))
      out.emplace_back(member(e.member)[pos], member(e.member)[pos + 1]);
  } else {
    for (std::size_t i = 0; i < size(); ++i) {
      auto m = member(i);
      bool match = true;
      for (int j = 0; j < length_ && match; ++j)
        if (j != pos && j != pos + 1 && m[j] != t[j]) match = false;
      if (match) out.emplace_back(m[pos], m[pos + 1]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> LabeledCollection::starts(std::size_t count) const {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < size() && out.size() < count; ++i) out.emplace_back(member(i).begin(), member(i).end());
  return out;
}

std::optional<std::vector<int>> LabeledCollection::sample(Rng& rng) const {
  if (empty()) return std::nullopt;
  auto m = member(rng.below(size()));
  return std::vector<int>(m.begin(), m.end());
}

std::string LabeledCollection::describe() const {
  std::ostringstream os;
  os << "explicit " << to_string(kind_) << " collection, length " << length_ << ", " << size() << " members";
  if (alpha_) os << ", " << (property_ == CollectionProperty::good ? "good" : "rich") << " alpha " << *alpha_;
  return os.str();
}

// ---------------------------------------------------------------------------
// HostFamily

HostFamily::HostFamily(const Graph& g, CollectionKind kind, int length) : g_(&g), kind_(kind), length_(length) {
  if (length < 1) throw InputError("tuple length must be positive");
  if (kind == CollectionKind::cycle && (length < 4 || length % 2 != 0))
    throw InputError("cycle families need an even length >= 4");
}

bool HostFamily::empty() const { return starts(1).empty(); }

bool HostFamily::contains(std::span<const int> t) const {
  return static_cast<int>(t.size()) == length_ && is_valid_tuple(*g_, kind_, t);
}

namespace {

// Neighbours of position pos inside t (one or two), honouring wrap-around for cycles.
std::vector<int> tuple_neighbors(CollectionKind kind, std::span<const int> t, int pos) {
  const int L = static_cast<int>(t.size());
  std::vector<int> out;
  if (kind == CollectionKind::cycle) {
    out.push_back(t[(pos - 1 + L) % L]);
    out.push_back(t[(pos + 1) % L]);
  } else {
    if (pos > 0) out.push_back(t[pos - 1]);
    if (pos + 1 < L) out.push_back(t[pos + 1]);
  }
  return out;
}

}  // namespace

std::vector<int> HostFamily::fills(std::span<const int> t, int pos) const {
  if (static_cast<int>(t.size()) != length_ || pos < 0 || pos >= length_)
    throw InputError("fill query does not match the family shape");
  std::vector<int> out;
  auto around = tuple_neighbors(kind_, t, pos);
  if (around.empty()) return out;
  std::vector<int> probe(t.begin(), t.end());
  for (int v : g_->neighbors(around[0])) {
    probe[pos] = v;
    if (is_valid_tuple(*g_, kind_, probe)) out.push_back(v);
  }
  return out;
}

std::vector<Edge> HostFamily::fill_edges(std::span<const int> t, int pos) const {
  if (kind_ != CollectionKind::path || static_cast<int>(t.size()) != length_ || pos < 0 || pos + 1 >= length_)
    throw InputError("fill-edge query does not match the family shape");
  std::vector<Edge> out;
  std::vector<int> probe(t.begin(), t.end());
  auto try_pair = [&](int a, int b) {
    probe[pos] = a;
    probe[pos + 1] = b;
    if (is_valid_tuple(*g_, kind_, probe)) out.emplace_back(a, b);
  };
  if (pos > 0) {
    for (int a : g_->neighbors(t[pos - 1]))
      for (int b : g_->neighbors(a)) try_pair(a, b);
  } else if (pos + 2 < length_) {
    for (int b : g_->neighbors(t[pos + 2]))
      for (int a : g_->neighbors(b)) try_pair(a, b);
  } else {
    for (const auto& [a, b] : g_->edges()) {
      try_pair(a, b);
      try_pair(b, a);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> HostFamily::starts(std::size_t count) const {
  std::vector<std::vector<int>> out;
  if (count == 0) return out;
  const Graph& g = *g_;
  std::vector<char> on(g.n(), 0);
  std::vector<int> cur;
  auto dfs = [&](auto&& self) -> void {
    if (out.size() >= count) return;
    if (static_cast<int>(cur.size()) == length_) {
      if (kind_ == CollectionKind::cycle && (!g.adjacent(cur.back(), cur[0]) || cur[1] > cur.back())) return;
      out.push_back(cur);
      return;
    }
    for (int w : g.neighbors(cur.back())) {
      if (on[w] || (kind_ == CollectionKind::cycle && w < cur[0])) continue;
      on[w] = 1;
      cur.push_back(w);
      self(self);
      cur.pop_back();
      on[w] = 0;
      if (out.size() >= count) return;
    }
  };
  for (int v = 0; v < g.n() && out.size() < count; ++v) {
    if (g.deleted(v)) continue;
    cur = {v};
    on[v] = 1;
    dfs(dfs);
    on[v] = 0;
  }
  return out;
}

std::optional<std::vector<int>> HostFamily::sample(Rng& rng) const {
  const Graph& g = *g_;
  std::vector<int> pool;
  for (int v = 0; v < g.n(); ++v)
    if (!g.deleted(v) && g.degree(v) > 0) pool.push_back(v);
  if (pool.empty()) return std::nullopt;
  std::vector<char> on(g.n(), 0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<int> cur{pool[rng.below(pool.size())]};
    on[cur[0]] = 1;
    bool ok = true;
    while (ok && static_cast<int>(cur.size()) < length_) {
      const bool last = kind_ == CollectionKind::cycle && static_cast<int>(cur.size()) == length_ - 1;
      std::vector<int> options;
      for (int w : g.neighbors(cur.back()))
        if (!on[w] && (!last || g.adjacent(w, cur[0]))) options.push_back(w);
      if (options.empty()) {
        ok = false;
        break;
      }
      int w = options[rng.below(options.size())];
      on[w] = 1;
      cur.push_back(w);
    }
    for (int v : cur) on[v] = 0;
    if (ok) return cur;
  }
  return std::nullopt;
}

std::string HostFamily::describe() const {
  return "all " + to_string(kind_) + "s of length " + std::to_string(length_) + " in the host";
}

// ---------------------------------------------------------------------------
// Verification

CollectionCheck verify_collection(const LabeledCollection& c, const Graph& g, int alpha) {
  CollectionCheck r;
  const int L = c.length();
  auto fail = [&](std::span<const int> m, int pos, int measure, std::string msg) {
    r.ok = false;
    r.member.assign(m.begin(), m.end());
    r.position = pos;
    r.measure = measure;
    r.message = std::move(msg);
  };
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!is_valid_tuple(g, c.kind(), c.member(i))) {
      fail(c.member(i), -1, 0, "member is not a " + to_string(c.kind()) + " of the host");
      return r;
    }

  if (c.property() == CollectionProperty::rich) {
    std::vector<int> probe(L);
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto m = c.member(i);
      const int first = c.kind() == CollectionKind::cycle ? 0 : 1;
      const int last = c.kind() == CollectionKind::cycle ? L - 1 : L - 2;
      for (int p = first; p <= last; ++p) {
        std::copy(m.begin(), m.end(), probe.begin());
        auto around = tuple_neighbors(c.kind(), m, p);
        int count = 0;
        for (int v : g.neighbors(around[0])) {
          probe[p] = v;
          if (c.contains(probe)) ++count;
        }
        if (count < alpha) {
          fail(m, p, count, "position has " + std::to_string(count) + " fills, fewer than alpha");
          return r;
        }
      }
    }
    return r;
  }

  // Goodness: maximum matching over the fill edges of each pair signature.
  std::map<std::vector<int>, int> memo;
  std::vector<int> probe(L);
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto m = c.member(i);
    for (int p = 1; p + 2 < L; ++p) {
      std::vector<int> key(m.begin(), m.end());
      key[p] = key[p + 1] = -1;
      key.push_back(p);
      auto it = memo.find(key);
      if (it == memo.end()) {
        std::vector<Edge> edges;
        std::copy(m.begin(), m.end(), probe.begin());
        for (int a : g.neighbors(m[p - 1]))
          for (int b : g.neighbors(a)) {
            if (!g.adjacent(b, m[p + 2])) continue;
            probe[p] = a;
            probe[p + 1] = b;
            if (c.contains(probe)) edges.emplace_back(a, b);
          }
        it = memo.emplace(std::move(key), static_cast<int>(maximum_matching(edges).size())).first;
      }
      if (it->second < alpha) {
        fail(m, p, it->second, "pair has " + std::to_string(it->second) + " disjoint fill edges, fewer than alpha");
        return r;
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Text IO

void write_collection(std::ostream& out, const LabeledCollection& c) {
  out << to_string(c.kind()) << ' ' << c.length() << ' ' << c.size() << '\n';
  if (c.alpha()) out << "# alpha " << *c.alpha() << '\n';
  if (c.property() == CollectionProperty::good) out << "# property good\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto m = c.member(i);
    for (int j = 0; j < c.length(); ++j) out << (j ? " " : "") << m[j];
    out << '\n';
  }
}

LabeledCollection read_collection(std::istream& in) {
  std::string line;
  bool have_header = false;
  CollectionKind kind = CollectionKind::path;
  int length = 0;
  std::size_t count = 0;
  std::optional<int> alpha;
  CollectionProperty property = CollectionProperty::rich;
  std::vector<int> flat;
  std::size_t seen = 0;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first[0] == '#') {
      std::string word;
      if (ls >> word) {
        if (word == "alpha") {
          int a;
          if (!(ls >> a)) throw InputError("line " + std::to_string(line_no) + ": bad alpha directive");
          alpha = a;
        } else if (word == "property") {
          std::string p;
          ls >> p;
          if (p == "good") property = CollectionProperty::good;
          else if (p == "rich") property = CollectionProperty::rich;
          else throw InputError("line " + std::to_string(line_no) + ": unknown property '" + p + "'");
        }
      }
      continue;
    }
    if (!have_header) {
      if (first == "path") kind = CollectionKind::path;
      else if (first == "cycle") kind = CollectionKind::cycle;
      else throw InputError("line " + std::to_string(line_no) + ": expected 'path' or 'cycle' header");
      if (!(ls >> length >> count) || length < 1)
        throw InputError("line " + std::to_string(line_no) + ": header needs '<kind> <length> <count>'");
      have_header = true;
      continue;
    }
    std::istringstream ts(line);
    for (int j = 0; j < length; ++j) {
      int v;
      if (!(ts >> v) || v < 0) throw InputError("line " + std::to_string(line_no) + ": malformed member");
      flat.push_back(v);
    }
    std::string extra;
    if (ts >> extra) throw InputError("line " + std::to_string(line_no) + ": member has too many entries");
    ++seen;
  }
  if (!have_header) throw InputError("collection file has no header");
  if (seen != count)
    throw InputError("collection header announces " + std::to_string(count) + " members, found " + std::to_string(seen));
  return LabeledCollection(kind, length, std::move(flat), property, alpha);
}

void write_collection_file(const std::string& path, const LabeledCollection& c) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  write_collection(out, c);
}

LabeledCollection read_collection_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_collection(in);
}

}  // namespace tf
