#include "signature_index.hpp"

#include <algorithm>

#include "turan_forge/errors.hpp"

namespace tf::detail {

int SignatureIndex::write_key(std::span<const int> t, int type, int pos, Buffer& out) const {
  const SigType& st = types_[type];
  const int L = arity_;
  out[0] = type;
  if (!st.cyclic) {
    for (int i = 0; i < L; ++i) out[i + 1] = t[i];
    for (int b : st.blanks) out[b + 1] = -1;
    return L + 1;
  }
  // Path t[pos+1], ..., t[pos-1] around the cycle, in its smaller orientation.
  bool forward = true;
  for (int i = 0; i < L - 1; ++i) {
    int f = t[(pos + 1 + i) % L];
    int r = t[((pos - 1 - i) % L + L) % L];
    if (f != r) {
      forward = f < r;
      break;
    }
  }
  for (int i = 0; i < L - 1; ++i)
    out[i + 1] = forward ? t[(pos + 1 + i) % L] : t[((pos - 1 - i) % L + L) % L];
  out[L] = -1;
  return L + 1;
}

std::uint64_t SignatureIndex::hash_key(const Buffer& key, int len) {
  std::uint64_t h = 0x84222325cbf29ce4ULL;
  for (int i = 0; i < len; ++i) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(key[i])) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 31;
  }
  return h;
}

SignatureIndex::SignatureIndex(const int* flat, std::size_t members, int arity, std::vector<SigType> types)
    : flat_(flat), arity_(arity), types_(std::move(types)) {
  if (arity < 1 || arity > kMaxArity) throw InputError("tuple length must be between 1 and 62");
  if (members >= (std::size_t(1) << 32)) throw ResourceError("too many collection members");
  type_offset_.resize(types_.size());
  for (std::size_t t = 0; t < types_.size(); ++t) {
    type_offset_[t] = per_member_;
    per_member_ += types_[t].cyclic ? arity : 1;
  }
  entries_.reserve(members * per_member_);
  Buffer buf;
  for (std::size_t m = 0; m < members; ++m) {
    auto tup = tuple(static_cast<std::uint32_t>(m));
    for (std::size_t t = 0; t < types_.size(); ++t) {
      const SigType& st = types_[t];
      const int count = st.cyclic ? arity : 1;
      for (int i = 0; i < count; ++i) {
        const int pos = st.cyclic ? i : st.blanks.front();
        int len = write_key(tup, static_cast<int>(t), pos, buf);
        entries_.push_back({hash_key(buf, len), static_cast<std::uint32_t>(m), static_cast<std::uint16_t>(t),
                            static_cast<std::uint16_t>(pos)});
      }
    }
  }

  auto key_less = [&](const Entry& a, const Entry& b) {
    Buffer ka, kb;
    int la = write_key(tuple(a.member), a.type, a.pos, ka);
    int lb = write_key(tuple(b.member), b.type, b.pos, kb);
    return std::lexicographical_compare(ka.begin(), ka.begin() + la, kb.begin(), kb.begin() + lb);
  };
  std::sort(entries_.begin(), entries_.end(), [&](const Entry& a, const Entry& b) {
    if (a.hash != b.hash) return a.hash < b.hash;
    if (key_less(a, b)) return true;
    if (key_less(b, a)) return false;
    if (a.member != b.member) return a.member < b.member;
    return a.pos < b.pos;
  });

  entry_group_.resize(entries_.size());
  group_start_.push_back(0);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0) {
      const Entry& p = entries_[i - 1];
      const Entry& c = entries_[i];
      if (p.hash != c.hash || key_less(p, c)) group_start_.push_back(i);
    }
    entry_group_[i] = static_cast<std::uint32_t>(group_start_.size() - 1);
  }
  if (!entries_.empty()) group_start_.push_back(entries_.size());
  else group_start_.clear();

  member_groups_.assign(members * per_member_, 0);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Entry& e = entries_[i];
    std::size_t slot = type_offset_[e.type] + (types_[e.type].cyclic ? e.pos : 0);
    member_groups_[std::size_t(e.member) * per_member_ + slot] = entry_group_[i];
  }
}

std::vector<int> SignatureIndex::key(const Entry& e) const {
  Buffer buf;
  int len = write_key(tuple(e.member), e.type, e.pos, buf);
  return std::vector<int>(buf.begin() + 1, buf.begin() + len);
}

long SignatureIndex::find(std::span<const int> t, int type, int pos) const {
  if (static_cast<int>(t.size()) != arity_ || type < 0 || type >= static_cast<int>(types_.size())) return -1;
  Buffer q;
  int len = write_key(t, type, pos, q);
  const std::uint64_t h = hash_key(q, len);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), h,
                             [](const Entry& e, std::uint64_t v) { return e.hash < v; });
  Buffer k;
  for (; it != entries_.end() && it->hash == h; ++it) {
    int kl = write_key(tuple(it->member), it->type, it->pos, k);
    if (kl == len && std::equal(q.begin(), q.begin() + len, k.begin()))
      return entry_group_[static_cast<std::size_t>(it - entries_.begin())];
  }
  return -1;
}

}  // namespace tf::detail
