#pragma once

// Grouping of collection members by blanked signature. Shared by the
// collection query index and the pruning engine of the builders.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace tf::detail {

struct SigType {
  std::vector<int> blanks;  // blanked positions (ascending); unused when cyclic
  bool cyclic = false;      // cycle minus one vertex, at any position
  int measure_pos = -1;     // -1: number of members; otherwise distinct values at this position
  int bound = 0;            // pruning: violation iff 0 < measure < bound
  int priority = 0;
};

class SignatureIndex {
 public:
  static constexpr int kMaxArity = 62;

  struct Entry {
    std::uint64_t hash;
    std::uint32_t member;
    std::uint16_t type;
    std::uint16_t pos;  // first blank; for cyclic types the removed position
  };

  SignatureIndex() = default;
  SignatureIndex(const int* flat, std::size_t members, int arity, std::vector<SigType> types);

  int arity() const { return arity_; }
  std::size_t group_count() const { return group_start_.empty() ? 0 : group_start_.size() - 1; }
  std::span<const Entry> group(std::size_t g) const {
    return {entries_.data() + group_start_[g], entries_.data() + group_start_[g + 1]};
  }
  std::span<const std::uint32_t> member_groups(std::size_t m) const {
    return {member_groups_.data() + m * per_member_, per_member_};
  }
  const SigType& type(int t) const { return types_[t]; }
  std::span<const int> tuple(std::uint32_t m) const { return {flat_ + std::size_t(m) * arity_, std::size_t(arity_)}; }

  // Signature of an entry: the member with its blanks set to -1; for cyclic
  // types the canonical orientation of the remaining path followed by -1.
  std::vector<int> key(const Entry& e) const;

  // Group of the signature of `t` under (type, pos), or -1 if no member has it.
  long find(std::span<const int> t, int type, int pos) const;

 private:
  using Buffer = std::array<int, kMaxArity + 2>;
  int write_key(std::span<const int> t, int type, int pos, Buffer& out) const;
  static std::uint64_t hash_key(const Buffer& key, int len);

  const int* flat_ = nullptr;
  int arity_ = 0;
  std::vector<SigType> types_;
  std::size_t per_member_ = 0;
  std::vector<std::size_t> type_offset_;
  std::vector<Entry> entries_;
  std::vector<std::size_t> group_start_;
  std::vector<std::uint32_t> entry_group_;
  std::vector<std::uint32_t> member_groups_;
};

}  // namespace tf::detail
