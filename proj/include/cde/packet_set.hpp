#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cde {

inline constexpr int kMaxPackets = 1 << 20;

/// Fixed-width bitset over packet indices. Binary operations require equal
/// widths; bits at or above the width are kept zero so popcounts stay honest.
class PacketSet {
 public:
  PacketSet() = default;

  explicit PacketSet(int num_packets)
      : width_(checked_width(num_packets)), words_((width_ + 63) / 64, 0) {}

  static PacketSet full(int num_packets) {
    PacketSet s(num_packets);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.clear_tail();
    return s;
  }

  int width() const { return width_; }

  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  int count() const {
    int total = 0;
    for (const std::uint64_t w : words_) total += std::popcount(w);
    return total;
  }

  bool none() const {
    for (const std::uint64_t w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  bool all() const { return count() == width_; }

  PacketSet complement() const {
    PacketSet out = *this;
    for (auto& w : out.words_) w = ~w;
    out.clear_tail();
    return out;
  }

  PacketSet& operator&=(const PacketSet& o) {
    require_same_width(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  PacketSet& operator|=(const PacketSet& o) {
    require_same_width(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  friend PacketSet operator&(PacketSet a, const PacketSet& b) { return a &= b; }
  friend PacketSet operator|(PacketSet a, const PacketSet& b) { return a |= b; }

  /// |a & b| without materializing the intersection.
  static int intersection_count(const PacketSet& a, const PacketSet& b) {
    a.require_same_width(b);
    int total = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      total += std::popcount(a.words_[i] & b.words_[i]);
    }
    return total;
  }

  bool is_subset_of(const PacketSet& o) const {
    require_same_width(o);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }

  std::vector<int> to_indices() const {
    std::vector<int> out;
    out.reserve(count());
    for (int i = 0; i < width_; ++i) {
      if (test(i)) out.push_back(i);
    }
    return out;
  }

  bool operator==(const PacketSet&) const = default;

 private:
  static int checked_width(int w) {
    if (w < 0 || w > kMaxPackets) {
      throw std::invalid_argument("PacketSet: width out of range");
    }
    return w;
  }

  void require_same_width(const PacketSet& o) const {
    if (width_ != o.width_) {
      throw std::invalid_argument("PacketSet: width mismatch");
    }
  }

  void clear_tail() {
    if (const int tail = width_ & 63; tail != 0 && !words_.empty()) {
      words_.back() &= (std::uint64_t{1} << tail) - 1;
    }
  }

  int width_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace cde
