#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cde/client_subset.hpp"

namespace cde {

/// Division of the client set into pairwise disjoint nonempty blocks whose
/// union is the whole set. Blocks are ordered by their smallest member.
struct Partition {
  std::vector<ClientSubset> blocks;

  int block_count() const { return static_cast<int>(blocks.size()); }

  bool is_partition_of(int num_clients) const {
    std::uint64_t seen = 0;
    for (const ClientSubset b : blocks) {
      if (b.empty() || (seen & b.mask) != 0) return false;
      seen |= b.mask;
    }
    return seen == full_client_mask(num_clients);
  }

  /// "{{1,2},{3}}" with 1-based client labels.
  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (i > 0) out += ',';
      out += blocks[i].to_string();
    }
    out += '}';
    return out;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
};

inline Partition to_partition(std::span<const std::uint64_t> block_masks) {
  Partition p;
  p.blocks.reserve(block_masks.size());
  for (const std::uint64_t m : block_masks) p.blocks.push_back({m});
  return p;
}

namespace detail {

/// Restricted growth string over num_clients positions: code[0] = 0 and every
/// later entry is at most one above the running maximum. Each string encodes
/// one set partition (the entry is the block index of that client), and
/// lexicographic string order visits every partition exactly once, Bell(K)
/// in total. Successor computation touches only a suffix, so the stream is
/// O(K) memory no matter how many partitions it yields.
class RgsState {
 public:
  explicit RgsState(int num_clients)
      : k_(num_clients), code_(num_clients, 0), prefix_max_(num_clients, 0) {
    if (num_clients < 1) {
      throw std::invalid_argument("RgsState: need at least one client");
    }
  }

  /// Advances to the lexicographic successor; false after the last string
  /// (the all-singletons partition).
  bool advance() {
    for (int i = k_ - 1; i >= 1; --i) {
      if (code_[i] <= prefix_max_[i - 1]) {
        ++code_[i];
        prefix_max_[i] = std::max(prefix_max_[i - 1], code_[i]);
        for (int j = i + 1; j < k_; ++j) {
          code_[j] = 0;
          prefix_max_[j] = prefix_max_[i];
        }
        return true;
      }
    }
    return false;
  }

  int size() const { return k_; }
  int block_count() const { return prefix_max_[k_ - 1] + 1; }
  const std::vector<int>& code() const { return code_; }

  void fill_blocks(std::vector<std::uint64_t>& blocks) const {
    blocks.assign(block_count(), 0);
    for (int i = 0; i < k_; ++i) {
      blocks[code_[i]] |= std::uint64_t{1} << i;
    }
  }

 private:
  int k_;
  std::vector<int> code_;
  std::vector<int> prefix_max_;
};

}  // namespace detail

/// Calls fn with the block masks of every partition of {0..num_clients-1}
/// holding at least min_blocks blocks, in restricted-growth-string order.
/// fn returns false to stop early. This is the inner loop of every exact
/// rate computation, hence the span-of-masks interface with no allocation
/// per partition beyond one reused scratch vector.
template <typename Fn>
void for_each_partition(int num_clients, int min_blocks, Fn&& fn) {
  if (min_blocks < 1 || min_blocks > num_clients) {
    throw std::invalid_argument("for_each_partition: min_blocks out of range");
  }
  detail::RgsState rgs(num_clients);
  std::vector<std::uint64_t> blocks;
  do {
    if (rgs.block_count() >= min_blocks) {
      rgs.fill_blocks(blocks);
      if (!fn(std::span<const std::uint64_t>(blocks))) return;
    }
  } while (rgs.advance());
}

/// Single-consumer stream over the same enumeration, yielding Partition
/// values. Parallel callers split the index range and run their own streams.
class PartitionStream {
 public:
  PartitionStream(int num_clients, int min_blocks)
      : rgs_(num_clients), min_blocks_(min_blocks) {
    if (min_blocks < 1 || min_blocks > num_clients) {
      throw std::invalid_argument("PartitionStream: min_blocks out of range");
    }
  }

  std::optional<Partition> next() {
    while (!done_) {
      const bool qualifies = rgs_.block_count() >= min_blocks_;
      Partition out;
      if (qualifies) {
        std::vector<std::uint64_t> blocks;
        rgs_.fill_blocks(blocks);
        out = to_partition(blocks);
      }
      done_ = !rgs_.advance();
      if (qualifies) return out;
    }
    return std::nullopt;
  }

 private:
  detail::RgsState rgs_;
  int min_blocks_;
  bool done_ = false;
};

}  // namespace cde
