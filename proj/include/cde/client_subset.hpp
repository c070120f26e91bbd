#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cde {

/// Client subsets are single-word bitmasks, so the client count is capped.
inline constexpr int kMaxClients = 63;

constexpr std::uint64_t full_client_mask(int num_clients) {
  return (std::uint64_t{1} << num_clients) - 1;
}

/// Subset of the client set as a bitmask. Bit j stands for client j; clients
/// are 0-based internally and printed 1-based everywhere a human reads them.
struct ClientSubset {
  std::uint64_t mask = 0;

  constexpr bool contains(int j) const { return (mask >> j) & 1u; }
  constexpr bool empty() const { return mask == 0; }
  constexpr int count() const { return std::popcount(mask); }
  constexpr ClientSubset with(int j) const {
    return {mask | (std::uint64_t{1} << j)};
  }
  constexpr ClientSubset complement_in(int num_clients) const {
    return {full_client_mask(num_clients) ^ mask};
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(count());
    std::uint64_t m = mask;
    while (m) {
      out.push_back(std::countr_zero(m));
      m &= m - 1;
    }
    return out;
  }

  /// "{1,3}" with 1-based client labels.
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (const int j : members()) {
      if (!first) out += ',';
      out += std::to_string(j + 1);
      first = false;
    }
    out += '}';
    return out;
  }

  friend constexpr bool operator==(ClientSubset, ClientSubset) = default;
  friend constexpr auto operator<=>(ClientSubset, ClientSubset) = default;
};

/// All subsets of {0..num_clients-1} in ascending mask order. The empty and
/// full subsets sit at the ends of the range, so including or excluding them
/// just moves the endpoints.
class SubsetRange {
 public:
  SubsetRange(int num_clients, bool include_empty, bool include_full) {
    if (num_clients < 1 || num_clients > kMaxClients) {
      throw std::invalid_argument("SubsetRange: bad client count");
    }
    const std::uint64_t full = full_client_mask(num_clients);
    first_ = include_empty ? 0 : 1;
    last_ = include_full ? full + 1 : full;
    if (first_ > last_) first_ = last_;
  }

  class iterator {
   public:
    explicit constexpr iterator(std::uint64_t m) : mask_(m) {}
    constexpr ClientSubset operator*() const { return {mask_}; }
    constexpr iterator& operator++() {
      ++mask_;
      return *this;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t mask_;
  };

  iterator begin() const { return iterator(first_); }
  iterator end() const { return iterator(last_); }
  std::uint64_t size() const { return last_ - first_; }

 private:
  std::uint64_t first_ = 0;
  std::uint64_t last_ = 0;
};

}  // namespace cde
