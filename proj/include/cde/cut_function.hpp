#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cde/client_subset.hpp"
#include "cde/instance.hpp"

namespace cde {

struct CutFunction;
inline std::int64_t g_eval(const CutFunction& cf, ClientSubset x);

/// View of the cut function over client subsets: the number of packets
/// missing at every client outside the subset, scaled by a positive integer
/// multiplier. Multiplier 1 is the plain cut; multiplier K-1 is the chunked
/// variant used to turn split-rate problems into integral ones.
struct CutFunction {
  const Instance* instance = nullptr;
  std::int64_t multiplier = 1;

  std::int64_t operator()(ClientSubset x) const { return g_eval(*this, x); }
};

/// Cut value on x: multiplier * |packets missing at every client outside x|.
/// The intersection over an empty family (x = the full client set) is the
/// whole packet universe, so the value there is multiplier * L; the bound
/// formulas never use it, but the convention keeps the function total.
inline std::int64_t g_eval(const CutFunction& cf, ClientSubset x) {
  const Instance& inst = *cf.instance;
  PacketSet acc = PacketSet::full(inst.num_packets());
  for (int j = 0; j < inst.num_clients(); ++j) {
    if (!x.contains(j)) acc &= inst.missing_set(j);
  }
  return cf.multiplier * acc.count();
}

namespace detail {

/// Fold of per-client packet sets over every client mask, via the standard
/// lowest-bit dynamic program. `identity` seeds mask 0. Returns the popcount
/// of each fold; 2^K entries, so callers guard K.
template <typename Combine>
std::vector<std::int64_t> fold_table(const Instance& inst,
                                     const PacketSet& identity,
                                     bool use_missing, Combine&& combine) {
  const int k = inst.num_clients();
  if (k < 1 || k > 26) {
    throw std::invalid_argument("fold_table: client count unsuitable for 2^K table");
  }
  const std::size_t words = static_cast<std::size_t>((inst.num_packets() + 63) / 64);
  const std::size_t n = std::size_t{1} << k;

  // Flat buffer of 2^K bitsets; entry m extends entry m-without-lowest-bit.
  std::vector<std::uint64_t> buf(n * std::max<std::size_t>(words, 1));
  std::vector<std::uint64_t> base(std::max<std::size_t>(words, 1), 0);
  for (int p = 0; p < identity.width(); ++p) {
    if (identity.test(p)) base[p >> 6] |= std::uint64_t{1} << (p & 63);
  }
  for (std::size_t w = 0; w < words; ++w) buf[w] = base[w];

  std::vector<std::uint64_t> client_words(static_cast<std::size_t>(k) * std::max<std::size_t>(words, 1), 0);
  for (int j = 0; j < k; ++j) {
    const PacketSet& s = use_missing ? inst.missing_set(j) : inst.has_set(j);
    for (int p = 0; p < s.width(); ++p) {
      if (s.test(p)) client_words[j * words + (p >> 6)] |= std::uint64_t{1} << (p & 63);
    }
  }

  std::vector<std::int64_t> counts(n, 0);
  counts[0] = identity.count();
  for (std::size_t m = 1; m < n; ++m) {
    const int low = std::countr_zero(m);
    const std::size_t prev = m & (m - 1);
    std::int64_t c = 0;
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t v = combine(buf[prev * words + w], client_words[low * words + w]);
      buf[m * words + w] = v;
      c += std::popcount(v);
    }
    counts[m] = c;
  }
  return counts;
}

}  // namespace detail

/// table[m] = |intersection of missing sets over clients in m|, with
/// table[0] = L. Two readings cover everything the bound formulas need:
/// the cut of the complement of m is table[m], and the cut of m itself is
/// table[full ^ m].
inline std::vector<std::int64_t> missing_intersection_table(const Instance& inst) {
  return detail::fold_table(inst, PacketSet::full(inst.num_packets()), true,
                            [](std::uint64_t a, std::uint64_t b) { return a & b; });
}

/// table[m] = |union of has-sets over clients in m|, with table[0] = 0.
inline std::vector<std::int64_t> union_size_table(const Instance& inst) {
  return detail::fold_table(inst, PacketSet(inst.num_packets()), false,
                            [](std::uint64_t a, std::uint64_t b) { return a | b; });
}

struct SubsetPair {
  ClientSubset x;
  ClientSubset y;
};

/// Exhaustive search for a violation of the crossing-supermodular inequality
/// g(X) + g(Y) <= g(X&Y) + g(X|Y) over crossing pairs: X and Y intersect,
/// neither contains the other, and their union misses some client. Returns
/// the first violating pair in ascending (x, y) mask order, or nullopt when
/// the inequality holds everywhere. Cost is quadratic in 2^K.
inline std::optional<SubsetPair> find_crossing_supermodular_violation(
    const CutFunction& cf) {
  const int k = cf.instance->num_clients();
  const std::uint64_t full = full_client_mask(k);
  const auto table = missing_intersection_table(*cf.instance);
  const auto g = [&](std::uint64_t m) { return cf.multiplier * table[full ^ m]; };
  for (std::uint64_t x = 1; x < full; ++x) {
    for (std::uint64_t y = x + 1; y < full; ++y) {
      if ((x & y) == 0 || (x & ~y) == 0 || (y & ~x) == 0 || (x | y) == full) {
        continue;
      }
      if (g(x) + g(y) > g(x & y) + g(x | y)) {
        return SubsetPair{{x}, {y}};
      }
    }
  }
  return std::nullopt;
}

/// Exhaustive search for a violation of superadditivity on disjoint pairs:
/// g(X|Y) >= g(X) + g(Y) for disjoint nonempty proper subsets X and Y.
/// Returns the first violating pair, or nullopt when the inequality holds.
inline std::optional<SubsetPair> find_superadditivity_violation(
    const CutFunction& cf) {
  const int k = cf.instance->num_clients();
  const std::uint64_t full = full_client_mask(k);
  const auto table = missing_intersection_table(*cf.instance);
  const auto g = [&](std::uint64_t m) { return cf.multiplier * table[full ^ m]; };
  for (std::uint64_t x = 1; x < full; ++x) {
    const std::uint64_t rest = full ^ x;
    for (std::uint64_t y = rest; y != 0; y = (y - 1) & rest) {
      if (y <= x) continue;  // each unordered pair once
      if (g(x | y) < g(x) + g(y)) {
        return SubsetPair{{x}, {y}};
      }
    }
  }
  return std::nullopt;
}

}  // namespace cde
