#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cde/bounds.hpp"
#include "cde/cut_function.hpp"
#include "cde/guards.hpp"
#include "cde/instance.hpp"
#include "cde/partition.hpp"
#include "cde/rational.hpp"

namespace cde {

/// Whether packets may be split into chunks (rational rates) or must be sent
/// whole (integral rates).
enum class Mode { kPs, kNps };

/// Per-client transmission counts.
struct Strategy {
  std::vector<Rational> rates;
  Mode kind = Mode::kNps;

  static Strategy integral(std::vector<std::int64_t> counts) {
    Strategy s;
    s.kind = Mode::kNps;
    s.rates.reserve(counts.size());
    for (const std::int64_t c : counts) s.rates.emplace_back(c);
    return s;
  }

  static Strategy fractional(std::vector<Rational> rates) {
    return Strategy{std::move(rates), Mode::kPs};
  }

  Rational sum() const {
    Rational total = 0;
    for (const Rational& r : rates) total = total + r;
    return total;
  }

  /// "(2,1,1)" or "(5/2,1/2,1/2)".
  std::string to_string() const {
    std::string out = "(";
    for (std::size_t j = 0; j < rates.size(); ++j) {
      if (j > 0) out += ',';
      out += rates[j].to_string();
    }
    out += ')';
    return out;
  }

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

/// Outcome of a feasibility question, with the evidence: a violated subset
/// for direct strategy checks, a violated partition for sum-rate checks, or
/// a witness strategy when a search produced one. `reason` carries failures
/// that have no set-shaped evidence (a non-integral whole-packet rate).
struct FeasibilityVerdict {
  bool feasible = false;
  std::optional<ClientSubset> violated_subset;
  std::optional<Partition> violated_partition;
  std::optional<Strategy> witness_strategy;
  std::string reason;
};

/// Checks the cut constraints directly: the strategy achieves universal
/// recovery exactly when, for every proper subset X of the clients, the
/// total rate inside X covers the number of packets missing at every client
/// outside X. On failure the smallest violating subset in mask order is
/// returned. Cost is 2^K cut evaluations.
inline FeasibilityVerdict achieves_recovery(const Instance& inst,
                                            const Strategy& s) {
  const int k = inst.num_clients();
  if (static_cast<int>(s.rates.size()) != k) {
    throw std::invalid_argument("strategy has " + std::to_string(s.rates.size()) +
                                " rates for " + std::to_string(k) + " clients");
  }
  for (const Rational& r : s.rates) {
    if (r < Rational(0)) throw std::invalid_argument("negative rate in strategy");
  }
  const std::uint64_t full = full_client_mask(k);
  for (std::uint64_t mask = 0; mask < full; ++mask) {
    PacketSet acc = PacketSet::full(inst.num_packets());
    for (int j = 0; j < k; ++j) {
      if (!((mask >> j) & 1u)) acc &= inst.missing_set(j);
    }
    const std::int64_t need = acc.count();
    if (need == 0) continue;  // nonnegative rates always cover zero
    Rational have = 0;
    for (int j = 0; j < k; ++j) {
      if ((mask >> j) & 1u) have = have + s.rates[j];
    }
    if (have < Rational(need)) {
      FeasibilityVerdict v;
      v.violated_subset = ClientSubset{mask};
      return v;
    }
  }
  FeasibilityVerdict v;
  v.feasible = true;
  return v;
}

/// Decides whether any strategy with the given sum-rate achieves recovery,
/// without constructing one: the sum-rate is feasible exactly when it is at
/// least every partition bound (and integral, in whole-packet mode). On
/// failure the first violating partition in enumeration order is returned.
inline FeasibilityVerdict sum_rate_feasible(const Instance& inst,
                                            const Rational& alpha, Mode mode,
                                            int max_clients = kDefaultMaxExactClients) {
  const int k = inst.num_clients();
  assert(k >= 2);
  require_enumeration_guard(k, max_clients);
  if (mode == Mode::kNps && !alpha.is_integer()) {
    FeasibilityVerdict v;
    v.reason = "non-integral";
    return v;
  }
  const auto cut = missing_intersection_table(inst);
  std::optional<Partition> bad;
  for_each_partition(k, 2, [&](std::span<const std::uint64_t> blocks) {
    std::int64_t total = 0;
    for (const std::uint64_t b : blocks) total += cut[b];
    const std::int64_t den = static_cast<std::int64_t>(blocks.size()) - 1;
    const bool violated = mode == Mode::kPs
                              ? alpha.num() * den < total * alpha.den()
                              : alpha.num() < ceil_div(total, den);
    if (violated) {
      bad = to_partition(blocks);
      return false;
    }
    return true;
  });
  FeasibilityVerdict v;
  if (bad) {
    v.violated_partition = std::move(bad);
  } else {
    v.feasible = true;
  }
  return v;
}

namespace detail {

/// Depth-first enumeration of integral rate vectors with a fixed sum, in
/// ascending lexicographic order, against the cut constraints.
///
/// Clients are assigned in index order. Once client t gets its rate, every
/// subset whose largest member is t has a final total, so the search floors
/// r_t at the largest still-uncovered deficit among those subsets and prunes
/// everything below. Rates are also capped from above: the clients other
/// than j must cover the cut of their own set, which leaves at most
/// alpha - cut(all but j) for client j.
class CompositionSearch {
 public:
  explicit CompositionSearch(const Instance& inst, std::int64_t multiplier = 1)
      : k_(inst.num_clients()), full_(full_client_mask(k_)) {
    const auto table = missing_intersection_table(inst);
    g_.resize(std::size_t{1} << k_);
    for (std::uint64_t m = 0; m <= full_; ++m) {
      g_[m] = multiplier * table[full_ ^ m];
    }
    sums_.assign(std::size_t{1} << k_, 0);
    rates_.assign(k_, 0);
  }

  /// First achieving composition of `alpha`, or nullopt.
  std::optional<std::vector<std::int64_t>> first(std::int64_t alpha) {
    collect_all_ = false;
    found_.reset();
    all_.clear();
    prepare_caps(alpha);
    dfs(0, alpha);
    return found_;
  }

  /// Every achieving composition of `alpha`, lexicographically ascending.
  std::vector<std::vector<std::int64_t>> all(std::int64_t alpha) {
    collect_all_ = true;
    found_.reset();
    all_.clear();
    prepare_caps(alpha);
    dfs(0, alpha);
    return std::move(all_);
  }

 private:
  void prepare_caps(std::int64_t alpha) {
    caps_.assign(k_, alpha);
    for (int j = 0; j < k_; ++j) {
      caps_[j] = alpha - g_[full_ ^ (std::uint64_t{1} << j)];
    }
  }

  // Returns true when the caller should stop (first-only search succeeded).
  bool dfs(int depth, std::int64_t budget) {
    const std::uint64_t bit = std::uint64_t{1} << depth;
    const std::uint64_t prefix = bit - 1;

    // Smallest rate for this client that keeps every subset completed at
    // this depth covered. The full client set is not a constraint.
    std::int64_t lo = 0;
    std::uint64_t m = prefix;
    for (;;) {
      if (depth < k_ - 1 || m != prefix) {
        lo = std::max(lo, g_[m | bit] - sums_[m]);
      }
      if (m == 0) break;
      m = (m - 1) & prefix;
    }

    if (depth == k_ - 1) {
      if (budget < lo) return false;
      rates_[depth] = budget;
      if (collect_all_) {
        all_.push_back(rates_);
        return false;
      }
      found_ = rates_;
      return true;
    }

    const std::int64_t hi = std::min(budget, caps_[depth]);
    for (std::int64_t v = lo; v <= hi; ++v) {
      rates_[depth] = v;
      for (std::uint64_t s = prefix;; s = (s - 1) & prefix) {
        sums_[s | bit] = sums_[s] + v;
        if (s == 0) break;
      }
      if (dfs(depth + 1, budget - v)) return true;
    }
    return false;
  }

  int k_;
  std::uint64_t full_;
  std::vector<std::int64_t> g_;
  std::vector<std::int64_t> sums_;
  std::vector<std::int64_t> rates_;
  std::vector<std::int64_t> caps_;
  bool collect_all_ = false;
  std::optional<std::vector<std::int64_t>> found_;
  std::vector<std::vector<std::int64_t>> all_;
};

inline void require_brute_force_guard(int num_clients, int max_clients) {
  if (num_clients > max_clients) {
    throw GuardError("instance has " + std::to_string(num_clients) +
                     " clients, above the brute-force guard of " +
                     std::to_string(max_clients));
  }
}

}  // namespace detail

struct StrategySearchResult {
  std::int64_t min_sum_rate = 0;
  Strategy witness;
};

/// Ground-truth oracle: ascending search over integral sum-rates for the
/// first one admitting an achieving strategy. Independent of the partition
/// maximization (it checks cut constraints directly), so the two routes
/// validate each other. The witness is the lexicographically smallest
/// achieving vector at the minimum.
///
/// The cap defaults to K*L, which is always sufficient: every client sending
/// each of its packets once achieves recovery. A tighter explicit cap may
/// make the search fail, which raises an error naming the cap.
inline StrategySearchResult brute_force_min_sum_rate(
    const Instance& inst, std::optional<std::int64_t> alpha_cap = std::nullopt,
    int max_clients = kDefaultMaxBruteForceClients) {
  const int k = inst.num_clients();
  assert(k >= 2);
  detail::require_brute_force_guard(k, max_clients);
  const std::int64_t cap =
      alpha_cap.value_or(static_cast<std::int64_t>(k) * inst.num_packets());
  detail::CompositionSearch search(inst);
  for (std::int64_t alpha = 0; alpha <= cap; ++alpha) {
    if (auto r = search.first(alpha)) {
      return {alpha, Strategy::integral(std::move(*r))};
    }
  }
  throw std::runtime_error("sum-rate cap exceeded: no achieving strategy with sum-rate at most " +
                           std::to_string(cap));
}

/// Explicit split-rate witness for small instances: the lexicographically
/// first integral chunk strategy at the chunked minimum, normalized back to
/// packets. Its sum is the chunked minimum divided by K-1, which equals the
/// split-rate minimum whenever (K-1) times that minimum is integral; the
/// strategy always achieves recovery either way.
inline Strategy construct_ps_witness(
    const Instance& inst, int max_clients = kDefaultMaxBruteForceClients) {
  const int k = inst.num_clients();
  assert(k >= 2);
  detail::require_brute_force_guard(k, max_clients);
  const auto chunked = chunked_min_sum_rate(inst);
  detail::CompositionSearch search(inst, k - 1);
  auto chunks = search.first(chunked.chunk_total);
  if (!chunks) {
    // unreachable for valid instances: the chunked minimum is by definition
    // the smallest sum with a nonempty constraint set
    throw std::logic_error("no chunk strategy at the chunked minimum");
  }
  Strategy s;
  s.kind = Mode::kPs;
  s.rates.reserve(chunks->size());
  for (const std::int64_t v : *chunks) s.rates.emplace_back(v, k - 1);
  return s;
}

/// All integral strategies with the given sum-rate that achieve recovery, in
/// ascending lexicographic order. Empty when the sum-rate is infeasible (or
/// negative).
inline std::vector<Strategy> feasible_strategies(
    const Instance& inst, std::int64_t alpha,
    int max_clients = kDefaultMaxBruteForceClients) {
  const int k = inst.num_clients();
  assert(k >= 2);
  detail::require_brute_force_guard(k, max_clients);
  if (alpha > static_cast<std::int64_t>(k) * inst.num_packets()) {
    throw GuardError("strategy enumeration capped at sum-rate " +
                     std::to_string(static_cast<std::int64_t>(k) * inst.num_packets()));
  }
  std::vector<Strategy> out;
  if (alpha < 0) return out;
  detail::CompositionSearch search(inst);
  for (auto& rates : search.all(alpha)) {
    out.push_back(Strategy::integral(std::move(rates)));
  }
  return out;
}

}  // namespace cde
