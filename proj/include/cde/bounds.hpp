#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cde/cut_function.hpp"
#include "cde/guards.hpp"
#include "cde/instance.hpp"
#include "cde/partition.hpp"
#include "cde/rational.hpp"

namespace cde {

struct PsMinSumRate {
  Rational value;
  Partition witness;
};

struct NpsMinSumRate {
  std::int64_t value = 0;
  Partition witness;
};

/// Exact minimum sum-rate when packets may be split into arbitrarily fine
/// chunks: the maximum over all partitions of the client set with at least
/// two blocks of
///
///   (sum over blocks B of the cut of the complement of B) / (blocks - 1).
///
/// The witness is the first maximizing partition in enumeration order.
/// Requires a valid instance; refuses client counts above the guard.
inline PsMinSumRate min_sum_rate_ps(const Instance& inst,
                                    int max_clients = kDefaultMaxExactClients) {
  const int k = inst.num_clients();
  assert(k >= 2);
  require_enumeration_guard(k, max_clients);
  const auto cut = missing_intersection_table(inst);

  std::int64_t best_num = -1;
  std::int64_t best_den = 1;
  std::vector<std::uint64_t> best_blocks;
  for_each_partition(k, 2, [&](std::span<const std::uint64_t> blocks) {
    std::int64_t total = 0;
    for (const std::uint64_t b : blocks) total += cut[b];
    const std::int64_t den = static_cast<std::int64_t>(blocks.size()) - 1;
    if (total * best_den > best_num * den) {
      best_num = total;
      best_den = den;
      best_blocks.assign(blocks.begin(), blocks.end());
    }
    return true;
  });
  return {Rational(best_num, best_den), to_partition(best_blocks)};
}

/// Exact minimum sum-rate when packets must be sent whole: the same
/// maximization with each partition's quotient rounded up before taking the
/// maximum. Rounding up commutes with the maximum, but the two routes are
/// computed independently here and compared in the tests.
inline NpsMinSumRate min_sum_rate_nps(const Instance& inst,
                                      int max_clients = kDefaultMaxExactClients) {
  const int k = inst.num_clients();
  assert(k >= 2);
  require_enumeration_guard(k, max_clients);
  const auto cut = missing_intersection_table(inst);

  std::int64_t best = -1;
  std::vector<std::uint64_t> best_blocks;
  for_each_partition(k, 2, [&](std::span<const std::uint64_t> blocks) {
    std::int64_t total = 0;
    for (const std::uint64_t b : blocks) total += cut[b];
    const std::int64_t value =
        ceil_div(total, static_cast<std::int64_t>(blocks.size()) - 1);
    if (value > best) {
      best = value;
      best_blocks.assign(blocks.begin(), blocks.end());
    }
    return true;
  });
  return {best, to_partition(best_blocks)};
}

/// The split-rate minimum computed through the complementary route,
///
///   L - min over partitions of (sum of per-block has-set unions - L)
///                               / (blocks - 1),
///
/// using union sizes directly instead of missing-set intersections. Serves
/// as an independent cross-check of min_sum_rate_ps.
inline Rational min_sum_rate_ps_via_unions(
    const Instance& inst, int max_clients = kDefaultMaxExactClients) {
  const int k = inst.num_clients();
  assert(k >= 2);
  require_enumeration_guard(k, max_clients);
  const auto uni = union_size_table(inst);
  const std::int64_t l = inst.num_packets();

  std::int64_t best_num = 0;
  std::int64_t best_den = 0;  // empty until the first partition
  for_each_partition(k, 2, [&](std::span<const std::uint64_t> blocks) {
    std::int64_t total = -l;
    for (const std::uint64_t b : blocks) total += uni[b];
    const std::int64_t den = static_cast<std::int64_t>(blocks.size()) - 1;
    if (best_den == 0 || total * best_den < best_num * den) {
      best_num = total;
      best_den = den;
    }
    return true;
  });
  return Rational(l) - Rational(best_num, best_den);
}

/// Largest single-client missing count: what the neediest client forces the
/// others to send, no matter how they cooperate.
inline std::int64_t max_missing_lower_bound(const Instance& inst) {
  std::int64_t best = 0;
  for (int j = 0; j < inst.num_clients(); ++j) {
    best = std::max<std::int64_t>(best, inst.missing_set(j).count());
  }
  return best;
}

/// Ceiling of (total missing count over all clients) / (K - 1); the
/// all-singletons partition bound.
inline std::int64_t mean_missing_lower_bound(const Instance& inst) {
  const int k = inst.num_clients();
  assert(k >= 2);
  std::int64_t total = 0;
  for (int j = 0; j < k; ++j) total += inst.missing_set(j).count();
  return ceil_div(total, k - 1);
}

struct ChainStep {
  int selected_client = 0;     // 0-based
  ClientSubset chain_set;      // the grown chain after this selection
  std::int64_t candidate = 0;  // bound value proposed at this step
};

struct ChainTrace {
  int start_client = 0;  // 0-based
  std::vector<ChainStep> steps;
  std::int64_t best_candidate = 0;  // largest candidate this chain produced
};

/// Deterministic lower bound on the whole-packet minimum sum-rate built from
/// greedy client chains.
///
/// The bound starts at the all-singletons partition value. Then, for every
/// start client, a chain W grows one client at a time: the next client u is
/// the one maximizing |M_W & M_u| - |M_u|, where M_S is the set of packets
/// missing at every client of S (ties go to the smallest client index, so
/// runs are reproducible). After each growth step the partition made of W
/// plus singletons yields the candidate
///
///   ceil((cut of complement of W + sum of missing counts outside W)
///        / |outside W|)
///
/// and the bound keeps the maximum candidate seen. Every candidate is a
/// partition value, so the result never exceeds the exact minimum; K*(K-2)
/// greedy selections keep it polynomial where the exact maximization is not.
/// With two clients the chain loop is empty and the initialization, which is
/// already exact there, is returned.
inline std::int64_t chain_lower_bound(const Instance& inst,
                                      std::vector<ChainTrace>* traces = nullptr) {
  const int k = inst.num_clients();
  assert(k >= 2);
  std::vector<std::int64_t> missing_count(k);
  std::int64_t missing_total = 0;
  for (int j = 0; j < k; ++j) {
    missing_count[j] = inst.missing_set(j).count();
    missing_total += missing_count[j];
  }
  std::int64_t beta = ceil_div(missing_total, k - 1);

  for (int start = 0; start < k; ++start) {
    PacketSet chain_missing = inst.missing_set(start);
    std::uint64_t chain = std::uint64_t{1} << start;
    std::int64_t missing_in_chain = missing_count[start];
    ChainTrace trace{start, {}, 0};

    for (int m = 2; m <= k - 1; ++m) {
      int pick = -1;
      std::int64_t pick_score = 0;
      for (int u = 0; u < k; ++u) {
        if ((chain >> u) & 1u) continue;
        const std::int64_t score =
            PacketSet::intersection_count(chain_missing, inst.missing_set(u)) -
            missing_count[u];
        if (pick < 0 || score > pick_score) {
          pick = u;
          pick_score = score;
        }
      }
      chain_missing &= inst.missing_set(pick);
      chain |= std::uint64_t{1} << pick;
      missing_in_chain += missing_count[pick];

      const std::int64_t outside = k - m;
      const std::int64_t candidate = ceil_div(
          chain_missing.count() + (missing_total - missing_in_chain), outside);
      beta = std::max(beta, candidate);
      if (traces) {
        trace.steps.push_back({pick, ClientSubset{chain}, candidate});
        trace.best_candidate = std::max(trace.best_candidate, candidate);
      }
    }
    if (traces) traces->push_back(std::move(trace));
  }
  return beta;
}

struct ChunkedMinSumRate {
  std::int64_t chunk_total = 0;  // whole-chunk minimum sum-rate
  Rational normalized;           // the same value in packets
};

/// Splitting every packet into K-1 chunks turns the split-rate problem into a
/// whole-chunk one: this returns the smallest integral chunk sum-rate whose
/// constraint set under the (K-1)-scaled cut is nonempty, plus that value
/// normalized back to packets.
inline ChunkedMinSumRate chunked_min_sum_rate(
    const Instance& inst, int max_clients = kDefaultMaxExactClients) {
  const int k = inst.num_clients();
  assert(k >= 2);
  require_enumeration_guard(k, max_clients);
  const auto cut = missing_intersection_table(inst);
  const std::int64_t scale = k - 1;

  std::int64_t best = -1;
  for_each_partition(k, 2, [&](std::span<const std::uint64_t> blocks) {
    std::int64_t total = 0;
    for (const std::uint64_t b : blocks) total += cut[b];
    best = std::max(best, ceil_div(scale * total,
                                   static_cast<std::int64_t>(blocks.size()) - 1));
    return true;
  });
  return {best, Rational(best, scale)};
}

/// Everything the bound comparison needs in one pass. Exact values are filled
/// only when the instance is inside the enumeration guard.
struct BoundReport {
  std::int64_t lb_max_missing = 0;
  std::int64_t lb_mean_missing = 0;
  std::int64_t lb_chain = 0;
  std::optional<Rational> alpha_star_ps;
  std::optional<std::int64_t> alpha_star_nps;
  std::optional<Partition> witness;  // maximizer behind alpha_star_nps
};

inline BoundReport compute_bound_report(const Instance& inst,
                                        int max_clients = kDefaultMaxExactClients) {
  BoundReport report;
  report.lb_max_missing = max_missing_lower_bound(inst);
  report.lb_mean_missing = mean_missing_lower_bound(inst);
  report.lb_chain = chain_lower_bound(inst);
  if (inst.num_clients() <= max_clients) {
    report.alpha_star_ps = min_sum_rate_ps(inst, max_clients).value;
    auto nps = min_sum_rate_nps(inst, max_clients);
    report.alpha_star_nps = nps.value;
    report.witness = std::move(nps.witness);
  }
  return report;
}

}  // namespace cde
