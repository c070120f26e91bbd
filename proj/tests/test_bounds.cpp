#include <catch2/catch_amalgamated.hpp>

#include "cde/bounds.hpp"
#include "cde/cut_function.hpp"
#include "test_support.hpp"

using cde::ChainTrace;
using cde::Instance;
using cde::Rational;

namespace {

// Recomputes a partition's bound value to audit returned witnesses.
Rational partition_value(const Instance& inst, const cde::Partition& p) {
  const auto cut = cde::missing_intersection_table(inst);
  std::int64_t total = 0;
  for (const cde::ClientSubset b : p.blocks) total += cut[b.mask];
  return Rational(total, p.block_count() - 1);
}

}  // namespace

TEST_CASE("exact rates on the README system", "[bounds]") {
  const Instance inst = cde::test::readme_instance();

  const auto ps = cde::min_sum_rate_ps(inst);
  CHECK(ps.value == Rational(7, 2));
  CHECK(ps.witness.is_partition_of(3));
  CHECK(partition_value(inst, ps.witness) == ps.value);
  CHECK(ps.witness.to_string() == "{{1},{2},{3}}");

  const auto nps = cde::min_sum_rate_nps(inst);
  CHECK(nps.value == 4);
  CHECK(nps.witness.is_partition_of(3));

  CHECK(cde::min_sum_rate_ps_via_unions(inst) == Rational(7, 2));
}

TEST_CASE("lower bounds on the README system", "[bounds]") {
  const Instance inst = cde::test::readme_instance();
  CHECK(cde::max_missing_lower_bound(inst) == 3);
  CHECK(cde::mean_missing_lower_bound(inst) == 4);
  CHECK(cde::chain_lower_bound(inst) == 4);
}

TEST_CASE("chain traces are shaped and deterministic", "[bounds]") {
  const Instance inst = cde::test::readme_instance();
  std::vector<ChainTrace> first, second;
  CHECK(cde::chain_lower_bound(inst, &first) == 4);
  CHECK(cde::chain_lower_bound(inst, &second) == 4);
  CHECK(first.size() == 3);  // one chain per start client
  for (std::size_t i = 0; i < first.size(); ++i) {
    const ChainTrace& t = first[i];
    CHECK(t.start_client == static_cast<int>(i));
    CHECK(t.steps.size() == 1);  // K - 2 growth steps
    CHECK(t.steps[0].chain_set.count() == 2);
    CHECK(t.steps[0].chain_set.contains(t.start_client));
    CHECK(t.steps[0].candidate == 3);
    CHECK(t.best_candidate == 3);
    CHECK(t.steps[0].chain_set == second[i].steps[0].chain_set);
    CHECK(t.steps[0].selected_client == second[i].steps[0].selected_client);
  }
}

TEST_CASE("two-client systems are exact at initialization", "[bounds]") {
  const Instance inst = cde::test::two_client_split();
  CHECK(cde::min_sum_rate_ps(inst).value == Rational(2));
  CHECK(cde::min_sum_rate_nps(inst).value == 2);
  CHECK(cde::max_missing_lower_bound(inst) == 1);
  CHECK(cde::mean_missing_lower_bound(inst) == 2);
  std::vector<ChainTrace> traces;
  CHECK(cde::chain_lower_bound(inst, &traces) == 2);
  REQUIRE(traces.size() == 2);
  CHECK(traces[0].steps.empty());  // the chain loop is empty for K = 2
}

TEST_CASE("partially covered three-client system", "[bounds]") {
  const Instance inst = cde::test::covered_pair();
  CHECK(cde::min_sum_rate_ps(inst).value == Rational(1));
  CHECK(cde::min_sum_rate_nps(inst).value == 1);
  CHECK(cde::chain_lower_bound(inst) == 1);
}

TEST_CASE("all-full systems cost nothing", "[bounds]") {
  const Instance inst = Instance::all_full(5, 7);
  CHECK(cde::min_sum_rate_ps(inst).value == Rational(0));
  CHECK(cde::min_sum_rate_nps(inst).value == 0);
  CHECK(cde::min_sum_rate_ps_via_unions(inst) == Rational(0));
  CHECK(cde::max_missing_lower_bound(inst) == 0);
  CHECK(cde::mean_missing_lower_bound(inst) == 0);
  CHECK(cde::chain_lower_bound(inst) == 0);
  const auto chunked = cde::chunked_min_sum_rate(inst);
  CHECK(chunked.chunk_total == 0);
  CHECK(chunked.normalized == Rational(0));
}

TEST_CASE("chunked rate on the README system", "[bounds]") {
  const auto chunked = cde::chunked_min_sum_rate(cde::test::readme_instance());
  CHECK(chunked.chunk_total == 7);
  CHECK(chunked.normalized == Rational(7, 2));
}

TEST_CASE("enumeration guard refuses oversized instances", "[bounds]") {
  const Instance inst = Instance::all_full(15, 2);
  CHECK_THROWS_AS(cde::min_sum_rate_ps(inst), cde::GuardError);
  CHECK_THROWS_AS(cde::min_sum_rate_nps(inst), cde::GuardError);
  CHECK_THROWS_AS(cde::min_sum_rate_ps_via_unions(inst), cde::GuardError);
  CHECK_THROWS_AS(cde::chunked_min_sum_rate(inst), cde::GuardError);
  CHECK_THROWS_MATCHES(cde::min_sum_rate_ps(inst), cde::GuardError,
                       Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring(
                           "use the bounds instead")));

  // the guard is configurable
  CHECK(cde::min_sum_rate_ps(inst, 15).value == Rational(0));

  const cde::BoundReport report = cde::compute_bound_report(inst);
  CHECK_FALSE(report.alpha_star_ps);
  CHECK_FALSE(report.alpha_star_nps);
  CHECK(report.lb_chain == 0);
}

TEST_CASE("bound report carries exact values within the guard", "[bounds]") {
  const cde::BoundReport report =
      cde::compute_bound_report(cde::test::readme_instance());
  CHECK(report.lb_max_missing == 3);
  CHECK(report.lb_mean_missing == 4);
  CHECK(report.lb_chain == 4);
  REQUIRE(report.alpha_star_ps);
  REQUIRE(report.alpha_star_nps);
  CHECK(*report.alpha_star_ps == Rational(7, 2));
  CHECK(*report.alpha_star_nps == 4);
  REQUIRE(report.witness);
  CHECK(report.witness->is_partition_of(3));
}

TEST_CASE("the two exact routes agree on the random corpus", "[bounds]") {
  for (int seed = 0; seed < 50; ++seed) {
    const int k = 2 + seed % 5;
    const int l = 4 + seed % 7;
    const Instance inst = cde::test::corpus_instance(k, l, seed);
    const auto ps = cde::min_sum_rate_ps(inst);
    CHECK(cde::min_sum_rate_ps_via_unions(inst) == ps.value);
    CHECK(partition_value(inst, ps.witness) == ps.value);
  }
}

TEST_CASE("ceiling routes compared independently", "[bounds]") {
  // The whole-packet value is computed as a maximum of per-partition
  // ceilings; it can never be below the ceiling of the split-rate maximum.
  // Equality is expected (rounding up is monotone); count any gaps.
  int gaps = 0;
  for (int seed = 0; seed < 50; ++seed) {
    const int k = 2 + seed % 5;
    const Instance inst = cde::test::corpus_instance(k, 8, seed);
    const auto ps = cde::min_sum_rate_ps(inst);
    const auto nps = cde::min_sum_rate_nps(inst);
    CHECK(nps.value >= ps.value.ceil());
    if (nps.value != ps.value.ceil()) ++gaps;
  }
  INFO("instances where max-of-ceilings exceeded ceiling-of-max: " << gaps);
  CHECK(gaps == 0);
}

TEST_CASE("chunk scaling identity", "[bounds]") {
  for (int seed = 0; seed < 50; ++seed) {
    const int k = 2 + seed % 5;
    const Instance inst = cde::test::corpus_instance(k, 9, seed);
    const auto ps = cde::min_sum_rate_ps(inst);
    const auto chunked = cde::chunked_min_sum_rate(inst);
    CHECK(chunked.chunk_total ==
          (Rational(k - 1) * ps.value).ceil());
    CHECK(chunked.normalized == Rational(chunked.chunk_total, k - 1));
  }
}

TEST_CASE("bound sandwich and prior-bound dominance", "[bounds]") {
  for (int seed = 0; seed < 60; ++seed) {
    const int k = 2 + seed % 7;
    const int l = 4 + seed % 9;
    const Instance inst = cde::test::corpus_instance(k, l, seed);
    const std::int64_t lb_max = cde::max_missing_lower_bound(inst);
    const std::int64_t lb_mean = cde::mean_missing_lower_bound(inst);
    const std::int64_t beta = cde::chain_lower_bound(inst);
    const std::int64_t exact = cde::min_sum_rate_nps(inst).value;

    CHECK(lb_mean <= beta);
    CHECK(beta <= exact);
    CHECK(lb_max <= exact);

    // the chain bound should dominate both prior bounds; a violation here is
    // a finding to report, not noise to tolerate
    const auto cut = cde::missing_intersection_table(inst);
    const std::uint64_t full = cde::full_client_mask(k);
    std::int64_t singleton_best = 0;
    for (int j = 0; j < k; ++j) {
      const std::uint64_t bit = std::uint64_t{1} << j;
      singleton_best = std::max(singleton_best, cut[bit] + cut[full ^ bit]);
    }
    if (beta < singleton_best) {
      FAIL("finding: chain bound " << beta << " below singleton bound "
                                   << singleton_best << " at seed " << seed);
    }
  }
}

TEST_CASE("growing a has-set never raises the split-rate minimum", "[bounds]") {
  for (int seed = 0; seed < 30; ++seed) {
    const int k = 2 + seed % 5;
    const int l = 5 + seed % 6;
    const Instance inst = cde::test::corpus_instance(k, l, seed);
    const Rational before = cde::min_sum_rate_ps(inst).value;

    cde::SplitMix64 rng(seed);
    const int client = static_cast<int>(rng.next_below(k));
    std::vector<cde::PacketSet> sets = inst.has_sets();
    const auto missing = inst.missing_set(client).to_indices();
    if (missing.empty()) continue;
    sets[client].set(missing[rng.next_below(missing.size())]);
    const Instance grown(l, std::move(sets));

    CHECK(cde::min_sum_rate_ps(grown).value <= before);
  }
}
