#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cde/bounds.hpp"
#include "cde/feasibility.hpp"
#include "cde/guards.hpp"
#include "cde/instance.hpp"
#include "cde/rng.hpp"

namespace cde {

/// Grid and sampling plan for a bound-tightness experiment.
struct TrialConfig {
  enum class ExactMethod { kPartitionEnumeration, kBruteForce };

  std::vector<int> k_values;
  std::vector<int> l_values;
  int trials_per_cell = 200;
  std::uint64_t master_seed = 0;
  ExactMethod exact_method = ExactMethod::kPartitionEnumeration;
  int max_exact_clients = 15;
  int threads = 1;

  /// Test hook: replaces the random instance source when set. The hook sees
  /// the same per-trial generator a random draw would.
  std::function<Instance(int num_clients, int num_packets, SplitMix64&)>
      instance_source;
};

/// Accumulated outcome of one (K, L) cell. Errors are |bound - exact| per
/// trial; integer totals are kept so averages can be emitted exactly.
struct CellResult {
  int num_clients = 0;
  int num_packets = 0;
  int trials = 0;
  std::int64_t err_max_missing_total = 0;
  std::int64_t err_mean_missing_total = 0;
  std::int64_t err_chain_total = 0;
  std::int64_t err_chain_max = 0;
  std::int64_t alpha_star_total = 0;

  double avg_err_max_missing() const { return mean(err_max_missing_total); }
  double avg_err_mean_missing() const { return mean(err_mean_missing_total); }
  double avg_err_chain() const { return mean(err_chain_total); }
  double mean_alpha_star() const { return mean(alpha_star_total); }

 private:
  double mean(std::int64_t total) const {
    return trials > 0 ? static_cast<double>(total) / trials : 0.0;
  }
};

/// Draws has-sets with every membership an independent fair coin, then
/// assigns each packet nobody holds to one uniformly random client, so the
/// result always covers the universe. Draw order is fixed (membership bits
/// client-major then packet-minor, repair draws in ascending packet order),
/// so the instance is a pure function of the generator state.
inline Instance random_instance(int num_clients, int num_packets,
                                SplitMix64& rng) {
  std::vector<PacketSet> sets(num_clients, PacketSet(num_packets));
  for (int j = 0; j < num_clients; ++j) {
    for (int p = 0; p < num_packets; ++p) {
      if (rng.next_bool()) sets[j].set(p);
    }
  }
  PacketSet covered(num_packets);
  for (const PacketSet& s : sets) covered |= s;
  for (int p = 0; p < num_packets; ++p) {
    if (!covered.test(p)) {
      sets[rng.next_below(static_cast<std::uint64_t>(num_clients))].set(p);
    }
  }
  return Instance(num_packets, std::move(sets));
}

namespace detail {

struct CellAccum {
  std::int64_t err_max_missing = 0;
  std::int64_t err_mean_missing = 0;
  std::int64_t err_chain = 0;
  std::int64_t err_chain_max = 0;
  std::int64_t alpha_star = 0;
  std::string violation;  // first hard invariant breach, empty if none

  void merge(const CellAccum& o) {
    err_max_missing += o.err_max_missing;
    err_mean_missing += o.err_mean_missing;
    err_chain += o.err_chain;
    err_chain_max = std::max(err_chain_max, o.err_chain_max);
    alpha_star += o.alpha_star;
    if (violation.empty()) violation = o.violation;
  }
};

}  // namespace detail

/// Runs every (K, L) cell of the grid. Per trial: draw an instance, compute
/// the exact whole-packet minimum sum-rate and the three lower bounds, and
/// accumulate absolute errors. Each trial seeds its own generator from
/// (master seed, K, L, trial index), so results are identical whatever the
/// execution order or thread count. On cells small enough for the brute-force
/// oracle, one trial in a hundred is cross-checked against it. Any bound
/// exceeding the exact value aborts the whole run with an error; it would
/// mean the math is wrong, not the sample.
inline std::vector<CellResult> run_trials(const TrialConfig& cfg) {
  if (cfg.trials_per_cell < 1) {
    throw std::invalid_argument("run_trials: trials_per_cell must be positive");
  }
  if (cfg.threads < 1) {
    throw std::invalid_argument("run_trials: threads must be positive");
  }
  if (cfg.k_values.empty() || cfg.l_values.empty()) {
    return {};
  }
  for (const int k : cfg.k_values) {
    if (k < 2) throw std::invalid_argument("run_trials: every K must be at least 2");
    if (k > cfg.max_exact_clients) {
      throw GuardError("experiment cell K=" + std::to_string(k) +
                       " is above the exact guard of " +
                       std::to_string(cfg.max_exact_clients));
    }
    if (cfg.exact_method == TrialConfig::ExactMethod::kBruteForce &&
        k > kDefaultMaxBruteForceClients) {
      throw GuardError("experiment cell K=" + std::to_string(k) +
                       " is above the brute-force guard of " +
                       std::to_string(kDefaultMaxBruteForceClients));
    }
  }
  for (const int l : cfg.l_values) {
    if (l < 1) throw std::invalid_argument("run_trials: every L must be at least 1");
  }

  std::vector<std::pair<int, int>> cells;
  for (const int k : cfg.k_values) {
    for (const int l : cfg.l_values) cells.emplace_back(k, l);
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

  std::vector<CellResult> results;
  results.reserve(cells.size());
  for (const auto& [k, l] : cells) {
    const int workers = std::min(cfg.threads, cfg.trials_per_cell);
    std::vector<detail::CellAccum> partials(workers);

    const auto work = [&, k = k, l = l](int worker_index) {
      detail::CellAccum& acc = partials[worker_index];
      for (int trial = worker_index; trial < cfg.trials_per_cell;
           trial += workers) {
        SplitMix64 rng(derive_seed(cfg.master_seed,
                                   {static_cast<std::uint64_t>(k),
                                    static_cast<std::uint64_t>(l),
                                    static_cast<std::uint64_t>(trial)}));
        const Instance inst = cfg.instance_source
                                  ? cfg.instance_source(k, l, rng)
                                  : random_instance(k, l, rng);
        std::int64_t exact = 0;
        if (cfg.exact_method == TrialConfig::ExactMethod::kBruteForce) {
          exact = brute_force_min_sum_rate(inst).min_sum_rate;
        } else {
          exact = min_sum_rate_nps(inst, cfg.max_exact_clients).value;
          if (k <= kDefaultMaxBruteForceClients && trial % 100 == 0) {
            const std::int64_t oracle = brute_force_min_sum_rate(inst).min_sum_rate;
            if (oracle != exact && acc.violation.empty()) {
              acc.violation = "exact/oracle mismatch at K=" + std::to_string(k) +
                              " L=" + std::to_string(l) +
                              " trial=" + std::to_string(trial);
            }
          }
        }
        const std::int64_t lb_max = max_missing_lower_bound(inst);
        const std::int64_t lb_mean = mean_missing_lower_bound(inst);
        const std::int64_t lb_chain = chain_lower_bound(inst);
        if ((lb_chain > exact || lb_max > exact || lb_mean > lb_chain) &&
            acc.violation.empty()) {
          acc.violation = "bound sandwich violated at K=" + std::to_string(k) +
                          " L=" + std::to_string(l) +
                          " trial=" + std::to_string(trial);
        }
        acc.err_max_missing += std::abs(exact - lb_max);
        acc.err_mean_missing += std::abs(exact - lb_mean);
        const std::int64_t err_chain = std::abs(exact - lb_chain);
        acc.err_chain += err_chain;
        acc.err_chain_max = std::max(acc.err_chain_max, err_chain);
        acc.alpha_star += exact;
      }
    };

    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (int t = 0; t < workers; ++t) pool.emplace_back(work, t);
      for (std::thread& t : pool) t.join();
    }

    detail::CellAccum total;
    for (const detail::CellAccum& p : partials) total.merge(p);
    if (!total.violation.empty()) {
      throw std::runtime_error(total.violation);
    }
    CellResult r;
    r.num_clients = k;
    r.num_packets = l;
    r.trials = cfg.trials_per_cell;
    r.err_max_missing_total = total.err_max_missing;
    r.err_mean_missing_total = total.err_mean_missing;
    r.err_chain_total = total.err_chain;
    r.err_chain_max = total.err_chain_max;
    r.alpha_star_total = total.alpha_star;
    results.push_back(r);
  }
  return results;
}

namespace detail {

/// total/trials rounded half up at the sixth fractional digit, rendered in
/// pure integer math so output bytes are platform-independent.
inline std::string fixed6(std::int64_t total, std::int64_t trials) {
  const std::int64_t scaled = (total * 2'000'000 + trials) / (2 * trials);
  std::string frac = std::to_string(scaled % 1'000'000);
  frac.insert(frac.begin(), 6 - frac.size(), '0');
  return std::to_string(scaled / 1'000'000) + "." + frac;
}

}  // namespace detail

/// Renders results as CSV: optional "# " comment lines, the fixed header,
/// then one row per cell sorted by (K, L), decimals with six fractional
/// digits, and a trailing newline. Bytes are a pure function of the inputs.
inline std::string render_csv(std::span<const CellResult> results,
                              std::span<const std::string> comment_lines = {}) {
  std::vector<const CellResult*> rows;
  rows.reserve(results.size());
  for (const CellResult& r : results) rows.push_back(&r);
  std::sort(rows.begin(), rows.end(), [](const CellResult* a, const CellResult* b) {
    return std::pair(a->num_clients, a->num_packets) <
           std::pair(b->num_clients, b->num_packets);
  });

  std::string out;
  for (const std::string& line : comment_lines) {
    out += "# ";
    out += line;
    out += '\n';
  }
  out +=
      "K,L,trials,avg_err_roua,avg_err_sprint,avg_err_beta,max_err_beta,"
      "mean_alpha_star\n";
  for (const CellResult* r : rows) {
    out += std::to_string(r->num_clients);
    out += ',';
    out += std::to_string(r->num_packets);
    out += ',';
    out += std::to_string(r->trials);
    out += ',';
    out += detail::fixed6(r->err_max_missing_total, r->trials);
    out += ',';
    out += detail::fixed6(r->err_mean_missing_total, r->trials);
    out += ',';
    out += detail::fixed6(r->err_chain_total, r->trials);
    out += ',';
    out += std::to_string(r->err_chain_max);
    out += ',';
    out += detail::fixed6(r->alpha_star_total, r->trials);
    out += '\n';
  }
  return out;
}

/// Raised when a sink stops accepting bytes mid-write.
struct CsvWriteError : std::runtime_error {
  CsvWriteError(std::size_t position, const std::string& what)
      : std::runtime_error(what), bytes_written(position) {}
  std::size_t bytes_written;
};

/// Streams the rendered CSV line by line; on failure reports how many bytes
/// made it out.
inline void write_csv(std::ostream& sink, std::span<const CellResult> results,
                      std::span<const std::string> comment_lines = {}) {
  const std::string text = render_csv(results, comment_lines);
  std::size_t written = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    end = end == std::string::npos ? text.size() : end + 1;
    sink.write(text.data() + start, static_cast<std::streamsize>(end - start));
    if (!sink) {
      throw CsvWriteError(written, "CSV write failed after " +
                                       std::to_string(written) + " bytes");
    }
    written += end - start;
    start = end;
  }
  sink.flush();
  if (!sink) {
    throw CsvWriteError(written, "CSV flush failed after " +
                                     std::to_string(written) + " bytes");
  }
}

}  // namespace cde
