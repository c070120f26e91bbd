// Command-line surface for the cooperative data exchange rate library:
// exact minimum sum-rates, fast lower bounds, sum-rate feasibility,
// strategy listings and Monte-Carlo bound-tightness experiments.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cde/cde.hpp"

namespace {

constexpr int kExitParse = 2;       // unreadable or malformed instance file
constexpr int kExitValidation = 3;  // file loads but breaks the model
constexpr int kExitGuard = 4;       // refused by an enumeration guard
constexpr int kExitBadAlpha = 5;    // --alpha not an integer or p/q

struct BadAlpha : std::runtime_error {
  using std::runtime_error::runtime_error;
};

cde::Rational parse_alpha(const std::string& text) {
  const auto r = cde::Rational::parse(text);
  if (!r) {
    throw BadAlpha("cannot parse alpha '" + text +
                   "': expected an integer or p/q");
  }
  return *r;
}

struct Range {
  int lo = 0;
  int hi = 0;
};

bool parse_range(const std::string& text, Range& out) {
  const auto parse_int = [](const std::string& s, int& v) {
    if (s.empty()) return false;
    for (const char c : s) {
      if (c < '0' || c > '9') return false;
    }
    try {
      v = std::stoi(s);
    } catch (const std::exception&) {
      return false;
    }
    return true;
  };
  const std::size_t dots = text.find("..");
  if (dots == std::string::npos) {
    if (!parse_int(text, out.lo)) return false;
    out.hi = out.lo;
    return true;
  }
  return parse_int(text.substr(0, dots), out.lo) &&
         parse_int(text.substr(dots + 2), out.hi) && out.lo <= out.hi;
}

std::vector<int> range_values(const Range& r) {
  std::vector<int> out;
  for (int v = r.lo; v <= r.hi; ++v) out.push_back(v);
  return out;
}

cde::Mode parse_mode(const std::string& text) {
  return text == "ps" ? cde::Mode::kPs : cde::Mode::kNps;
}

int run_exact(const std::string& path, const std::string& mode, int max_k) {
  const cde::Instance inst = cde::load_instance(path);
  if (mode == "ps") {
    const auto r = cde::min_sum_rate_ps(inst, max_k);
    std::cout << "alpha_star = " << r.value.to_string() << "\n";
    std::cout << "witness_partition = " << r.witness.to_string() << "\n";
  } else {
    const auto r = cde::min_sum_rate_nps(inst, max_k);
    std::cout << "alpha_star = " << r.value << "\n";
    std::cout << "witness_partition = " << r.witness.to_string() << "\n";
  }
  return 0;
}

void print_chain_traces(const std::vector<cde::ChainTrace>& traces) {
  for (const cde::ChainTrace& t : traces) {
    std::cout << "chain " << t.start_client + 1 << ":";
    if (t.steps.empty()) {
      std::cout << " (no selections)";
    }
    for (const cde::ChainStep& s : t.steps) {
      std::cout << " select " << s.selected_client + 1 << " -> W="
                << s.chain_set.to_string() << " candidate=" << s.candidate
                << ";";
    }
    std::cout << " best=" << t.best_candidate << "\n";
  }
}

int run_bounds(const std::string& path, int max_k, bool trace) {
  const cde::Instance inst = cde::load_instance(path);
  const cde::BoundReport report = cde::compute_bound_report(inst, max_k);
  std::cout << "lb_roua = " << report.lb_max_missing << "\n";
  std::cout << "lb_sprint = " << report.lb_mean_missing << "\n";
  std::cout << "beta = " << report.lb_chain << "\n";
  if (report.alpha_star_nps) {
    const std::int64_t exact = *report.alpha_star_nps;
    std::cout << "alpha_star_nps = " << exact << "\n";
    std::cout << "err_roua = " << exact - report.lb_max_missing << "\n";
    std::cout << "err_sprint = " << exact - report.lb_mean_missing << "\n";
    std::cout << "err_beta = " << exact - report.lb_chain << "\n";
  } else {
    std::cerr << "note: alpha_star_nps omitted, " << inst.num_clients()
              << " clients exceed the exact-enumeration guard of " << max_k
              << "\n";
  }
  if (trace) {
    std::vector<cde::ChainTrace> traces;
    cde::chain_lower_bound(inst, &traces);
    print_chain_traces(traces);
  }
  return 0;
}

int run_feasible(const std::string& path, const std::string& alpha_text,
                 const std::string& mode, int max_k) {
  const cde::Rational alpha = parse_alpha(alpha_text);
  const cde::Instance inst = cde::load_instance(path);
  const cde::FeasibilityVerdict verdict =
      cde::sum_rate_feasible(inst, alpha, parse_mode(mode), max_k);
  if (verdict.feasible) {
    std::cout << "feasible\n";
  } else {
    std::cout << "infeasible\n";
    if (verdict.violated_partition) {
      std::cout << "violating_partition = "
                << verdict.violated_partition->to_string() << "\n";
    }
    if (!verdict.reason.empty()) {
      std::cout << "reason = " << verdict.reason << "\n";
    }
  }
  return 0;
}

int run_strategies(const std::string& path, const std::string& alpha_text) {
  const cde::Rational alpha = parse_alpha(alpha_text);
  if (!alpha.is_integer()) {
    throw BadAlpha("alpha must be an integer when listing whole-packet strategies");
  }
  const cde::Instance inst = cde::load_instance(path);
  for (const cde::Strategy& s : cde::feasible_strategies(inst, alpha.num())) {
    std::cout << s.to_string() << "\n";
  }
  return 0;
}

int run_experiment(const Range& k_range, const Range& l_range, int trials,
                   std::uint64_t seed, int threads, int max_k,
                   const std::string& out_path) {
  if (k_range.hi > 12) {
    std::cerr << "warning: exact enumeration above K=12 touches Bell-number "
                 "many partitions per trial; expect very long runtimes\n";
  }
  cde::TrialConfig cfg;
  cfg.k_values = range_values(k_range);
  cfg.l_values = range_values(l_range);
  cfg.trials_per_cell = trials;
  cfg.master_seed = seed;
  cfg.threads = threads;
  cfg.max_exact_clients = max_k;
  const std::vector<cde::CellResult> results = cde::run_trials(cfg);

  const std::vector<std::string> comments = {
      std::string("generator = ") + cde::kRngAlgorithmId,
      "master_seed = " + std::to_string(seed),
      "k = " + std::to_string(k_range.lo) + ".." + std::to_string(k_range.hi),
      "l = " + std::to_string(l_range.lo) + ".." + std::to_string(l_range.hi),
      "trials = " + std::to_string(trials),
  };
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file: " << out_path << "\n";
    return 1;
  }
  cde::write_csv(out, results, comments);

  std::int64_t max_err_beta = 0;
  for (const cde::CellResult& r : results) {
    max_err_beta = std::max(max_err_beta, r.err_chain_max);
  }
  std::cout << "cells = " << results.size() << "\n";
  std::cout << "trials_per_cell = " << trials << "\n";
  std::cout << "max_err_beta = " << max_err_beta << "\n";
  std::cout << "csv = " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cooperative data exchange minimum sum-rate toolkit"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string mode = "nps";
  std::string alpha_text;
  std::string k_text = "3..8";
  std::string l_text = "6..30";
  std::string out_path;
  int trials = 200;
  std::uint64_t seed = 1;
  int threads = 1;
  int max_exact_k = cde::kDefaultMaxExactClients;
  int max_exact_k_experiment = 15;
  bool trace = false;

  CLI::App* exact = app.add_subcommand(
      "exact", "exact minimum sum-rate by partition enumeration");
  exact->add_option("--instance", instance_path, "instance JSON file")
      ->required();
  exact->add_option("--mode", mode, "ps (splitting allowed) or nps")
      ->check(CLI::IsMember({"ps", "nps"}));
  exact->add_option("--max-exact-k", max_exact_k,
                    "largest client count the enumeration accepts");

  CLI::App* bounds = app.add_subcommand(
      "bounds", "lower bounds, plus the exact value when within the guard");
  bounds->add_option("--instance", instance_path, "instance JSON file")
      ->required();
  bounds->add_option("--max-exact-k", max_exact_k,
                     "largest client count the exact part accepts");
  bounds->add_flag("--trace", trace, "dump the greedy chains behind beta");

  CLI::App* feasible = app.add_subcommand(
      "feasible", "is there an achieving strategy with this sum-rate?");
  feasible->add_option("--instance", instance_path, "instance JSON file")
      ->required();
  feasible->add_option("--alpha", alpha_text, "sum-rate, integer or p/q")
      ->required();
  feasible->add_option("--mode", mode, "ps or nps")
      ->check(CLI::IsMember({"ps", "nps"}));
  feasible->add_option("--max-exact-k", max_exact_k,
                       "largest client count the enumeration accepts");

  CLI::App* strategies = app.add_subcommand(
      "strategies", "all achieving whole-packet strategies at a sum-rate");
  strategies->add_option("--instance", instance_path, "instance JSON file")
      ->required();
  strategies->add_option("--alpha", alpha_text, "integral sum-rate")
      ->required();

  CLI::App* experiment = app.add_subcommand(
      "experiment", "Monte-Carlo bound-tightness grid, CSV output");
  experiment->add_option("--k", k_text, "client grid, A..B or a single value");
  experiment->add_option("--l", l_text, "packet grid, A..B or a single value");
  experiment->add_option("--trials", trials, "trials per grid cell")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--seed", seed, "master seed");
  experiment->add_option("--threads", threads, "worker threads")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--max-exact-k", max_exact_k_experiment,
                         "largest client count the exact part accepts");
  experiment->add_option("--out", out_path, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (exact->parsed()) return run_exact(instance_path, mode, max_exact_k);
    if (bounds->parsed()) return run_bounds(instance_path, max_exact_k, trace);
    if (feasible->parsed()) {
      return run_feasible(instance_path, alpha_text, mode, max_exact_k);
    }
    if (strategies->parsed()) return run_strategies(instance_path, alpha_text);
    if (experiment->parsed()) {
      Range k_range, l_range;
      if (!parse_range(k_text, k_range)) {
        std::cerr << "error: cannot parse --k '" << k_text << "'\n";
        return kExitParse;
      }
      if (!parse_range(l_text, l_range)) {
        std::cerr << "error: cannot parse --l '" << l_text << "'\n";
        return kExitParse;
      }
      return run_experiment(k_range, l_range, trials, seed, threads,
                            max_exact_k_experiment, out_path);
    }
  } catch (const BadAlpha& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadAlpha;
  } catch (const cde::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const cde::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const cde::GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
