#pragma once

#include <stdexcept>
#include <string>

namespace cde {

/// Default ceiling for computations that enumerate every set partition.
/// Bell(14) is about 1.9e8; past that the enumeration stops being a desk job.
inline constexpr int kDefaultMaxExactClients = 14;

/// Brute-force strategy search is tractable only for a handful of clients.
inline constexpr int kDefaultMaxBruteForceClients = 6;

/// Thrown when an operation would enumerate far beyond its guard.
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require_enumeration_guard(int num_clients, int max_clients) {
  if (num_clients > max_clients) {
    throw GuardError("instance has " + std::to_string(num_clients) +
                     " clients, above the exact-enumeration guard of " +
                     std::to_string(max_clients) + "; use the bounds instead");
  }
}

}  // namespace cde
