#pragma once

#include <cstdint>

#include "cde/cde.hpp"

namespace cde::test {

/// The three-client, six-packet system used as the running example in the
/// README: client 1 holds p1..p5, client 2 holds p1,p2,p6, client 3 holds
/// p3,p4,p6.
inline Instance readme_instance() {
  return Instance::from_index_lists(6, {{0, 1, 2, 3, 4}, {0, 1, 5}, {2, 3, 5}});
}

/// Two clients holding one distinct packet each; both must transmit.
inline Instance two_client_split() {
  return Instance::from_index_lists(2, {{0}, {1}});
}

/// Three clients over two packets where one client already holds everything.
inline Instance covered_pair() {
  return Instance::from_index_lists(2, {{0}, {1}, {0, 1}});
}

/// Deterministic random corpus: instance #seed_index of a given shape. Every
/// draw is valid by construction (the generator repairs coverage).
inline Instance corpus_instance(int num_clients, int num_packets,
                                std::uint64_t seed_index) {
  SplitMix64 rng(derive_seed(0xC0FFEEULL,
                             {static_cast<std::uint64_t>(num_clients),
                              static_cast<std::uint64_t>(num_packets),
                              seed_index}));
  return random_instance(num_clients, num_packets, rng);
}

}  // namespace cde::test
