#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cde/client_subset.hpp"
#include "cde/packet_set.hpp"

namespace cde {

/// A data-exchange system: K clients, L packets, and one has-set per client.
/// Immutable after construction and safe to share across threads; the
/// per-client missing sets (complements) are precomputed because they drive
/// every cut evaluation.
///
/// Construction only enforces structural sanity (client cap, matching
/// widths); the model assumptions live in validate_instance so that callers
/// can load a broken file and get a readable report instead of an abort.
class Instance {
 public:
  Instance(int num_packets, std::vector<PacketSet> has_sets)
      : num_packets_(num_packets), has_sets_(std::move(has_sets)) {
    if (num_packets_ < 0 || num_packets_ > kMaxPackets) {
      throw std::invalid_argument("Instance: packet count out of range");
    }
    if (has_sets_.size() > static_cast<std::size_t>(kMaxClients)) {
      throw std::invalid_argument("Instance: more than 63 clients");
    }
    for (const PacketSet& h : has_sets_) {
      if (h.width() != num_packets_) {
        throw std::invalid_argument("Instance: has-set width mismatch");
      }
    }
    missing_sets_.reserve(has_sets_.size());
    for (const PacketSet& h : has_sets_) {
      missing_sets_.push_back(h.complement());
    }
  }

  /// Builds from 0-based packet index lists; rejects out-of-range indices.
  static Instance from_index_lists(int num_packets,
                                   const std::vector<std::vector<int>>& lists) {
    std::vector<PacketSet> sets;
    sets.reserve(lists.size());
    for (std::size_t j = 0; j < lists.size(); ++j) {
      PacketSet s(num_packets);
      for (const int p : lists[j]) {
        if (p < 0 || p >= num_packets) {
          throw std::out_of_range("packet index " + std::to_string(p) +
                                  " outside [0, " + std::to_string(num_packets) +
                                  ") in has-set of client " +
                                  std::to_string(j + 1));
        }
        s.set(p);
      }
      sets.push_back(std::move(s));
    }
    return Instance(num_packets, std::move(sets));
  }

  /// Every client already holds every packet; the degenerate zero-rate system.
  static Instance all_full(int num_clients, int num_packets) {
    return Instance(num_packets, std::vector<PacketSet>(
                                     num_clients, PacketSet::full(num_packets)));
  }

  int num_clients() const { return static_cast<int>(has_sets_.size()); }
  int num_packets() const { return num_packets_; }
  const PacketSet& has_set(int j) const { return has_sets_[j]; }
  const PacketSet& missing_set(int j) const { return missing_sets_[j]; }
  const std::vector<PacketSet>& has_sets() const { return has_sets_; }
  ClientSubset clients() const { return {full_client_mask(num_clients())}; }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.num_packets_ == b.num_packets_ && a.has_sets_ == b.has_sets_;
  }

 private:
  int num_packets_;
  std::vector<PacketSet> has_sets_;
  std::vector<PacketSet> missing_sets_;
};

/// Names the first violated model assumption.
struct Violation {
  std::string message;
};

/// Checks the model assumptions: at least two clients, at least one packet,
/// has-sets inside the packet universe, and every packet held by somebody.
/// Empty has-sets and full has-sets are both fine as long as the union covers
/// the universe. Returns nullopt when the instance is a valid system.
inline std::optional<Violation> validate_instance(const Instance& inst) {
  if (inst.num_clients() < 2) {
    return Violation{"num_clients = " + std::to_string(inst.num_clients()) +
                     ": at least two clients are required"};
  }
  if (inst.num_packets() < 1) {
    return Violation{"num_packets = " + std::to_string(inst.num_packets()) +
                     ": at least one packet is required"};
  }
  PacketSet covered(inst.num_packets());
  for (int j = 0; j < inst.num_clients(); ++j) {
    if (inst.has_set(j).width() != inst.num_packets()) {
      return Violation{"has-set of client " + std::to_string(j + 1) +
                       " is not a subset of the packet universe"};
    }
    covered |= inst.has_set(j);
  }
  if (!covered.all()) {
    for (int p = 0; p < inst.num_packets(); ++p) {
      if (!covered.test(p)) {
        return Violation{"packet p" + std::to_string(p + 1) +
                         " held by no client"};
      }
    }
  }
  return std::nullopt;
}

}  // namespace cde
