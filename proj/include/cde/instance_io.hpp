#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cde/instance.hpp"

namespace cde {

/// The file did not parse as an instance (bad JSON, wrong shape).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The file parsed but describes a broken system (uncovered packet, too few
/// clients, index outside the universe).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// On-disk instance format, 0-based packet indices, client order = list
/// order:
///
///   {"num_packets": 6, "has_sets": [[0,1,2,3,4],[0,1,5],[2,3,5]]}
///
/// A loaded instance must pass validate_instance.
inline Instance instance_from_json_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("num_packets") ||
      !doc.contains("has_sets")) {
    throw ParseError("expected an object with num_packets and has_sets");
  }
  if (!doc["num_packets"].is_number_integer()) {
    throw ParseError("num_packets must be an integer");
  }
  if (!doc["has_sets"].is_array()) {
    throw ParseError("has_sets must be an array of index arrays");
  }
  const std::int64_t num_packets = doc["num_packets"].get<std::int64_t>();
  if (num_packets < 1) {
    throw ValidationError("num_packets = " + std::to_string(num_packets) +
                          ": at least one packet is required");
  }
  if (num_packets > kMaxPackets) {
    throw ValidationError("num_packets = " + std::to_string(num_packets) +
                          " is above the supported maximum of " +
                          std::to_string(kMaxPackets));
  }
  std::vector<std::vector<int>> lists;
  for (const auto& entry : doc["has_sets"]) {
    if (!entry.is_array()) {
      throw ParseError("has_sets must be an array of index arrays");
    }
    std::vector<int> indices;
    for (const auto& v : entry) {
      if (!v.is_number_integer()) {
        throw ParseError("packet indices must be integers");
      }
      indices.push_back(v.get<int>());
    }
    lists.push_back(std::move(indices));
  }
  if (lists.empty()) {
    throw ValidationError("has_sets is empty: at least two clients are required");
  }
  if (lists.size() > static_cast<std::size_t>(kMaxClients)) {
    throw ValidationError("more than " + std::to_string(kMaxClients) +
                          " clients are not supported");
  }
  Instance inst = [&] {
    try {
      return Instance::from_index_lists(static_cast<int>(num_packets), lists);
    } catch (const std::out_of_range& e) {
      throw ValidationError(e.what());
    }
  }();
  if (const auto violation = validate_instance(inst)) {
    throw ValidationError(violation->message);
  }
  return inst;
}

inline std::string instance_to_json_text(const Instance& inst) {
  nlohmann::ordered_json doc;
  doc["num_packets"] = inst.num_packets();
  auto& sets = doc["has_sets"] = nlohmann::ordered_json::array();
  for (int j = 0; j < inst.num_clients(); ++j) {
    sets.push_back(inst.has_set(j).to_indices());
  }
  return doc.dump(2) + "\n";
}

inline Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open instance file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return instance_from_json_text(buffer.str());
}

inline void save_instance(const Instance& inst,
                          const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open file for writing: " + path.string());
  }
  out << instance_to_json_text(inst);
  if (!out) {
    throw std::runtime_error("failed writing instance file: " + path.string());
  }
}

}  // namespace cde
