#include <filesystem>
#include <fstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "cde/instance_io.hpp"
#include "test_support.hpp"

using cde::Instance;
using cde::instance_from_json_text;
using cde::instance_to_json_text;
using cde::ParseError;
using cde::ValidationError;

TEST_CASE("loading the README document", "[io]") {
  const std::string text =
      R"({"num_packets": 6, "has_sets": [[0,1,2,3,4],[0,1,5],[2,3,5]]})";
  CHECK(instance_from_json_text(text) == cde::test::readme_instance());
}

TEST_CASE("text round trip preserves instances", "[io]") {
  for (int seed = 0; seed < 30; ++seed) {
    const int k = 2 + seed % 6;
    const int l = 1 + seed % 12;
    const Instance inst = cde::test::corpus_instance(k, l, seed);
    CHECK(instance_from_json_text(instance_to_json_text(inst)) == inst);
  }
}

TEST_CASE("file round trip preserves instances", "[io]") {
  const auto dir = std::filesystem::temp_directory_path() / "cde_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "roundtrip.json";
  const Instance inst = cde::test::readme_instance();
  cde::save_instance(inst, path);
  CHECK(cde::load_instance(path) == inst);
  std::filesystem::remove_all(dir);
}

TEST_CASE("malformed documents raise parse errors", "[io]") {
  CHECK_THROWS_AS(instance_from_json_text("{oops"), ParseError);
  CHECK_THROWS_AS(instance_from_json_text("[]"), ParseError);
  CHECK_THROWS_AS(instance_from_json_text(R"({"num_packets": 6})"), ParseError);
  CHECK_THROWS_AS(instance_from_json_text(R"({"has_sets": [[0]]})"), ParseError);
  CHECK_THROWS_AS(
      instance_from_json_text(R"({"num_packets": "six", "has_sets": [[0]]})"),
      ParseError);
  CHECK_THROWS_AS(
      instance_from_json_text(R"({"num_packets": 2, "has_sets": [0, 1]})"),
      ParseError);
  CHECK_THROWS_AS(
      instance_from_json_text(R"({"num_packets": 2, "has_sets": [["a"],[0]]})"),
      ParseError);
  CHECK_THROWS_AS(cde::load_instance("/nonexistent/instance.json"), ParseError);
}

TEST_CASE("broken systems raise validation errors", "[io]") {
  // packet index outside the universe
  CHECK_THROWS_AS(
      instance_from_json_text(R"({"num_packets": 2, "has_sets": [[0,2],[1]]})"),
      ValidationError);
  // uncovered packet
  CHECK_THROWS_MATCHES(
      instance_from_json_text(R"({"num_packets": 2, "has_sets": [[0],[0]]})"),
      ValidationError,
      Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("p2")));
  // one client only
  CHECK_THROWS_AS(
      instance_from_json_text(R"({"num_packets": 2, "has_sets": [[0,1]]})"),
      ValidationError);
  // no clients at all
  CHECK_THROWS_AS(
      instance_from_json_text(R"({"num_packets": 2, "has_sets": []})"),
      ValidationError);
  // no packets
  CHECK_THROWS_AS(
      instance_from_json_text(R"({"num_packets": 0, "has_sets": [[],[]]})"),
      ValidationError);
}

TEST_CASE("saved documents look like the documented format", "[io]") {
  const std::string text = instance_to_json_text(cde::test::two_client_split());
  CHECK(text.find("\"num_packets\": 2") != std::string::npos);
  CHECK(text.find("\"has_sets\"") != std::string::npos);
  CHECK(text.back() == '\n');
}
