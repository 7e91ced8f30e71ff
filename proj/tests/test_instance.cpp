// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "brute.hpp"
#include "matsparse/errors.hpp"
#include "matsparse/instance.hpp"

using namespace matsparse;
using matsparse::testing::set_of;

namespace {

Json uniform_pair(int n, int r1, int r2) {
  return Json{{"n", n},
              {"matroid1", {{"variant", "uniform"}, {"r", r1}}},
              {"matroid2", {{"variant", "uniform"}, {"r", r2}}}};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("loading keeps the descriptor and equalizes ranks") {
  Instance inst = load_instance(uniform_pair(6, 4, 2));
  CHECK(inst.n == 6);
  CHECK(inst.common_rank == 2);
  CHECK(inst.m1->family().starts_with("truncated"));
  CHECK(inst.m2->family().starts_with("uniform"));
  CHECK(inst.view1().full_rank() == 2);
  CHECK(inst.view2().full_rank() == 2);
  CHECK(inst.source == uniform_pair(6, 4, 2));

  Instance even = load_instance(uniform_pair(6, 3, 3));
  CHECK(even.m1->family().starts_with("uniform"));
  CHECK(even.m2->family().starts_with("uniform"));
  CHECK(even.common_rank == 3);
}

TEST_CASE("loading rejects loops in either matroid") {
  Json base = uniform_pair(3, 2, 2);

  Json zero_rank = base;
  zero_rank["matroid1"] = {{"variant", "uniform"}, {"r", 0}};
  CHECK_THROWS_WITH_AS(load_instance(zero_rank),
                       doctest::Contains("has a loop"), ValidationError);

  Json dead_block = base;
  dead_block["matroid2"] = {{"variant", "partition"},
                            {"blocks", Json::array({{0, 1}, {2}})},
                            {"capacities", {0, 1}}};
  CHECK_THROWS_WITH_AS(load_instance(dead_block),
                       doctest::Contains("has a loop"), ValidationError);

  Json dead_node = base;
  dead_node["matroid1"] = {
      {"variant", "laminar"},
      {"nodes", Json::array({{{"members", {1}}, {"capacity", 0}}})}};
  CHECK_THROWS_WITH_AS(load_instance(dead_node),
                       doctest::Contains("has a loop"), ValidationError);

  Json unmatched = base;
  unmatched["matroid2"] = {{"variant", "transversal"},
                           {"right_count", 2},
                           {"adjacency", Json::array({{0}, Json::array(), {1}})}};
  CHECK_THROWS_WITH_AS(load_instance(unmatched),
                       doctest::Contains("has a loop"), ValidationError);

  // Self-loop edges never even construct.
  Json self_loop = base;
  self_loop["matroid1"] = {{"variant", "graphic"},
                           {"vertex_count", 3},
                           {"edges", Json::array({{0, 1}, {1, 2}, {2, 2}})}};
  CHECK_THROWS_AS(load_instance(self_loop), ValidationError);
}

TEST_CASE("loading rejects malformed documents") {
  CHECK_THROWS_AS(load_instance(Json{{"n", 3}}), ValidationError);
  CHECK_THROWS_AS(load_instance(uniform_pair(0, 1, 1)), ValidationError);
  CHECK_THROWS_AS(load_instance(uniform_pair(-2, 1, 1)), ValidationError);

  Json bad = uniform_pair(3, 2, 2);
  bad.erase("matroid2");
  CHECK_THROWS_AS(load_instance(bad), ValidationError);

  Json unknown = uniform_pair(3, 2, 2);
  unknown["matroid1"] = {{"variant", "binary"}, {"r", 2}};
  CHECK_THROWS_WITH_AS(load_instance(unknown),
                       doctest::Contains("unknown variant"), ValidationError);

  Json uncovered = uniform_pair(3, 2, 2);
  uncovered["matroid1"] = {{"variant", "partition"},
                           {"blocks", Json::array({{0, 1}})},
                           {"capacities", {1}}};
  CHECK_THROWS_AS(load_instance(uncovered), ValidationError);

  Json crossing = uniform_pair(3, 2, 2);
  crossing["matroid1"] = {
      {"variant", "laminar"},
      {"nodes", Json::array({{{"members", {0, 1}}, {"capacity", 1}},
                             {{"members", {1, 2}}, {"capacity", 1}}})}};
  CHECK_THROWS_AS(load_instance(crossing), ValidationError);

  Json stray = uniform_pair(3, 2, 2);
  stray["matroid1"] = {{"variant", "uniform"}};
  CHECK_THROWS_WITH_AS(load_instance(stray),
                       doctest::Contains("missing field"), ValidationError);
}

TEST_CASE("duplicate laminar constraints keep the tighter capacity") {
  Json doc = uniform_pair(3, 2, 2);
  doc["matroid1"] = {
      {"variant", "laminar"},
      {"nodes", Json::array({{{"members", {0, 1}}, {"capacity", 2}},
                             {{"members", {0, 1}}, {"capacity", 1}}})}};
  Instance inst = load_instance(doc);
  CHECK(inst.m1->rank(ElementSet::of(3, {0, 1})) == 1);
  CHECK(inst.m1->rank(ElementSet::of(3, {0, 2})) == 2);
}

TEST_CASE("descriptor serialization round trips rank for all") {
  std::vector<Json> descriptors;
  descriptors.push_back({{"variant", "uniform"}, {"r", 2}});
  descriptors.push_back({{"variant", "partition"},
                         {"blocks", Json::array({{0, 3}, {1, 4}, {2, 5}})},
                         {"capacities", {1, 1, 2}}});
  descriptors.push_back(
      {{"variant", "laminar"},
       {"nodes", Json::array({{{"members", {0, 1, 2}}, {"capacity", 2}},
                              {{"members", {0, 1}}, {"capacity", 1}}})}});
  descriptors.push_back({{"variant", "graphic"},
                         {"vertex_count", 4},
                         {"edges", Json::array({{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}})}});
  descriptors.push_back(
      {{"variant", "transversal"},
       {"right_count", 3},
       {"adjacency", Json::array({{0}, {0, 1}, {1}, {1, 2}, {2}, {0, 2}})}});
  descriptors.push_back(
      {{"variant", "truncated"},
       {"r", 1},
       {"inner", {{"variant", "uniform"}, {"r", 2}}}});

  for (const Json& desc : descriptors) {
    MatroidPtr first = matroid_from_json(desc, 6);
    MatroidPtr second = matroid_from_json(matroid_to_json(*first), 6);
    CHECK(second->family() == first->family());
    for (std::uint32_t mask = 0; mask < 64u; ++mask) {
      ElementSet x = set_of(mask, 6);
      CHECK(first->rank(x) == second->rank(x));
    }
  }
}

TEST_CASE("instance files round trip byte for byte") {
  Json doc = uniform_pair(4, 2, 3);
  doc["metadata"] = {{"family", "demo"}, {"seed", 7}};
  auto path = temp_file("matsparse_roundtrip_test.json");
  write_json_file(path.string(), doc);

  std::ifstream in(path);
  std::stringstream raw;
  raw << in.rdbuf();
  CHECK(raw.str() == doc.dump(2) + "\n");

  CHECK(parse_json_file(path.string()) == doc);
  Instance inst = load_instance_file(path.string());
  CHECK(inst.n == 4);
  CHECK(inst.common_rank == 2);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(load_instance_file("/nonexistent/matsparse.json"),
                  ValidationError);
  auto junk = temp_file("matsparse_junk_test.json");
  std::ofstream(junk) << "{ not json";
  CHECK_THROWS_AS(parse_json_file(junk.string()), ValidationError);
  std::filesystem::remove(junk);
}
