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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "matsparse/errors.hpp"
#include "matsparse/harness.hpp"
#include "matsparse/instance.hpp"
#include "matsparse/intersection.hpp"

using namespace matsparse;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::vector<Json> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<Json> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(Json::parse(line));
  }
  return lines;
}

}  // namespace

TEST_CASE("generation is deterministic per spec and labeled") {
  GenSpec spec{.family = "laminar", .n = 14, .seed = 9};
  GenResult a = gen_instance(spec);
  GenResult b = gen_instance(spec);
  CHECK(a.document == b.document);
  CHECK(a.document["metadata"]["family"] == "laminar");
  CHECK(a.document["metadata"]["seed"] == 9);
  CHECK(a.instance.n == 14);

  GenSpec other = spec;
  other.seed = 10;
  CHECK(gen_instance(other).document != a.document);
}

TEST_CASE("every family generates loadable instances") {
  const char* families[] = {"partition-bipartite", "laminar", "graphic",
                            "transversal", "mixed"};
  for (const char* family : families) {
    GenSpec spec;
    spec.family = family;
    spec.n = 12;
    spec.param = std::string(family) == "graphic" ? 5 : 0;
    spec.seed = 3;
    GenResult gen = gen_instance(spec);
    CHECK(gen.instance.n == 12);
    CHECK(load_instance(gen.document).n == 12);
    CHECK(gen.document["metadata"]["family"] == family);
  }
  // The figure fixture pins its own size.
  GenResult fig = gen_instance({.family = "fig1"});
  CHECK(fig.instance.n == 17);
  CHECK(fig.certified_mu == 4);
}

TEST_CASE("certified intersection sizes match the exact solver") {
  GenResult regular = gen_instance(
      {.family = "partition-bipartite", .n = 8, .param = 2, .seed = 21});
  REQUIRE(regular.certified_mu.has_value());
  CHECK(*regular.certified_mu ==
        max_common_independent(regular.instance.view1(),
                               regular.instance.view2())
            .size());

  GenResult slack = gen_instance({.family = "partition-bipartite",
                                  .n = 12,
                                  .param = 1,
                                  .slack = true,
                                  .seed = 5});
  REQUIRE(slack.certified_mu.has_value());
  CHECK(*slack.certified_mu == 2);
  CHECK(*slack.certified_mu ==
        max_common_independent(slack.instance.view1(),
                               slack.instance.view2())
            .size());

  GenResult fig = gen_instance({.family = "fig1"});
  CHECK(*fig.certified_mu ==
        max_common_independent(fig.instance.view1(), fig.instance.view2())
            .size());

  CHECK(certified_mu_of(regular.document) == regular.certified_mu);
  CHECK(certified_mu_of(Json{{"n", 1}}) == std::nullopt);
}

TEST_CASE("bipartite matching sizes on hand built graphs") {
  using E = std::vector<std::pair<int, int>>;
  CHECK(bipartite_matching_size(2, 2, E{{0, 0}, {0, 1}, {1, 1}}) == 2);
  CHECK(bipartite_matching_size(2, 2, E{{0, 0}, {1, 0}}) == 1);
  CHECK(bipartite_matching_size(3, 3, E{}) == 0);
  // A three to three crown missing one side keeps a perfect matching.
  CHECK(bipartite_matching_size(
            3, 3, E{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}) == 3);
  // Hub contention: every left vertex only reaches right zero.
  CHECK(bipartite_matching_size(3, 2, E{{0, 0}, {1, 0}, {2, 0}}) == 1);
}

TEST_CASE("infeasible generator specs are rejected") {
  CHECK_THROWS_AS(gen_instance({.family = "laminar", .n = 0}),
                  ValidationError);
  CHECK_THROWS_AS(
      gen_instance({.family = "partition-bipartite", .n = 7, .param = 2}),
      ValidationError);
  CHECK_THROWS_AS(gen_instance({.family = "partition-bipartite",
                                .n = 5,
                                .param = 1,
                                .slack = true}),
                  ValidationError);
  CHECK_THROWS_AS(gen_instance({.family = "graphic", .n = 6, .param = 1}),
                  ValidationError);
  CHECK_THROWS_AS(gen_instance({.family = "nonesuch", .n = 6}),
                  ValidationError);
}

TEST_CASE("oracle scopes pass on a mixed instance") {
  GenResult gen = gen_instance({.family = "mixed", .n = 10, .seed = 123});
  OracleOptions opts;
  opts.trials = 40;
  for (const std::string& scope : oracle_scopes()) {
    OracleReport rep = oracle_check(gen.instance, scope, opts);
    CHECK(rep.scope == scope);
    CHECK(rep.refusal.empty());
    CHECK(rep.pass);
    CHECK(rep.failures.empty());
    CHECK(rep.checks > 0);
  }
  CHECK_THROWS_AS(oracle_check(gen.instance, "bogus", opts), ValidationError);
}

TEST_CASE("oracle gates refuse oversized instances with a reason") {
  GenResult fig = gen_instance({.family = "fig1"});
  OracleOptions opts;
  opts.trials = 10;
  OracleReport dual = oracle_check(fig.instance, "dual", opts);
  CHECK_FALSE(dual.refusal.empty());
  CHECK_FALSE(dual.pass);

  OracleReport ranks = oracle_check(fig.instance, "ranks", opts);
  CHECK(ranks.pass);
  CHECK(ranks.refusal.empty());

  GenResult big = gen_instance({.family = "laminar", .n = 24, .seed = 2});
  OracleReport densest = oracle_check(big.instance, "densest", opts);
  CHECK_FALSE(densest.refusal.empty());
}

TEST_CASE("worker counts come from the environment when sane") {
  unsetenv("MATSPARSE_WORKERS");
  int fallback = worker_count_from_env();
  CHECK(fallback >= 1);
  CHECK(fallback <= 8);
  setenv("MATSPARSE_WORKERS", "3", 1);
  CHECK(worker_count_from_env() == 3);
  setenv("MATSPARSE_WORKERS", "0", 1);
  CHECK(worker_count_from_env() == fallback);
  setenv("MATSPARSE_WORKERS", "junk", 1);
  CHECK(worker_count_from_env() == fallback);
  setenv("MATSPARSE_WORKERS", "257", 1);
  CHECK(worker_count_from_env() == fallback);
  setenv("MATSPARSE_WORKERS", "1", 1);
  CHECK(worker_count_from_env() == 1);
  unsetenv("MATSPARSE_WORKERS");
}

TEST_CASE("plans parse and validate") {
  Json plan_json{
      {"instances",
       Json::array(
           {{{"name", "bip"},
             {"gen",
              {{"family", "partition-bipartite"}, {"n", 8}, {"param", 2}}}},
            {{"path", "/tmp/foo.json"}}})},
      {"epsilons", Json::array({"1/2", 1})},
      {"seeds", {1, 4}},
      {"algorithms", {"exact", "greedy", "dcs"}},
      {"output", "/tmp/out.jsonl"}};
  ExperimentPlan plan = plan_from_json(plan_json);
  CHECK(plan.sources.size() == 2);
  CHECK(plan.sources[0].name == "bip");
  CHECK(plan.sources[0].gen.has_value());
  CHECK(plan.sources[1].path == "/tmp/foo.json");
  CHECK(plan.epsilons == std::vector<Rat>{Rat(1, 2), Rat(1)});
  CHECK(plan.seed_lo == 1);
  CHECK(plan.seed_hi == 4);
  CHECK(plan.algorithms.size() == 3);
  CHECK(plan.output_path == "/tmp/out.jsonl");
  CHECK_FALSE(plan.enforce_cap);
  CHECK_FALSE(plan.beta.has_value());

  Json no_seeds = plan_json;
  no_seeds.erase("seeds");
  ExperimentPlan empty_range = plan_from_json(no_seeds);
  CHECK(empty_range.seed_lo > empty_range.seed_hi);

  Json overrides = plan_json;
  overrides["beta"] = 12;
  overrides["beta_minus"] = 5;
  ExperimentPlan with_params = plan_from_json(overrides);
  CHECK(with_params.beta == 12);
  CHECK(with_params.beta_minus == 5);
}

TEST_CASE("malformed plans are rejected") {
  Json good{{"instances",
             Json::array({{{"gen", {{"family", "laminar"}, {"n", 6}}}}})},
            {"epsilons", Json::array({"1/2"})},
            {"algorithms", {"exact"}},
            {"output", "/tmp/out.jsonl"}};
  CHECK_NOTHROW(plan_from_json(good));

  Json no_instances = good;
  no_instances["instances"] = Json::array();
  CHECK_THROWS_AS(plan_from_json(no_instances), ValidationError);

  Json bad_algo = good;
  bad_algo["algorithms"] = {"exact", "simplex"};
  CHECK_THROWS_AS(plan_from_json(bad_algo), ValidationError);

  Json no_output = good;
  no_output.erase("output");
  CHECK_THROWS_AS(plan_from_json(no_output), ValidationError);

  Json no_eps = good;
  no_eps["algorithms"] = {"dcs"};
  no_eps.erase("epsilons");
  CHECK_THROWS_AS(plan_from_json(no_eps), ValidationError);

  Json neg_eps = good;
  neg_eps["epsilons"] = Json::array({"-1/2"});
  CHECK_THROWS_AS(plan_from_json(neg_eps), ValidationError);

  Json lone_beta = good;
  lone_beta["beta"] = 12;
  CHECK_THROWS_AS(plan_from_json(lone_beta), ValidationError);

  Json bare_entry = good;
  bare_entry["instances"] = Json::array({{{"name", "x"}}});
  CHECK_THROWS_AS(plan_from_json(bare_entry), ValidationError);
}

TEST_CASE("a small experiment writes ordered rows and aggregates") {
  auto out_path = temp_file("matsparse_experiment_test.jsonl");
  Json plan_json{
      {"instances",
       Json::array(
           {{{"name", "bip"},
             {"gen",
              {{"family", "partition-bipartite"}, {"n", 8}, {"param", 2},
               {"seed", 3}}}}})},
      {"epsilons", Json::array({"1/2"})},
      {"seeds", {0, 2}},
      {"algorithms", {"exact", "greedy", "dcs"}},
      {"output", out_path.string()}};
  ExperimentOutcome outcome = run_experiment(plan_from_json(plan_json));
  // One exact row, three greedy seeds, one dcs epsilon.
  CHECK(outcome.rows == 5);
  CHECK(outcome.errors == 0);
  CHECK(outcome.ratios.count("greedy") == 1);
  CHECK(outcome.ratios.at("greedy").runs == 3);
  CHECK(outcome.ratios.count("dcs") == 1);
  CHECK_FALSE(outcome.table.empty());

  std::vector<Json> lines = read_jsonl(out_path);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0]["kind"] == "header");
  CHECK(lines[0]["schema"] == "matsparse.experiment/1");
  CHECK(lines[0]["tasks"] == 5);
  for (size_t i = 1; i < lines.size(); ++i) {
    const Json& row = lines[i];
    CHECK(row["kind"] == "row");
    CHECK(row["task"] == static_cast<int>(i - 1));
    CHECK(row["instance"] == "bip");
    CHECK(row["ok"] == true);
    if (row["algorithm"] == "exact") CHECK(row["certified_match"] == true);
    if (row["algorithm"] == "greedy") {
      int mu = row["mu"].get<int>();
      int got = row["output"].get<int>();
      CHECK(got >= 1);
      CHECK(mu <= 2 * got);
    }
    if (row["algorithm"] == "dcs") {
      CHECK(row["epsilon"] == "1/2");
      CHECK(row["beta"] == 33);
      CHECK(row["subset_mu"] == row["mu"]);
    }
  }
  std::filesystem::remove(out_path);
}

TEST_CASE("an empty seed range leaves only seedless tasks") {
  auto out_path = temp_file("matsparse_experiment_empty_test.jsonl");
  Json plan_json{
      {"instances",
       Json::array({{{"gen",
                      {{"family", "partition-bipartite"}, {"n", 8},
                       {"param", 2}}}}})},
      {"algorithms", {"exact", "greedy"}},
      {"output", out_path.string()}};
  ExperimentOutcome outcome = run_experiment(plan_from_json(plan_json));
  CHECK(outcome.rows == 1);  // greedy needs seeds, exact does not
  CHECK(outcome.errors == 0);
  std::vector<Json> lines = read_jsonl(out_path);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0]["kind"] == "header");
  CHECK(lines[1]["algorithm"] == "exact");
  std::filesystem::remove(out_path);
}

TEST_CASE("stream experiments on tiny certified instances all fall back") {
  auto out_path = temp_file("matsparse_experiment_stream_test.jsonl");
  Json plan_json{
      {"instances",
       Json::array({{{"gen",
                      {{"family", "partition-bipartite"}, {"n", 8},
                       {"param", 2}, {"seed", 1}}}}})},
      {"epsilons", Json::array({"1/5"})},
      {"seeds", {0, 3}},
      {"algorithms", {"stream"}},
      {"output", out_path.string()}};
  ExperimentOutcome outcome = run_experiment(plan_from_json(plan_json));
  CHECK(outcome.rows == 4);
  CHECK(outcome.errors == 0);
  std::vector<Json> lines = read_jsonl(out_path);
  REQUIRE(lines.size() == 5);
  for (size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i]["fallback"] == 1);
    CHECK(lines[i]["ratio"] == "1/1");
    CHECK(lines[i]["within_budget"] == true);
    CHECK(lines[i]["output"] == lines[i]["mu"]);
  }
  CHECK(outcome.ratios.at("stream").mean == 1.0);
  CHECK(outcome.ratios.at("stream").min == 1.0);
  CHECK(outcome.ratios.at("stream").max == 1.0);
  std::filesystem::remove(out_path);
}

TEST_CASE("experiment errors are isolated into rows") {
  auto out_path = temp_file("matsparse_experiment_error_test.jsonl");
  Json plan_json{
      {"instances",
       Json::array({{{"name", "missing"}, {"path", "/nonexistent/foo.json"}}})},
      {"algorithms", {"exact"}},
      {"output", out_path.string()}};
  // Materialization failures surface as exceptions before any row is
  // written, because no instance means no task list.
  CHECK_THROWS_AS(run_experiment(plan_from_json(plan_json)), ValidationError);
  std::filesystem::remove(out_path);
}
