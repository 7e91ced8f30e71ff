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

#ifndef MATSPARSE_HARNESS_HPP_
#define MATSPARSE_HARNESS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matsparse/instance.hpp"
#include "matsparse/rational.hpp"

namespace matsparse {

// -- Instance generation ------------------------------------------------------

struct GenSpec {
  // partition-bipartite | laminar | graphic | transversal | mixed | fig1
  std::string family;
  int n = 0;  // element count (fixed to 17 for fig1)
  // Family-specific knob: edge multiplicity d (partition-bipartite), gadget
  // pair count (partition-bipartite with slack), vertex count (graphic),
  // right side size (transversal); 0 picks a default.
  int param = 0;
  // partition-bipartite only: star gadgets with intersection size half the
  // common rank instead of a d-regular graph with a perfect matching.
  bool slack = false;
  std::uint64_t seed = 0;
};

struct GenResult {
  Json document;      // instance file content, metadata included
  Instance instance;  // loader-validated form of the same document
  // Intersection size established by an independent certificate (bipartite
  // matching for partition-bipartite, the figure value for fig1).
  std::optional<int> certified_mu;
};

// Deterministic per (family, n, param, slack, seed); the result always passes
// loader validation. Infeasible size specs raise ValidationError.
GenResult gen_instance(const GenSpec& spec);

// Maximum bipartite matching by augmenting paths, used as the independent
// intersection certificate for partition-bipartite instances.
int bipartite_matching_size(int left_count, int right_count,
                            const std::vector<std::pair<int, int>>& edges);

// Certified intersection size recorded in an instance document, if any.
std::optional<int> certified_mu_of(const Json& document);

// -- Brute-force oracle suites ------------------------------------------------

struct OracleOptions {
  int trials = 200;
  std::uint64_t seed = 1;
};

struct OracleReport {
  std::string scope;
  bool pass = false;
  long long checks = 0;            // individual assertions evaluated
  std::vector<std::string> failures;  // first counterexamples, with replay data
  std::string refusal;             // set when a size gate refused the scope
};

// scope: ranks | densest | decomposition | intersection | dual | lemmas.
// Enumeration gates: 18 elements for densest/decomposition/intersection and
// lemmas, 16 for dual; ranks runs at any size.
OracleReport oracle_check(const Instance& inst, const std::string& scope,
                          const OracleOptions& opts = {});

const std::vector<std::string>& oracle_scopes();

// -- Experiment orchestration -------------------------------------------------

struct ExperimentPlan {
  struct Source {
    std::string name;
    std::string path;             // file source when non-empty
    std::optional<GenSpec> gen;   // generator source otherwise
  };
  std::vector<Source> sources;
  std::vector<Rat> epsilons;
  std::uint64_t seed_lo = 0, seed_hi = 0;  // inclusive range
  std::vector<std::string> algorithms;     // exact greedy dcs communicate stream
  std::string output_path;
  bool enforce_cap = false;
  std::optional<int> beta, beta_minus;     // parameter overrides
};

ExperimentPlan plan_from_json(const Json& j);

struct RatioAggregate {
  long long runs = 0;
  double mean = 0, min = 0, max = 0, p95 = 0;
};

struct ExperimentOutcome {
  long long rows = 0;
  long long errors = 0;
  std::map<std::string, RatioAggregate> ratios;  // keyed by algorithm
  std::string table;                             // rendered human summary
};

// Fans runs out over a bounded worker pool (MATSPARSE_WORKERS, default the
// hardware concurrency) and appends one JSON record per run to the output
// path, in plan order. Failures become error records, not aborts.
ExperimentOutcome run_experiment(const ExperimentPlan& plan);

int worker_count_from_env();

}  // namespace matsparse

#endif  // MATSPARSE_HARNESS_HPP_
