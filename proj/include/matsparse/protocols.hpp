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

#ifndef MATSPARSE_PROTOCOLS_HPP_
#define MATSPARSE_PROTOCOLS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "matsparse/dcs.hpp"
#include "matsparse/element_set.hpp"
#include "matsparse/matroid_view.hpp"
#include "matsparse/rational.hpp"

namespace matsparse {

// One-way protocol: the first party holds v_a, builds a density-constrained
// subset of it, and sends that subset as the message. The second party
// appends its own elements and solves exactly over message plus v_b.
struct CommunicationTranscript {
  ElementSet v_a;
  ElementSet v_b;
  ElementSet message;
  ElementSet output;
  int message_size = 0;
  int output_size = 0;
  DcsParams params;
  long long dcs_steps = 0;
};

CommunicationTranscript one_way_run(const MatroidView& m1,
                                    const MatroidView& m2,
                                    const ElementSet& v_a,
                                    const DcsParams& params);

// Deterministic shuffle of the given ids, used as the default stream order.
std::vector<int> stream_order(std::vector<int> ids, std::uint64_t seed);

struct StreamConfig {
  DcsParams params;
  std::uint64_t seed = 0;
  // Explicit arrival order (a permutation of the ground ids). When absent the
  // order is a seeded shuffle of the ground ids.
  std::optional<std::vector<int>> order;
  // Stop collecting buffered elements once the phase-two buffer reaches
  // ceil(4 ln(n) n / alpha) ids.
  bool enforce_cap = false;
  // Exact intersection size of the whole instance, if already known. Avoids
  // one exact solve per run when many seeds share an instance.
  std::optional<int> known_mu;
};

struct StreamReport {
  std::uint64_t seed = 0;
  int output_size = 0;
  int mu_exact = 0;
  Density ratio = Density::finite(1);  // mu_exact / output_size
  // Peak number of stored element ids (retained subset plus buffer).
  int stored_peak = 0;
  int underfull_collected = 0;
  int phase1_consumed = 0;
  int i_stop = 0;
  bool fallback_triggered = false;
  // Whether phase one consumed at most epsilon * n elements.
  bool phase1_within_budget = true;
  bool cap_truncated = false;
  long long cap_limit = 0;
  long long mutations = 0;
  ElementSet v_prime;
  ElementSet buffered;
  ElementSet solution;
};

// Random-order streaming run over the ground of the two views.
StreamReport stream_run(const MatroidView& m1, const MatroidView& m2,
                        const StreamConfig& cfg);

// Checks the guarantee that a bounded-density retained subset plus every
// underfull outside element preserves the intersection size up to a
// (3/2 + epsilon) factor.
struct UnderfullCheck {
  // Members of v_prime whose two associated densities sum above beta.
  std::vector<int> density_violations;
  // Elements outside v_prime and x whose density sum is below beta_minus.
  std::vector<int> missing_underfull;
  bool preconditions_ok = false;
  int mu_full = 0;
  int mu_subset = 0;
  bool inequality_ok = false;  // (3/2 + epsilon) * mu_subset >= mu_full
  bool ok = false;
};

UnderfullCheck underfull_ratio_check(const MatroidView& m1,
                                     const MatroidView& m2,
                                     const ElementSet& v_prime,
                                     const ElementSet& x,
                                     const DcsParams& params);

}  // namespace matsparse

#endif  // MATSPARSE_PROTOCOLS_HPP_
