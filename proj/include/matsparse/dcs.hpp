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

#ifndef MATSPARSE_DCS_HPP_
#define MATSPARSE_DCS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "matsparse/decomposition.hpp"
#include "matsparse/matroid_view.hpp"

namespace matsparse {

// A (beta, beta_minus) density-constrained subset V' of the common ground
// keeps, for the two decompositions of V', every member's associated density
// sum at most beta and every outsider's at least beta_minus.
struct DcsParams {
  int beta = 0;
  int beta_minus = 0;
  Rat epsilon;  // zero when the pair was given directly
};

// beta_minus = ceil(11/epsilon) + 4 and beta = beta_minus + 7; this always
// satisfies both the construction constraint beta >= beta_minus + 7 and the
// ratio constraint (beta_minus - 4) * (1 + epsilon) >= beta.
DcsParams choose_params(const Rat& epsilon);

// Raises ValidationError when beta < beta_minus + 7.
void validate_params(const DcsParams& p);
// Non-fatal observations: vacuous property (ii), uncertified ratio.
std::vector<std::string> param_warnings(const DcsParams& p);

struct DcsCheck {
  bool ok = false;
  std::vector<int> over;   // members with density sum above beta
  std::vector<int> under;  // outsiders with density sum below beta_minus
};

DcsCheck check_dcs(const MatroidView& m1, const MatroidView& m2,
                   const ElementSet& v_prime, const DcsParams& p);

struct DcsState {
  ElementSet v_prime;
  Decomposition decomp1, decomp2;
  std::vector<Rat> table1, table2;  // associated densities over the universe
  Rat phi;
  long long step_count = 0;
  long long insertions = 0;
  long long deletions = 0;
};

struct DcsBuildOptions {
  // Exact intersection size of the ground, when known: enables the hard
  // step budget (2 beta^2 mu) and size (beta mu) assertions.
  std::optional<int> mu;
};

// Local search from the empty set: delete any member violating the upper
// bound (lowest id first, exhausted before insertions), else insert the
// lowest-id outsider violating the lower bound. The potential
//   phi = (2 beta - 7) |V'| - sum_l sum_layers rank * density^2
// must rise by at least 1 per step; both decompositions are recomputed from
// scratch after every mutation.
DcsState build_dcs(const MatroidView& m1, const MatroidView& m2,
                   const DcsParams& p, const ElementSet& ground,
                   const DcsBuildOptions& opts = {});

// The potential of an arbitrary subset, recomputed from scratch.
Rat dcs_potential(const MatroidView& m1, const MatroidView& m2,
                  const ElementSet& v_prime, int beta);

// The same potential evaluated from decompositions already at hand.
Rat dcs_potential_value(int beta, int subset_size, const Decomposition& d1,
                        const Decomposition& d2);

}  // namespace matsparse

#endif  // MATSPARSE_DCS_HPP_
