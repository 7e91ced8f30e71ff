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

#ifndef MATSPARSE_INTERSECTION_HPP_
#define MATSPARSE_INTERSECTION_HPP_

#include <utility>
#include <vector>

#include "matsparse/matroid_view.hpp"

namespace matsparse {

struct IntersectionResult {
  ElementSet solution;  // maximum common independent set
  // Dual certificate: cover1 and cover2 partition the ground and
  // rank1(cover1) + rank2(cover2) == |solution|, proving maximality.
  ElementSet cover1, cover2;

  int size() const { return solution.count(); }
};

// Exchange-graph augmentation from the optional warm start (which must be
// common independent). Both views need the same universe and ground.
IntersectionResult max_common_independent(const MatroidView& m1,
                                          const MatroidView& m2,
                                          const ElementSet* warm_start = nullptr);

// Adds each element of order in turn when doing so keeps the set independent
// in both matroids. Elements outside the grounds raise DomainError.
ElementSet greedy_common_independent(const MatroidView& m1,
                                     const MatroidView& m2,
                                     const std::vector<int>& order);

bool is_common_independent(const MatroidView& m1, const MatroidView& m2,
                           const ElementSet& x);

// Reference implementations by enumeration, for cross-checks. Both raise
// GateError beyond their ground-size gates (18 and 16 elements).
int brute_common_independent_size(const MatroidView& m1,
                                  const MatroidView& m2);
std::pair<ElementSet, int> brute_dual_cover(const MatroidView& m1,
                                            const MatroidView& m2);

}  // namespace matsparse

#endif  // MATSPARSE_INTERSECTION_HPP_
