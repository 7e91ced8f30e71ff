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

#ifndef MATSPARSE_DECOMPOSITION_HPP_
#define MATSPARSE_DECOMPOSITION_HPP_

#include <utility>
#include <vector>

#include "matsparse/matroid_view.hpp"
#include "matsparse/rational.hpp"
#include "matsparse/submodular.hpp"

namespace matsparse {

struct DecompositionLayer {
  ElementSet members;
  int rank = 0;  // rank of members in the minor left by the earlier layers
  Rat density;   // |members| / rank; finite, at least 1
};

// Density-based decomposition of a view's ground set: layer j is the maximum
// cardinality densest subset of the minor obtained by contracting layers
// 1..j-1. Densities strictly decrease and the layers partition the ground.
struct Decomposition {
  int n = 0;
  ElementSet ground;
  std::vector<DecompositionLayer> layers;
  std::vector<ElementSet> prefixes;  // prefixes[j] = layers[0..j] united
  std::vector<int> prefix_ranks;     // rank of prefixes[j] in the restriction
  std::vector<int> layer_of;         // per element; -1 outside ground

  int layer_count() const { return static_cast<int>(layers.size()); }
  const Rat& member_density(int v) const;
};

enum class DecomposeRoute {
  kAuto,      // tree form when the view has one, generic otherwise
  kTreeForm,  // exact water filling over the laminar tree form
  kGeneric,   // per-layer densest subset via rational Dinkelbach iteration
};

// Requires a loop-free view (raises DomainError otherwise). The sfm choice
// only affects the generic route: kAuto enumerates subsets for grounds of at
// most 18 elements and switches to the min-norm point method beyond.
Decomposition decompose(const MatroidView& view,
                        DecomposeRoute route = DecomposeRoute::kAuto,
                        SfmMethod sfm = SfmMethod::kAuto);

// Maximum cardinality densest subset of the view's ground with its density;
// (empty, zero) for an empty ground.
std::pair<ElementSet, Density> densest_subset(
    const MatroidView& view, DecomposeRoute route = DecomposeRoute::kAuto,
    SfmMethod sfm = SfmMethod::kAuto);

// Density associated with v by the decomposition d: the layer density for
// members, the density of the first prefix spanning v for spanned outsiders,
// zero for elements not spanned by d.ground. The view must be the one d was
// built from before restriction to d.ground (same contraction state).
Rat associated_density(const MatroidView& view, const Decomposition& d, int v);
std::vector<Rat> associated_density_table(const MatroidView& view,
                                          const Decomposition& d);

// Process-wide counter of decompose() calls, for workload reporting.
long long decompose_calls();
void reset_decompose_calls();

}  // namespace matsparse

#endif  // MATSPARSE_DECOMPOSITION_HPP_
