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

#ifndef MATSPARSE_SUBMODULAR_HPP_
#define MATSPARSE_SUBMODULAR_HPP_

#include <functional>

#include "matsparse/element_set.hpp"
#include "matsparse/rational.hpp"

namespace matsparse {

struct SubmodularMin {
  ElementSet maximal_minimizer;
  Rat value;
};

enum class SfmMethod {
  kAuto,        // exhaustive up to 18 ground elements, min-norm point beyond
  kExhaustive,  // enumerate all subsets (ground must stay small)
  kMinNorm,     // exact rational min-norm point in the base polytope
};

// Minimizes a submodular f over subsets of ground, f(empty set) must be 0.
// Returns the unique maximal minimizer. Both methods are exact; the min-norm
// route reads the answer off the optimal point x* via min f = sum_v
// min(x*_v, 0) with maximal minimizer {v : x*_v <= 0}, and re-evaluates f
// there as a self-check.
SubmodularMin minimize_submodular(
    int n, const ElementSet& ground,
    const std::function<Rat(const ElementSet&)>& f,
    SfmMethod method = SfmMethod::kAuto);

}  // namespace matsparse

#endif  // MATSPARSE_SUBMODULAR_HPP_
