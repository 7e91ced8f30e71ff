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

#ifndef MATSPARSE_RNG_HPP_
#define MATSPARSE_RNG_HPP_

#include <cassert>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace matsparse {

// The one seedable generator used everywhere. std::mt19937_64 has a
// standard-defined sequence, but std distributions do not, so bounded
// sampling and shuffling are done by hand to keep outputs byte-stable
// across platforms and runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, bound), bias-free via rejection.
  std::uint64_t below(std::uint64_t bound) {
    assert(bound > 0);
    std::uint64_t limit = ~0ull - (~0ull % bound + 1) % bound;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x > limit);
    return x % bound;
  }

  // Uniform in [lo, hi], inclusive.
  int range(int lo, int hi) {
    assert(lo <= hi);
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return eng_() & 1; }

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    shuffle(p);
    return p;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace matsparse

#endif  // MATSPARSE_RNG_HPP_
