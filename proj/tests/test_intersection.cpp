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
#include <memory>
#include <numeric>
#include <utility>
#include <vector>

#include "brute.hpp"
#include "matsparse/errors.hpp"
#include "matsparse/harness.hpp"
#include "matsparse/instance.hpp"
#include "matsparse/intersection.hpp"
#include "matsparse/matroid.hpp"
#include "matsparse/rng.hpp"

using namespace matsparse;
using matsparse::testing::mask_of;

namespace {

void check_certificate(const MatroidView& m1, const MatroidView& m2,
                       const IntersectionResult& r) {
  CHECK(is_common_independent(m1, m2, r.solution));
  CHECK((r.cover1 | r.cover2) == m1.ground());
  CHECK_FALSE(r.cover1.intersects(r.cover2));
  CHECK(m1.rank(r.cover1) + m2.rank(r.cover2) == r.size());
}

// Three path edges where the ends match one matroid each and the middle
// blocks both; greedily taking the middle edge first locks the ends out.
std::pair<MatroidView, MatroidView> path_fixture() {
  auto m1 = std::make_shared<PartitionMatroid>(
      3, std::vector<std::vector<int>>{{1}, {0, 2}}, std::vector<int>{1, 1});
  auto m2 = std::make_shared<PartitionMatroid>(
      3, std::vector<std::vector<int>>{{0, 1}, {2}}, std::vector<int>{1, 1});
  return {MatroidView(m1), MatroidView(m2)};
}

}  // namespace

TEST_CASE("empty grounds solve trivially") {
  auto m = std::make_shared<UniformMatroid>(4, 2);
  MatroidView empty = MatroidView(m).restrict_to(ElementSet(4));
  IntersectionResult r = max_common_independent(empty, empty);
  CHECK(r.size() == 0);
  CHECK(r.solution.empty());
  CHECK(r.cover1.empty());
  CHECK(r.cover2.empty());
}

TEST_CASE("figure instance has intersection size four with a tight cover") {
  GenResult gen = gen_instance({.family = "fig1", .n = 17});
  REQUIRE(gen.certified_mu.has_value());
  CHECK(*gen.certified_mu == 4);
  MatroidView v1 = gen.instance.view1();
  MatroidView v2 = gen.instance.view2();
  IntersectionResult r = max_common_independent(v1, v2);
  CHECK(r.size() == 4);
  check_certificate(v1, v2, r);
}

TEST_CASE("solver and certificate match enumeration on random instances") {
  const char* families[] = {"mixed", "laminar", "graphic", "transversal"};
  for (int trial = 0; trial < 12; ++trial) {
    GenSpec spec;
    spec.family = families[trial % 4];
    spec.n = 8 + (trial % 3);
    spec.seed = 500 + trial;
    GenResult gen = gen_instance(spec);
    const Instance& inst = gen.instance;
    MatroidView v1 = inst.view1();
    MatroidView v2 = inst.view2();

    auto [t1, t2] = testing::brute_pair(inst.source);
    std::uint32_t ground = (1u << inst.n) - 1;
    int want_mu = testing::brute_mu(t1, t2, ground);
    int want_dual = testing::brute_dual_value(t1, t2, ground);
    CHECK(want_mu == want_dual);

    IntersectionResult r = max_common_independent(v1, v2);
    CHECK(r.size() == want_mu);
    check_certificate(v1, v2, r);

    CHECK(brute_common_independent_size(v1, v2) == want_mu);
    auto [cover, value] = brute_dual_cover(v1, v2);
    CHECK(value == want_mu);
    CHECK(v1.rank(cover) + v2.rank(v1.ground() - cover) == value);
  }
}

TEST_CASE("restricted solves agree with enumeration too") {
  GenResult gen = gen_instance({.family = "mixed", .n = 10, .seed = 77});
  MatroidView v1 = gen.instance.view1();
  MatroidView v2 = gen.instance.view2();
  auto [t1, t2] = testing::brute_pair(gen.instance.source);
  Rng rng(9);
  for (int trial = 0; trial < 8; ++trial) {
    ElementSet s(10);
    for (int i = 0; i < 10; ++i)
      if (rng.coin()) s.set(i);
    IntersectionResult r =
        max_common_independent(v1.restrict_to(s), v2.restrict_to(s));
    CHECK(r.size() == testing::brute_mu(t1, t2, mask_of(s)));
  }
}

TEST_CASE("identical partition matroids intersect at their own rank") {
  auto m = std::make_shared<PartitionMatroid>(
      9, std::vector<std::vector<int>>{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}},
      std::vector<int>{1, 2, 1});
  MatroidView v(m);
  IntersectionResult r = max_common_independent(v, v);
  CHECK(r.size() == 4);
  check_certificate(v, v, r);
}

TEST_CASE("warm starts do not change the answer") {
  GenResult gen = gen_instance({.family = "graphic", .n = 12, .param = 5,
                                .seed = 11});
  MatroidView v1 = gen.instance.view1();
  MatroidView v2 = gen.instance.view2();
  IntersectionResult cold = max_common_independent(v1, v2);

  std::vector<int> order(12);
  std::iota(order.begin(), order.end(), 0);
  ElementSet greedy = greedy_common_independent(v1, v2, order);
  IntersectionResult warm = max_common_independent(v1, v2, &greedy);
  CHECK(warm.size() == cold.size());
  check_certificate(v1, v2, warm);
  CHECK(greedy.subset_of(v1.ground()));
}

TEST_CASE("greedy takes the middle of the path and stalls at half") {
  auto [v1, v2] = path_fixture();
  std::vector<int> order = {0, 1, 2};
  ElementSet greedy = greedy_common_independent(v1, v2, order);
  CHECK(greedy == ElementSet::of(3, {0}));

  IntersectionResult best = max_common_independent(v1, v2);
  CHECK(best.size() == 2);
  CHECK(best.solution == ElementSet::of(3, {1, 2}));

  // Maximality: no element extends the greedy set.
  for (int v = 0; v < 3; ++v) {
    if (greedy.test(v)) continue;
    CHECK_FALSE(is_common_independent(v1, v2, greedy.with(v)));
  }

  std::vector<int> reversed = {2, 1, 0};
  CHECK(greedy_common_independent(v1, v2, reversed).count() == 2);
}

TEST_CASE("greedy is maximal and within half of optimal") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    GenSpec spec;
    spec.family = trial % 2 == 0 ? "mixed" : "partition-bipartite";
    spec.n = trial % 2 == 0 ? 9 : 8;
    spec.param = trial % 2 == 0 ? 0 : 2;
    spec.seed = 900 + trial;
    GenResult gen = gen_instance(spec);
    MatroidView v1 = gen.instance.view1();
    MatroidView v2 = gen.instance.view2();
    std::vector<int> order = rng.permutation(gen.instance.n);
    ElementSet greedy = greedy_common_independent(v1, v2, order);
    CHECK(is_common_independent(v1, v2, greedy));
    for (int v = 0; v < gen.instance.n; ++v) {
      if (greedy.test(v)) continue;
      CHECK_FALSE(is_common_independent(v1, v2, greedy.with(v)));
    }
    int best = max_common_independent(v1, v2).size();
    CHECK(2 * greedy.count() >= best);
  }
}

TEST_CASE("enumeration helpers enforce their size gates") {
  auto big = std::make_shared<UniformMatroid>(20, 3);
  MatroidView v(big);
  CHECK_THROWS_AS(brute_common_independent_size(v, v), GateError);
  auto mid = std::make_shared<UniformMatroid>(17, 3);
  MatroidView w(mid);
  CHECK_NOTHROW(brute_common_independent_size(w, w));
  CHECK_THROWS_AS(brute_dual_cover(w, w), GateError);

  // Gates look at the ground size, not the universe.
  MatroidView small = v.restrict_to(ElementSet::of(20, {0, 1, 2, 3}));
  CHECK(brute_common_independent_size(small, small) == 3);
}

TEST_CASE("elements outside the ground are rejected") {
  auto m = std::make_shared<UniformMatroid>(4, 2);
  MatroidView v = MatroidView(m).restrict_to(ElementSet::of(4, {0, 1}));
  std::vector<int> order = {0, 3};
  CHECK_THROWS_AS(greedy_common_independent(v, v, order), DomainError);
}
