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

#include <bit>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "brute.hpp"
#include "matsparse/errors.hpp"
#include "matsparse/harness.hpp"
#include "matsparse/instance.hpp"
#include "matsparse/matroid.hpp"
#include "matsparse/matroid_view.hpp"
#include "matsparse/rng.hpp"

using namespace matsparse;
using matsparse::testing::brute_table;
using matsparse::testing::set_of;

namespace {

// Descriptors for one matroid of every variant on ten elements.
std::vector<Json> ten_element_descriptors() {
  std::vector<Json> out;
  out.push_back({{"variant", "uniform"}, {"r", 4}});
  out.push_back({{"variant", "partition"},
                 {"blocks", Json::array({{0, 1, 2}, {3, 4, 5}, {6, 7, 8, 9}})},
                 {"capacities", {1, 2, 2}}});
  out.push_back(
      {{"variant", "laminar"},
       {"nodes", Json::array({{{"members", {0, 1}}, {"capacity", 1}},
                              {{"members", {0, 1, 2, 3, 4}}, {"capacity", 2}},
                              {{"members", {5, 6, 7, 8, 9}}, {"capacity", 3}}})}});
  // K5: every pair of the five vertices, one edge per element.
  Json k5 = Json::array();
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) k5.push_back({u, v});
  out.push_back({{"variant", "graphic"}, {"vertex_count", 5}, {"edges", k5}});
  out.push_back({{"variant", "transversal"},
                 {"right_count", 4},
                 {"adjacency", Json::array({{0}, {0, 1}, {1}, {1, 2}, {2}, {2, 3}, {3}, {0, 3}, {1, 3}, {0, 2}})}});
  out.push_back({{"variant", "truncated"},
                 {"r", 2},
                 {"inner", {{"variant", "graphic"}, {"vertex_count", 5}, {"edges", k5}}}});
  return out;
}

int popcount(std::uint32_t m) { return std::popcount(m); }

}  // namespace

TEST_CASE("uniform ranks cap at the limit") {
  UniformMatroid m(5, 3);
  CHECK(m.rank(ElementSet::of(5, {0, 1, 2, 3})) == 3);
  CHECK(m.rank(ElementSet::of(5, {0, 1})) == 2);
  CHECK(m.rank(ElementSet(5)) == 0);
  CHECK(m.family().starts_with("uniform"));
  CHECK(MatroidView(std::make_shared<UniformMatroid>(5, 3)).full_rank() == 3);
}

TEST_CASE("partition ranks cap per block") {
  PartitionMatroid m(3, {{0, 1}, {2}}, {1, 1});
  MatroidView v(std::make_shared<PartitionMatroid>(m));
  CHECK(v.is_independent(ElementSet::of(3, {0, 2})));
  CHECK_FALSE(v.is_independent(ElementSet::of(3, {0, 1})));
  CHECK(v.rank(ElementSet::of(3, {0, 1, 2})) == 2);
}

TEST_CASE("figure instance view operations") {
  GenResult gen = gen_instance({.family = "fig1", .n = 17});
  const Instance& inst = gen.instance;
  REQUIRE(inst.n == 17);
  MatroidView lam = inst.m1->family().starts_with("laminar") ? inst.view1()
                                                             : inst.view2();

  ElementSet low = ElementSet::from_ids(17, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(lam.rank(low) == 2);
  CHECK_FALSE(lam.is_independent(ElementSet::of(17, {15, 16})));
  CHECK(lam.span(ElementSet::of(17, {15})) == ElementSet::of(17, {15, 16}));

  MatroidView restricted = lam.restrict_to(low);
  CHECK(restricted.full_rank() == 2);
  CHECK(restricted.ground() == low);
  CHECK_THROWS_AS(restricted.rank(ElementSet::of(17, {14})), DomainError);

  MatroidView contracted = lam.contract(ElementSet::of(17, {0, 1}));
  CHECK(contracted.rank(ElementSet::of(17, {2})) == 0);
  CHECK_FALSE(contracted.ground().test(0));
}

TEST_CASE("graphic triangle minors") {
  auto tri = std::make_shared<GraphicMatroid>(
      3, 3, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 0}});
  MatroidView v(tri);
  CHECK(v.full_rank() == 2);
  CHECK(v.span(ElementSet::of(3, {0, 1})) == ElementSet::full(3));
  MatroidView c = v.contract(ElementSet::of(3, {0}));
  CHECK(c.rank(ElementSet::of(3, {1})) == 1);
  CHECK(c.rank(ElementSet::of(3, {1, 2})) == 1);
  CHECK(v.truncate(1).full_rank() == 1);
  CHECK_THROWS_AS(v.truncate(-1), DomainError);
}

TEST_CASE("graphic construction rejects malformed edges") {
  std::vector<std::pair<int, int>> loop{{0, 0}};
  CHECK_THROWS_AS(GraphicMatroid(1, 2, loop), ValidationError);
  std::vector<std::pair<int, int>> stray{{0, 5}};
  CHECK_THROWS_AS(GraphicMatroid(1, 2, stray), ValidationError);
}

TEST_CASE("truncating a uniform matroid lowers its limit") {
  MatroidView big(std::make_shared<UniformMatroid>(5, 3));
  MatroidView cut = big.truncate(2);
  MatroidView small(std::make_shared<UniformMatroid>(5, 2));
  for (std::uint32_t mask = 0; mask < 32u; ++mask) {
    ElementSet x = set_of(mask, 5);
    CHECK(cut.rank(x) == small.rank(x));
  }
  CHECK(big.truncate(7).full_rank() == 3);
}

TEST_CASE("contracting nothing changes nothing") {
  auto tri = std::make_shared<GraphicMatroid>(
      3, 3, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 0}});
  MatroidView v(tri);
  MatroidView c = v.contract(ElementSet(3));
  for (std::uint32_t mask = 0; mask < 8u; ++mask) {
    ElementSet x = set_of(mask, 3);
    CHECK(c.rank(x) == v.rank(x));
  }
  CHECK(c.ground() == v.ground());
}

TEST_CASE("restriction does not change ranks of inside sets") {
  Rng rng(7);
  for (const Json& desc : ten_element_descriptors()) {
    MatroidPtr m = matroid_from_json(desc, 10);
    MatroidView v(m);
    ElementSet s(10);
    for (int i = 0; i < 10; ++i)
      if (rng.coin()) s.set(i);
    MatroidView r = v.restrict_to(s);
    for (int trial = 0; trial < 50; ++trial) {
      ElementSet x(10);
      for (int i = 0; i < 10; ++i)
        if (s.test(i) && rng.coin()) x.set(i);
      CHECK(r.rank(x) == v.rank(x));
    }
  }
}

TEST_CASE("contraction rank identity holds exhaustively") {
  // rank of S in the minor equals rank(S | A) - rank(A) in the original.
  for (const Json& desc : ten_element_descriptors()) {
    MatroidPtr m = matroid_from_json(desc, 10);
    MatroidView v(m);
    for (std::uint32_t amask : {0x3u, 0x25u, 0x3ffu, 0x180u}) {
      ElementSet a = set_of(amask, 10);
      int ra = v.rank(a);
      MatroidView c = v.contract(a);
      for (std::uint32_t mask = 0; mask < 1024u; ++mask) {
        if (mask & amask) continue;
        ElementSet x = set_of(mask, 10);
        if (c.rank(x) != v.rank(x | a) - ra) {
          FAIL("minor rank mismatch for ", desc.dump(), " A=", a.to_string(),
               " S=", x.to_string());
        }
      }
    }
  }
}

TEST_CASE("chained contractions compose") {
  auto k4 = std::make_shared<GraphicMatroid>(
      6, 4,
      std::vector<std::pair<int, int>>{
          {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  MatroidView v(k4);
  MatroidView two_step =
      v.contract(ElementSet::of(6, {0})).contract(ElementSet::of(6, {3}));
  MatroidView one_step = v.contract(ElementSet::of(6, {0, 3}));
  for (std::uint32_t mask = 0; mask < 64u; ++mask) {
    ElementSet x = set_of(mask, 6);
    if (!x.subset_of(two_step.ground())) continue;
    CHECK(two_step.rank(x) == one_step.rank(x));
  }
}

TEST_CASE("rank oracles match exhaustive enumeration") {
  for (const Json& desc : ten_element_descriptors()) {
    MatroidPtr m = matroid_from_json(desc, 10);
    testing::BruteTable t = brute_table(desc, 10);
    for (std::uint32_t mask = 0; mask < 1024u; ++mask) {
      if (m->rank(set_of(mask, 10)) != t.rank_of(mask)) {
        FAIL("rank mismatch for ", desc.dump(), " on mask ", mask);
      }
    }
  }
}

TEST_CASE("rank axioms hold exhaustively on ten elements") {
  for (const Json& desc : ten_element_descriptors()) {
    MatroidPtr m = matroid_from_json(desc, 10);
    std::vector<int> rank(1024);
    for (std::uint32_t mask = 0; mask < 1024u; ++mask)
      rank[mask] = m->rank(set_of(mask, 10));

    CHECK(rank[0] == 0);
    for (std::uint32_t mask = 0; mask < 1024u; ++mask) {
      if (rank[mask] > popcount(mask)) FAIL("rank above cardinality");
      for (int v = 0; v < 10; ++v) {
        if (mask & (1u << v)) continue;
        int up = rank[mask | (1u << v)] - rank[mask];
        if (up < 0 || up > 1) FAIL("rank step outside {0,1}");
      }
    }
    // Submodularity over every pair of subsets.
    for (std::uint32_t x = 0; x < 1024u; ++x)
      for (std::uint32_t y = x; y < 1024u; ++y)
        if (rank[x | y] + rank[x & y] > rank[x] + rank[y])
          FAIL("submodularity violated for ", desc.dump());
  }
}

TEST_CASE("independent set exchange holds exhaustively on ten elements") {
  for (const Json& desc : ten_element_descriptors()) {
    MatroidPtr m = matroid_from_json(desc, 10);
    std::vector<bool> indep(1024);
    for (std::uint32_t mask = 0; mask < 1024u; ++mask)
      indep[mask] = m->rank(set_of(mask, 10)) == popcount(mask);

    for (std::uint32_t x = 0; x < 1024u; ++x) {
      if (!indep[x]) continue;
      for (std::uint32_t y = 0; y < 1024u; ++y) {
        if (!indep[y] || popcount(x) >= popcount(y)) continue;
        bool extended = false;
        for (std::uint32_t rest = y & ~x; rest; rest &= rest - 1) {
          if (indep[x | (rest & -rest)]) {
            extended = true;
            break;
          }
        }
        if (!extended) {
          FAIL("exchange failed for ", desc.dump(), " X=", x, " Y=", y);
        }
      }
    }
  }
}

TEST_CASE("randomized rank axioms on sixty elements") {
  std::vector<MatroidPtr> matroids;
  matroids.push_back(std::make_shared<UniformMatroid>(60, 20));
  {
    std::vector<std::vector<int>> blocks;
    std::vector<int> caps;
    for (int b = 0; b < 12; ++b) {
      std::vector<int> blk;
      for (int i = 0; i < 5; ++i) blk.push_back(5 * b + i);
      blocks.push_back(blk);
      caps.push_back(1 + b % 3);
    }
    matroids.push_back(std::make_shared<PartitionMatroid>(60, blocks, caps));
  }
  {
    std::vector<std::pair<int, int>> edges;
    Rng er(11);
    for (int i = 0; i < 60; ++i) {
      int u = er.range(0, 19), v = er.range(0, 19);
      while (v == u) v = er.range(0, 19);
      edges.emplace_back(u, v);
    }
    matroids.push_back(std::make_shared<GraphicMatroid>(60, 20, edges));
  }

  Rng rng(5);
  for (const MatroidPtr& m : matroids) {
    for (int trial = 0; trial < 120; ++trial) {
      ElementSet x(60), y(60);
      for (int i = 0; i < 60; ++i) {
        if (rng.coin()) x.set(i);
        if (rng.coin()) y.set(i);
      }
      int rx = m->rank(x), ry = m->rank(y);
      CHECK(rx <= x.count());
      CHECK(m->rank(x & y) <= rx);
      CHECK(rx <= m->rank(x | y));
      CHECK(m->rank(x | y) + m->rank(x & y) <= rx + ry);
      int v = rng.range(0, 59);
      int step = m->rank(x.with(v)) - rx;
      CHECK(step >= 0);
      CHECK(step <= 1);
    }
  }
}

TEST_CASE("memoized oracles answer repeats identically") {
  auto desc = ten_element_descriptors();
  MatroidPtr graphic = matroid_from_json(desc[3], 10);
  MatroidPtr transversal = matroid_from_json(desc[4], 10);
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    ElementSet x(10);
    for (int i = 0; i < 10; ++i)
      if (rng.coin()) x.set(i);
    int g = graphic->rank(x);
    int t = transversal->rank(x);
    ElementSet other(10);
    other.set(rng.range(0, 9));
    graphic->rank(other);
    transversal->rank(other);
    CHECK(graphic->rank(x) == g);
    CHECK(transversal->rank(x) == t);
  }
}

TEST_CASE("greedy base spans its window") {
  for (const Json& desc : ten_element_descriptors()) {
    MatroidPtr m = matroid_from_json(desc, 10);
    for (std::uint32_t mask = 0; mask < 1024u; mask += 7) {
      ElementSet within = set_of(mask, 10);
      ElementSet base = greedy_base(*m, within);
      CHECK(base.subset_of(within));
      CHECK(m->rank(base) == base.count());
      CHECK(base.count() == m->rank(within));
    }
  }
}
