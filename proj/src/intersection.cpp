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

#include "matsparse/intersection.hpp"

#include <bit>
#include <cstdint>
#include <deque>
#include <vector>

#include "matsparse/errors.hpp"

namespace matsparse {

namespace {

void check_same_ground(const MatroidView& m1, const MatroidView& m2) {
  check_internal(m1.universe_size() == m2.universe_size() &&
                     m1.ground() == m2.ground(),
                 "intersection needs matching grounds");
}

// One augmentation round. Returns true after growing sol by one element;
// fills reached with the exchange-graph vertices reachable from the sources
// when no augmenting path exists.
bool augment(const MatroidView& m1, const MatroidView& m2, ElementSet* sol,
             ElementSet* reached) {
  int n = m1.universe_size();
  const ElementSet& ground = m1.ground();
  int size = sol->count();

  // Sources extend sol in m1, sinks in m2; a common extension augments
  // directly (a path of length zero).
  std::vector<int> sources;
  ElementSet sink(n);
  bool any_sink = false;
  std::vector<int> outside = (ground - *sol).to_ids();
  for (int v : outside) {
    bool s1 = m1.rank(sol->with(v)) == size + 1;
    bool s2 = m2.rank(sol->with(v)) == size + 1;
    if (s1 && s2) {
      sol->set(v);
      return true;
    }
    if (s1) sources.push_back(v);
    if (s2) {
      sink.set(v);
      any_sink = true;
    }
  }

  ElementSet visited(n);
  std::vector<int> parent(n, -1);
  std::deque<int> queue;
  for (int v : sources) {
    visited.set(v);
    queue.push_back(v);
  }
  int found = -1;
  while (found < 0 && !queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (!sol->test(u)) {
      if (!any_sink) continue;  // no arc can end a path anyway
      // u is outside sol: arcs u -> y for y in sol with sol - y + u
      // independent in m2 (the fundamental circuit of u, minus u).
      ElementSet base = sol->with(u);
      std::vector<int> members = sol->to_ids();
      for (int y : members) {
        if (visited.test(y) || m2.rank(base.without(y)) != size) continue;
        visited.set(y);
        parent[y] = u;
        queue.push_back(y);
      }
    } else {
      // u in sol: arcs u -> x for x outside with sol - u + x independent
      // in m1.
      ElementSet base = sol->without(u);
      for (int x : outside) {
        if (visited.test(x) || m1.rank(base.with(x)) != size) continue;
        visited.set(x);
        parent[x] = u;
        if (sink.test(x)) {
          found = x;
          break;
        }
        queue.push_back(x);
      }
    }
  }
  if (found < 0) {
    *reached = visited;
    return false;
  }
  for (int v = found; v != -1; v = parent[v]) {
    if (sol->test(v))
      sol->reset(v);
    else
      sol->set(v);
  }
  return true;
}

}  // namespace

IntersectionResult max_common_independent(const MatroidView& m1,
                                          const MatroidView& m2,
                                          const ElementSet* warm_start) {
  check_same_ground(m1, m2);
  int n = m1.universe_size();
  ElementSet sol(n);
  if (warm_start) {
    check_internal(is_common_independent(m1, m2, *warm_start),
                   "warm start must be common independent");
    sol = *warm_start;
  }
  ElementSet reached(n);
  while (augment(m1, m2, &sol, &reached)) {
  }
  IntersectionResult out;
  out.solution = sol;
  out.cover2 = reached;
  out.cover1 = m1.ground() - reached;
  check_internal(
      m1.rank(out.cover1) + m2.rank(out.cover2) == out.solution.count(),
      "dual certificate does not match the solution size");
  return out;
}

ElementSet greedy_common_independent(const MatroidView& m1,
                                     const MatroidView& m2,
                                     const std::vector<int>& order) {
  check_same_ground(m1, m2);
  ElementSet sol(m1.universe_size());
  int size = 0;
  for (int v : order) {
    ElementSet next = sol.with(v);
    if (m1.rank(next) == size + 1 && m2.rank(next) == size + 1) {
      sol = next;
      ++size;
    }
  }
  return sol;
}

bool is_common_independent(const MatroidView& m1, const MatroidView& m2,
                           const ElementSet& x) {
  int c = x.count();
  return m1.rank(x) == c && m2.rank(x) == c;
}

int brute_common_independent_size(const MatroidView& m1,
                                  const MatroidView& m2) {
  check_same_ground(m1, m2);
  std::vector<int> ids = m1.ground().to_ids();
  int m = static_cast<int>(ids.size());
  if (m > 18)
    throw GateError("exhaustive intersection gated at 18 ground elements");
  int n = m1.universe_size();
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    int c = std::popcount(mask);
    if (c <= best) continue;
    ElementSet s(n);
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) s.set(ids[i]);
    if (is_common_independent(m1, m2, s)) best = c;
  }
  return best;
}

std::pair<ElementSet, int> brute_dual_cover(const MatroidView& m1,
                                            const MatroidView& m2) {
  check_same_ground(m1, m2);
  std::vector<int> ids = m1.ground().to_ids();
  int m = static_cast<int>(ids.size());
  if (m > 16) throw GateError("exhaustive dual cover gated at 16 elements");
  int n = m1.universe_size();
  int best = -1;
  ElementSet arg(n);
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    ElementSet a(n);
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) a.set(ids[i]);
    int value = m1.rank(a) + m2.rank(m1.ground() - a);
    if (best < 0 || value < best) {
      best = value;
      arg = a;
    }
  }
  return {arg, best};
}

}  // namespace matsparse
