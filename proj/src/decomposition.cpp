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

#include "matsparse/decomposition.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "matsparse/errors.hpp"

namespace matsparse {

namespace {

std::atomic<long long> g_decompose_calls{0};

// ---------------------------------------------------------------------------
// Tree-form route. For a laminar tree with node capacities, the maximal
// minimizers of rank(S) - theta*|S| over theta in [0,1] are cut families in
// the tree, and each node enters the cut at the first theta where its
// absorption profile
//     g_a(theta) = min(cap_a, sum_children g_b(theta) + own_count * theta)
// reaches cap_a. An element's level is the smallest saturation point among
// its ancestors (1 if none saturates), and the level sets are exactly the
// decomposition layers with density 1/level.
// ---------------------------------------------------------------------------

// Piecewise linear concave increasing function on [0,1] with g(0) = 0.
struct Seg {
  Rat start, value, slope;
};
using PL = std::vector<Seg>;

Rat pl_value(const PL& g, std::size_t i, const Rat& theta) {
  return g[i].value + g[i].slope * (theta - g[i].start);
}

// Sums the children profiles and adds own_count * theta.
PL pl_combine(const std::vector<const PL*>& children, int own_count) {
  std::vector<Rat> starts{Rat(0)};
  for (const PL* c : children)
    for (const Seg& s : *c) starts.push_back(s.start);
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());

  std::vector<std::size_t> pos(children.size(), 0);
  PL out;
  for (const Rat& t : starts) {
    Rat value = Rat(own_count) * t;
    Rat slope = own_count;
    for (std::size_t c = 0; c < children.size(); ++c) {
      const PL& g = *children[c];
      while (pos[c] + 1 < g.size() && g[pos[c] + 1].start <= t) ++pos[c];
      value += pl_value(g, pos[c], t);
      slope += g[pos[c]].slope;
    }
    if (!out.empty() && out.back().slope == slope) continue;
    out.push_back({t, value, slope});
  }
  return out;
}

// Caps the profile at cap; reports the saturation point if it lies in [0,1].
void pl_cap(PL* g, int cap, bool* saturates, Rat* tau) {
  Rat c(cap);
  for (std::size_t i = 0; i < g->size(); ++i) {
    const Seg& s = (*g)[i];
    Rat end = (i + 1 < g->size()) ? (*g)[i + 1].start : Rat(1);
    Rat end_value = pl_value(*g, i, end);
    if (end_value < c) continue;
    Rat t = (s.value >= c) ? s.start : s.start + (c - s.value) / s.slope;
    g->resize(i + 1);
    if ((*g)[i].start == t)
      (*g)[i] = {t, c, Rat(0)};
    else
      g->push_back({t, c, Rat(0)});
    *saturates = true;
    *tau = t;
    return;
  }
  *saturates = false;
}

// Per-element levels (the theta at which the element joins the maximal
// minimizer), capped at 1.
std::vector<Rat> tree_levels(const LaminarForm& form, const ElementSet& ground,
                             int n) {
  int nodes = form.node_count();
  std::vector<int> own(nodes, 0);
  ground.for_each([&](int v) { ++own[form.node_of[v]]; });

  std::vector<std::vector<int>> children(nodes);
  for (int a = 1; a < nodes; ++a) children[form.parent[a]].push_back(a);

  std::vector<int> order(nodes);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return form.depth[a] > form.depth[b]; });

  std::vector<PL> profile(nodes);
  std::vector<bool> saturates(nodes, false);
  std::vector<Rat> tau(nodes);
  for (int a : order) {
    std::vector<const PL*> kids;
    kids.reserve(children[a].size());
    for (int b : children[a]) kids.push_back(&profile[b]);
    profile[a] = pl_combine(kids, own[a]);
    bool sat = false;
    Rat t;
    pl_cap(&profile[a], form.capacity[a], &sat, &t);
    saturates[a] = sat;
    tau[a] = t;
  }

  Rat beyond(2);  // sentinel past the theta domain
  std::vector<Rat> node_level(nodes);
  for (int a = 0; a < nodes; ++a) {  // parents precede children by index
    Rat up = (form.parent[a] == -1) ? beyond : node_level[form.parent[a]];
    Rat here = saturates[a] ? tau[a] : beyond;
    node_level[a] = std::min(up, here);
  }

  std::vector<Rat> level(n, Rat(1));
  ground.for_each([&](int v) {
    level[v] = std::min(node_level[form.node_of[v]], Rat(1));
    if (level[v] == 0)
      throw DomainError("decompose requires a loop-free view (element " +
                        std::to_string(v) + " is a loop)");
  });
  return level;
}

std::vector<ElementSet> tree_layers(const MatroidView& view, int n) {
  const LaminarForm* base_form = view.fast_laminar_form();
  check_internal(base_form != nullptr, "tree route needs a laminar form");
  LaminarForm form = *base_form;
  if (view.truncation())
    form.capacity[0] = std::min(form.capacity[0], *view.truncation());

  std::vector<Rat> level = tree_levels(form, view.ground(), n);
  std::map<Rat, ElementSet> groups;  // ascending theta = descending density
  view.ground().for_each([&](int v) {
    auto [it, fresh] = groups.try_emplace(level[v], n);
    it->second.set(v);
  });
  std::vector<ElementSet> layers;
  layers.reserve(groups.size());
  for (auto& [theta, members] : groups) layers.push_back(std::move(members));
  return layers;
}

// ---------------------------------------------------------------------------
// Generic route: peel maximum cardinality densest subsets by Dinkelbach
// iteration on h(S) = p*rank(S) - q*|S|. Small grounds enumerate submasks
// against a lazily filled rank table; larger grounds use the min-norm point
// solver. Minor ranks come from rank(S + prefix) - rank(prefix).
// ---------------------------------------------------------------------------

std::vector<ElementSet> generic_layers_masked(const MatroidView& view, int n) {
  std::vector<int> ids = view.ground().to_ids();
  int m = static_cast<int>(ids.size());
  check_internal(m <= 18, "mask route on an oversized ground");
  std::uint32_t full = (m == 0) ? 0u : ((1u << m) - 1u);
  std::vector<signed char> tab(std::size_t(1) << m, -1);
  auto rank_of = [&](std::uint32_t mask) -> int {
    signed char& slot = tab[mask];
    if (slot < 0) {
      ElementSet s(n);
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) s.set(ids[i]);
      slot = static_cast<signed char>(view.rank(s));
    }
    return slot;
  };

  std::vector<ElementSet> layers;
  std::uint32_t prefix = 0;
  int pr = 0;
  int total = rank_of(full);
  while (prefix != full) {
    std::uint32_t rest = full & ~prefix;
    int rank_rest = total - pr;
    if (rank_rest == 0)
      throw DomainError("decompose requires a loop-free view");
    Rat rho = rat(std::popcount(rest), rank_rest);
    std::uint32_t layer = 0;
    for (int iter = 0;; ++iter) {
      check_internal(iter <= m * m + 2, "densest subset iteration overran");
      long long p = numerator(rho).convert_to<long long>();
      long long q = denominator(rho).convert_to<long long>();
      long long best = 0;
      std::uint32_t arg = 0;
      for (std::uint32_t s = rest;; s = (s - 1) & rest) {
        if (s) {
          long long v = p * (rank_of(s | prefix) - pr) -
                        q * static_cast<long long>(std::popcount(s));
          if (v < best) {
            best = v;
            arg = s;
          } else if (v == best) {
            arg |= s;  // minimizers are closed under union
          }
        }
        if (s == 0) break;
      }
      check_internal(
          arg == 0 || p * (rank_of(arg | prefix) - pr) -
                              q * static_cast<long long>(std::popcount(arg)) ==
                          best,
          "union of densest witnesses lost optimality");
      if (best == 0) {
        layer = arg;
        break;
      }
      int rank_arg = rank_of(arg | prefix) - pr;
      if (rank_arg == 0)
        throw DomainError("decompose requires a loop-free view");
      Rat next = rat(std::popcount(arg), rank_arg);
      check_internal(next > rho, "densest subset iteration must climb");
      rho = next;
    }
    check_internal(layer != 0, "empty decomposition layer");
    ElementSet members(n);
    for (int i = 0; i < m; ++i)
      if (layer & (1u << i)) members.set(ids[i]);
    layers.push_back(members);
    prefix |= layer;
    pr = rank_of(prefix);
  }
  return layers;
}

std::vector<ElementSet> generic_layers_minnorm(const MatroidView& view,
                                               int n) {
  std::vector<ElementSet> layers;
  ElementSet prefix(n);
  int pr = 0;
  int total = view.full_rank();
  ElementSet rest = view.ground();
  while (!rest.empty()) {
    int rank_rest = total - pr;
    if (rank_rest == 0)
      throw DomainError("decompose requires a loop-free view");
    Rat rho = rat(rest.count(), rank_rest);
    ElementSet layer(n);
    int m = rest.count();
    for (int iter = 0;; ++iter) {
      check_internal(iter <= m * m + 2, "densest subset iteration overran");
      Rat p = Rat(numerator(rho));
      Rat q = Rat(denominator(rho));
      auto f = [&](const ElementSet& s) -> Rat {
        return p * (view.rank(s | prefix) - pr) - q * Rat(s.count());
      };
      SubmodularMin res = minimize_submodular(n, rest, f, SfmMethod::kMinNorm);
      if (res.value == 0) {
        layer = res.maximal_minimizer;
        break;
      }
      check_internal(res.value < 0, "densest subset witness undervalued");
      int rank_arg = view.rank(res.maximal_minimizer | prefix) - pr;
      if (rank_arg == 0)
        throw DomainError("decompose requires a loop-free view");
      Rat next = rat(res.maximal_minimizer.count(), rank_arg);
      check_internal(next > rho, "densest subset iteration must climb");
      rho = next;
    }
    check_internal(!layer.empty(), "empty decomposition layer");
    layers.push_back(layer);
    prefix |= layer;
    pr = view.rank(prefix);
    rest -= layer;
  }
  return layers;
}

// Shared assembly: prefixes, ranks, densities and the structural invariants
// (partition of the ground, integral layer ranks, strictly falling density).
Decomposition assemble(const MatroidView& view,
                       std::vector<ElementSet> member_sets) {
  Decomposition d;
  d.n = view.universe_size();
  d.ground = view.ground();
  d.layer_of.assign(d.n, -1);
  ElementSet prefix(d.n);
  int pr = 0;
  Rat prev_density;
  for (std::size_t j = 0; j < member_sets.size(); ++j) {
    ElementSet& members = member_sets[j];
    check_internal(!members.empty() && members.subset_of(d.ground) &&
                       !members.intersects(prefix),
                   "decomposition layers must partition the ground");
    prefix |= members;
    int rank = view.rank(prefix);
    DecompositionLayer layer;
    layer.members = members;
    layer.rank = rank - pr;
    check_internal(layer.rank > 0, "decomposition layer of rank zero");
    layer.density = rat(members.count(), layer.rank);
    check_internal(layer.density >= 1, "layer density below one");
    check_internal(j == 0 || layer.density < prev_density,
                   "layer densities must strictly decrease");
    prev_density = layer.density;
    members.for_each([&](int v) { d.layer_of[v] = static_cast<int>(j); });
    d.layers.push_back(std::move(layer));
    d.prefixes.push_back(prefix);
    d.prefix_ranks.push_back(rank);
    pr = rank;
  }
  check_internal(prefix == d.ground, "decomposition must cover the ground");
  return d;
}

}  // namespace

const Rat& Decomposition::member_density(int v) const {
  check_internal(v >= 0 && v < n && layer_of[v] >= 0,
                 "member_density outside the decomposed set");
  return layers[layer_of[v]].density;
}

Decomposition decompose(const MatroidView& view, DecomposeRoute route,
                        SfmMethod sfm) {
  g_decompose_calls.fetch_add(1, std::memory_order_relaxed);
  int n = view.universe_size();
  if (route == DecomposeRoute::kAuto)
    route = view.fast_laminar_form() ? DecomposeRoute::kTreeForm
                                     : DecomposeRoute::kGeneric;
  std::vector<ElementSet> member_sets;
  if (route == DecomposeRoute::kTreeForm) {
    if (!view.fast_laminar_form())
      throw DomainError("view has no tree form to decompose with");
    member_sets = tree_layers(view, n);
    Decomposition d = assemble(view, std::move(member_sets));
    return d;
  }
  bool masked = (sfm == SfmMethod::kExhaustive) ||
                (sfm == SfmMethod::kAuto && view.ground().count() <= 18);
  member_sets = masked ? generic_layers_masked(view, n)
                       : generic_layers_minnorm(view, n);
  return assemble(view, std::move(member_sets));
}

std::pair<ElementSet, Density> densest_subset(const MatroidView& view,
                                              DecomposeRoute route,
                                              SfmMethod sfm) {
  if (view.ground().empty())
    return {ElementSet(view.universe_size()), Density::zero()};
  Decomposition d = decompose(view, route, sfm);
  return {d.layers[0].members, Density::finite(d.layers[0].density)};
}

Rat associated_density(const MatroidView& view, const Decomposition& d,
                       int v) {
  check_internal(v >= 0 && v < d.n, "associated_density outside the universe");
  if (d.layer_of[v] >= 0) return d.layers[d.layer_of[v]].density;
  int k = d.layer_count();
  if (k == 0) return Rat(0);
  ElementSet just_v = ElementSet::of(d.n, {v});
  auto spanned_by = [&](int j) {
    return view.rank(d.prefixes[j] | just_v) == d.prefix_ranks[j];
  };
  if (!spanned_by(k - 1)) return Rat(0);
  int lo = 0, hi = k - 1;  // smallest prefix spanning v
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (spanned_by(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return d.layers[lo].density;
}

std::vector<Rat> associated_density_table(const MatroidView& view,
                                          const Decomposition& d) {
  std::vector<Rat> table(d.n, Rat(0));
  view.ground().for_each(
      [&](int v) { table[v] = associated_density(view, d, v); });
  return table;
}

long long decompose_calls() {
  return g_decompose_calls.load(std::memory_order_relaxed);
}

void reset_decompose_calls() {
  g_decompose_calls.store(0, std::memory_order_relaxed);
}

}  // namespace matsparse
