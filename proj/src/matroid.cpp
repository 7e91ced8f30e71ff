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

#include "matsparse/matroid.hpp"

#include <algorithm>
#include <cassert>

#include "matsparse/errors.hpp"

namespace matsparse {

namespace {

// Sparse bottom-up evaluation of the capped counting tree: the rank is the
// root value of val[a] = min(cap[a], direct_count[a] + sum of child values),
// computed only over touched nodes and their ancestors.
int laminar_rank_eval(const LaminarForm& f, const ElementSet& x) {
  // (node, direct count) for nodes with elements of x, then ancestors.
  std::vector<std::pair<int, int>> touched;
  x.for_each([&](int v) {
    int a = f.node_of[v];
    auto it = std::lower_bound(
        touched.begin(), touched.end(), std::make_pair(a, 0),
        [](const auto& l, const auto& r) { return l.first < r.first; });
    if (it != touched.end() && it->first == a)
      ++it->second;
    else
      touched.insert(it, {a, 1});
  });
  if (touched.empty()) return 0;
  // Close under ancestors; duplicates are deduped below.
  std::vector<int> nodes;
  nodes.reserve(touched.size() * 2);
  for (auto& [a, c] : touched) nodes.push_back(a);
  for (size_t i = 0; i < nodes.size(); ++i) {
    int p = f.parent[nodes[i]];
    if (p >= 0) nodes.push_back(p);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  std::vector<int> acc(nodes.size(), 0);
  auto slot = [&](int a) {
    return static_cast<size_t>(
        std::lower_bound(nodes.begin(), nodes.end(), a) - nodes.begin());
  };
  for (auto& [a, c] : touched) acc[slot(a)] += c;

  // Deepest first so children are finished before their parents.
  std::vector<size_t> order(nodes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t l, size_t r) {
    int dl = f.depth[nodes[l]], dr = f.depth[nodes[r]];
    return dl != dr ? dl > dr : nodes[l] < nodes[r];
  });
  int root_val = 0;
  for (size_t i : order) {
    int a = nodes[i];
    int capped = std::min(acc[i], f.capacity[a]);
    if (f.parent[a] < 0)
      root_val = capped;
    else
      acc[slot(f.parent[a])] += capped;
  }
  return root_val;
}

constexpr size_t kMemoLimit = 1 << 17;

}  // namespace

// -- Uniform ----------------------------------------------------------------

UniformMatroid::UniformMatroid(int n, int r) : n_(n), r_(r) {
  if (n < 0) throw ValidationError("uniform: negative universe");
  if (r < 0) throw ValidationError("uniform: negative rank limit");
  form_.parent = {-1};
  form_.capacity = {r};
  form_.node_of.assign(n, 0);
  form_.depth = {0};
}

int UniformMatroid::rank(const ElementSet& x) const {
  return std::min(x.count(), r_);
}

std::string UniformMatroid::family() const {
  return "uniform(" + std::to_string(n_) + "," + std::to_string(r_) + ")";
}

// -- Partition ---------------------------------------------------------------

PartitionMatroid::PartitionMatroid(int n,
                                   const std::vector<std::vector<int>>& blocks,
                                   const std::vector<int>& capacities)
    : n_(n), block_of_(n, -1), capacity_(capacities) {
  if (blocks.size() != capacities.size())
    throw ValidationError("partition: blocks and capacities differ in length");
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (capacities[b] < 0)
      throw ValidationError("partition: negative capacity for block " +
                            std::to_string(b));
    for (int v : blocks[b]) {
      if (v < 0 || v >= n)
        throw ValidationError("partition: element " + std::to_string(v) +
                              " out of range");
      if (block_of_[v] != -1)
        throw ValidationError("partition: element " + std::to_string(v) +
                              " appears in two blocks");
      block_of_[v] = static_cast<int>(b);
    }
  }
  for (int v = 0; v < n; ++v)
    if (block_of_[v] == -1)
      throw ValidationError("partition: element " + std::to_string(v) +
                            " not covered by any block");
  int b = block_count();
  long long total = 0;
  for (int c : capacity_) total += c;
  form_.parent.assign(b + 1, 0);
  form_.parent[0] = -1;
  form_.capacity.assign(b + 1, 0);
  form_.capacity[0] = static_cast<int>(std::min<long long>(total, n));
  form_.depth.assign(b + 1, 1);
  form_.depth[0] = 0;
  for (int i = 0; i < b; ++i) form_.capacity[i + 1] = capacity_[i];
  form_.node_of.resize(n);
  for (int v = 0; v < n; ++v) form_.node_of[v] = block_of_[v] + 1;
}

int PartitionMatroid::rank(const ElementSet& x) const {
  // Count per touched block only.
  std::vector<std::pair<int, int>> cnt;
  x.for_each([&](int v) {
    int b = block_of_[v];
    auto it = std::lower_bound(
        cnt.begin(), cnt.end(), std::make_pair(b, 0),
        [](const auto& l, const auto& r) { return l.first < r.first; });
    if (it != cnt.end() && it->first == b)
      ++it->second;
    else
      cnt.insert(it, {b, 1});
  });
  int r = 0;
  for (auto& [b, c] : cnt) r += std::min(c, capacity_[b]);
  return r;
}

std::string PartitionMatroid::family() const {
  return "partition(" + std::to_string(block_count()) + " blocks)";
}

// -- Laminar -----------------------------------------------------------------

LaminarMatroid::LaminarMatroid(
    int n, const std::vector<std::pair<ElementSet, int>>& constraints)
    : n_(n) {
  std::vector<std::pair<ElementSet, int>> nodes;  // (members, capacity)
  for (const auto& [s, cap] : constraints) {
    if (s.universe_size() != n)
      throw ValidationError("laminar: constraint set universe mismatch");
    if (cap < 0) throw ValidationError("laminar: negative capacity");
    if (s.empty()) continue;  // vacuous
    // Duplicate sets merge to the tighter capacity.
    bool merged = false;
    for (auto& [t, tcap] : nodes)
      if (t == s) {
        tcap = std::min(tcap, cap);
        merged = true;
        break;
      }
    if (!merged) nodes.emplace_back(s, cap);
  }
  for (size_t i = 0; i < nodes.size(); ++i)
    for (size_t j = i + 1; j < nodes.size(); ++j) {
      const ElementSet& a = nodes[i].first;
      const ElementSet& b = nodes[j].first;
      if (a.intersects(b) && !a.subset_of(b) && !b.subset_of(a))
        throw ValidationError(
            "laminar: constraints " + std::to_string(i) + " and " +
            std::to_string(j) + " overlap without nesting (elements " +
            (a & b).to_string() + ")");
    }
  // Ensure an explicit root covering the universe.
  ElementSet universe = ElementSet::full(n);
  bool have_root = false;
  for (auto& [s, cap] : nodes) have_root |= s == universe;
  if (!have_root) nodes.emplace_back(universe, n);

  // Larger sets first; each node's parent is the smallest strict superset.
  std::sort(nodes.begin(), nodes.end(), [](const auto& l, const auto& r) {
    int cl = l.first.count(), cr = r.first.count();
    if (cl != cr) return cl > cr;
    return l.first < r.first;
  });
  int m = static_cast<int>(nodes.size());
  form_.parent.assign(m, -1);
  form_.capacity.resize(m);
  form_.depth.assign(m, 0);
  for (int i = 0; i < m; ++i) form_.capacity[i] = nodes[i].second;
  for (int i = 1; i < m; ++i) {
    for (int j = i - 1; j >= 0; --j)
      if (nodes[i].first.subset_of(nodes[j].first)) {
        form_.parent[i] = j;
        form_.depth[i] = form_.depth[j] + 1;
        break;
      }
    check_internal(form_.parent[i] >= 0, "laminar: missing parent");
  }
  form_.node_of.assign(n, 0);
  // Sorted largest-first, so the last containing node is the deepest.
  for (int i = 0; i < m; ++i)
    nodes[i].first.for_each([&](int v) { form_.node_of[v] = i; });
}

int LaminarMatroid::rank(const ElementSet& x) const {
  return laminar_rank_eval(form_, x);
}

std::string LaminarMatroid::family() const {
  return "laminar(" + std::to_string(form_.node_count()) + " nodes)";
}

// -- Graphic -----------------------------------------------------------------

GraphicMatroid::GraphicMatroid(int n, int vertex_count,
                               const std::vector<std::pair<int, int>>& ends)
    : n_(n), vertex_count_(vertex_count), ends_(ends) {
  if (static_cast<int>(ends.size()) != n)
    throw ValidationError("graphic: one edge per element required");
  for (int i = 0; i < n; ++i) {
    auto [u, v] = ends_[i];
    if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count)
      throw ValidationError("graphic: edge " + std::to_string(i) +
                            " has endpoint out of range");
    if (u == v)
      throw ValidationError("graphic: edge " + std::to_string(i) +
                            " is a self-loop");
  }
}

int GraphicMatroid::rank_uncached(const ElementSet& x) const {
  // Union-find over the touched vertices only.
  std::vector<int> verts;
  x.for_each([&](int e) {
    verts.push_back(ends_[e].first);
    verts.push_back(ends_[e].second);
  });
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::vector<int> uf(verts.size());
  for (size_t i = 0; i < uf.size(); ++i) uf[i] = static_cast<int>(i);
  auto find = [&](int a) {
    while (uf[a] != a) a = uf[a] = uf[uf[a]];
    return a;
  };
  auto local = [&](int v) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) -
                            verts.begin());
  };
  int r = 0;
  x.for_each([&](int e) {
    int a = find(local(ends_[e].first));
    int b = find(local(ends_[e].second));
    if (a != b) {
      uf[a] = b;
      ++r;
    }
  });
  return r;
}

int GraphicMatroid::rank(const ElementSet& x) const {
  if (x.count() < 5) return rank_uncached(x);
  {
    std::lock_guard<std::mutex> lock(memo_mu_);
    auto it = memo_.find(x.words());
    if (it != memo_.end()) return it->second;
  }
  int r = rank_uncached(x);
  {
    std::lock_guard<std::mutex> lock(memo_mu_);
    if (memo_.size() >= kMemoLimit) memo_.clear();
    memo_.emplace(x.words(), r);
  }
  return r;
}

std::string GraphicMatroid::family() const {
  return "graphic(" + std::to_string(vertex_count_) + " vertices," +
         std::to_string(n_) + " edges)";
}

// -- Transversal ---------------------------------------------------------------

TransversalMatroid::TransversalMatroid(
    int n, int right_count, const std::vector<std::vector<int>>& adjacency)
    : n_(n), right_count_(right_count), adj_(adjacency) {
  if (static_cast<int>(adj_.size()) != n)
    throw ValidationError("transversal: one adjacency row per element required");
  for (int v = 0; v < n; ++v) {
    for (int r : adj_[v])
      if (r < 0 || r >= right_count)
        throw ValidationError("transversal: element " + std::to_string(v) +
                              " lists vertex out of range");
    std::vector<int> row = adj_[v];
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end())
      throw ValidationError("transversal: element " + std::to_string(v) +
                            " lists a vertex twice");
  }
}

int TransversalMatroid::rank_uncached(const ElementSet& x) const {
  // Augmenting-path matching, elements in ascending id order.
  std::vector<int> match(right_count_, -1);
  std::vector<char> seen(right_count_, 0);
  std::vector<int> members = x.to_ids();
  int r = 0;
  // Iterative DFS would obscure the standard recursion; sizes stay small.
  auto augment = [&](auto&& self, int v) -> bool {
    for (int t : adj_[v]) {
      if (seen[t]) continue;
      seen[t] = 1;
      if (match[t] == -1 || self(self, match[t])) {
        match[t] = v;
        return true;
      }
    }
    return false;
  };
  for (int v : members) {
    std::fill(seen.begin(), seen.end(), 0);
    if (augment(augment, v)) ++r;
  }
  return r;
}

int TransversalMatroid::rank(const ElementSet& x) const {
  if (x.count() < 3) {
    // Tiny queries are cheaper than the cache.
    return rank_uncached(x);
  }
  {
    std::lock_guard<std::mutex> lock(memo_mu_);
    auto it = memo_.find(x.words());
    if (it != memo_.end()) return it->second;
  }
  int r = rank_uncached(x);
  {
    std::lock_guard<std::mutex> lock(memo_mu_);
    if (memo_.size() >= kMemoLimit) memo_.clear();
    memo_.emplace(x.words(), r);
  }
  return r;
}

std::string TransversalMatroid::family() const {
  return "transversal(" + std::to_string(n_) + "x" +
         std::to_string(right_count_) + ")";
}

// -- Truncated ---------------------------------------------------------------

TruncatedMatroid::TruncatedMatroid(MatroidPtr inner, int limit)
    : inner_(std::move(inner)), limit_(limit) {
  if (limit < 0) throw ValidationError("truncated: negative rank limit");
  if (const LaminarForm* f = inner_->laminar_form()) {
    form_ = *f;
    form_->capacity[0] = std::min(form_->capacity[0], limit_);
  }
}

int TruncatedMatroid::rank(const ElementSet& x) const {
  return std::min(inner_->rank(x), limit_);
}

std::string TruncatedMatroid::family() const {
  return "truncated(" + inner_->family() + "," + std::to_string(limit_) + ")";
}

// -- Contracted --------------------------------------------------------------

ContractedMatroid::ContractedMatroid(MatroidPtr inner,
                                     const ElementSet& contracted)
    : inner_(std::move(inner)), contracted_(contracted) {
  base_ = greedy_base(*inner_, contracted_);
  base_rank_ = base_.count();
}

int ContractedMatroid::rank(const ElementSet& x) const {
  return inner_->rank(x | base_) - base_rank_;
}

std::string ContractedMatroid::family() const {
  return "contracted(" + inner_->family() + ")";
}

ElementSet greedy_base(const Matroid& m, const ElementSet& within) {
  ElementSet base(m.universe_size());
  int r = 0;
  within.for_each([&](int v) {
    base.set(v);
    int nr = m.rank(base);
    if (nr > r)
      r = nr;
    else
      base.reset(v);
  });
  return base;
}

}  // namespace matsparse
