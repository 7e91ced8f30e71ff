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

#include "matsparse/submodular.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "matsparse/errors.hpp"

namespace matsparse {

namespace {

constexpr int kExhaustiveLimit = 18;
constexpr int kMajorCycleLimit = 20000;

using Vec = std::vector<Rat>;

Rat dot(const Vec& a, const Vec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

SubmodularMin minimize_exhaustive(
    int n, const ElementSet& ground,
    const std::function<Rat(const ElementSet&)>& f) {
  std::vector<int> ids = ground.to_ids();
  int m = static_cast<int>(ids.size());
  if (m > kExhaustiveLimit)
    throw InternalError("exhaustive submodular minimization on " +
                        std::to_string(m) + " elements");
  Rat best = 0;  // empty set
  ElementSet arg_union(n);
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    ElementSet s(n);
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) s.set(ids[i]);
    Rat v = f(s);
    if (v < best) {
      best = v;
      arg_union = s;
    } else if (v == best) {
      arg_union |= s;  // minimizers are closed under union
    }
  }
  check_internal(arg_union.empty() || f(arg_union) == best,
                 "union of submodular minimizers must stay minimal");
  return {arg_union, best};
}

// Greedy vertex of the base polytope along the given element order.
Vec greedy_vertex(int n, const std::vector<int>& ids,
                  const std::vector<int>& order,
                  const std::function<Rat(const ElementSet&)>& f) {
  Vec q(ids.size());
  ElementSet prefix(n);
  Rat prev = 0;
  for (int pos : order) {
    prefix.set(ids[pos]);
    Rat cur = f(prefix);
    q[pos] = cur - prev;
    prev = cur;
  }
  return q;
}

// Solves for the affine minimizer y = sum mu_i s_i, sum mu_i = 1 of ||y||^2
// over the affine hull of the vertices. If the vertices are affinely
// dependent the Gram system is singular; returns the index of a dependent
// vertex instead so the caller can drop it, or -1 on success.
int affine_minimizer(const std::vector<Vec>& verts, Vec* mu) {
  int k = static_cast<int>(verts.size());
  // Augmented system [G 1; 1^T 0] [mu; nu] = [0; 1].
  std::vector<Vec> a(k + 1, Vec(k + 2, Rat(0)));
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      Rat g = dot(verts[i], verts[j]);
      a[i][j] = g;
      a[j][i] = g;
    }
  for (int i = 0; i < k; ++i) {
    a[i][k] = 1;
    a[k][i] = 1;
  }
  a[k][k + 1] = 1;
  std::vector<int> col_of_row(k + 1, -1);
  std::vector<bool> col_used(k + 1, false);
  int row = 0;
  for (int col = 0; col <= k; ++col) {
    int piv = -1;
    for (int r = row; r <= k; ++r)
      if (a[r][col] != 0 && (piv == -1 || abs(a[r][col]) > abs(a[piv][col]))) piv = r;
    if (piv == -1) {
      // Column col is dependent; for col < k that names vertex col.
      if (col < k) return col;
      throw InternalError("degenerate affine system in min-norm solve");
    }
    std::swap(a[piv], a[row]);
    for (int r = 0; r <= k; ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rat factor = a[r][col] / a[row][col];
      for (int c = col; c <= k + 1; ++c) a[r][c] -= factor * a[row][c];
    }
    col_of_row[row] = col;
    col_used[col] = true;
    ++row;
    if (row > k) break;
  }
  if (row <= k) {
    for (int col = 0; col < k; ++col)
      if (!col_used[col]) return col;
    throw InternalError("degenerate affine system in min-norm solve");
  }
  mu->assign(k, Rat(0));
  for (int r = 0; r <= k; ++r) {
    int col = col_of_row[r];
    if (col < k) (*mu)[col] = a[r][k + 1] / a[r][col];
  }
  return -1;
}

SubmodularMin minimize_min_norm(
    int n, const ElementSet& ground,
    const std::function<Rat(const ElementSet&)>& f) {
  std::vector<int> ids = ground.to_ids();
  int m = static_cast<int>(ids.size());
  if (m == 0) return {ElementSet(n), Rat(0)};

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Vec> verts{greedy_vertex(n, ids, order, f)};
  std::vector<Rat> lambda{Rat(1)};
  Vec x = verts[0];

  bool optimal = false;
  for (int major = 0; major < kMajorCycleLimit; ++major) {
    // Linear minimization over the base polytope: greedy along ascending x.
    std::sort(order.begin(), order.end(), [&](int p, int q) {
      if (x[p] != x[q]) return x[p] < x[q];
      return ids[p] < ids[q];
    });
    Vec q = greedy_vertex(n, ids, order, f);
    if (dot(x, x) <= dot(x, q)) {  // exact optimality certificate
      optimal = true;
      break;
    }
    verts.push_back(q);
    lambda.push_back(Rat(0));

    for (int minor = 0;; ++minor) {
      check_internal(minor <= 2 * m + 4, "min-norm minor cycle overran");
      Vec mu;
      int dep = affine_minimizer(verts, &mu);
      if (dep >= 0) {
        verts.erase(verts.begin() + dep);
        lambda.erase(lambda.begin() + dep);
        continue;
      }
      bool interior = true;
      for (const Rat& c : mu)
        if (c <= 0) interior = false;
      if (interior) {
        lambda = mu;
        break;
      }
      // Step from lambda toward mu as far as the convex hull allows, then
      // drop every vertex whose coefficient hits zero.
      Rat t = 1;
      for (std::size_t i = 0; i < mu.size(); ++i)
        if (mu[i] < lambda[i])
          t = std::min(t, Rat(lambda[i] / (lambda[i] - mu[i])));
      for (std::size_t i = 0; i < mu.size(); ++i)
        lambda[i] += t * (mu[i] - lambda[i]);
      for (int i = static_cast<int>(verts.size()) - 1; i >= 0; --i)
        if (lambda[i] <= 0) {
          verts.erase(verts.begin() + i);
          lambda.erase(lambda.begin() + i);
        }
      check_internal(!verts.empty(), "min-norm hull emptied");
    }
    x.assign(m, Rat(0));
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (int j = 0; j < m; ++j) x[j] += lambda[i] * verts[i][j];
  }

  check_internal(optimal, "min-norm point search did not converge");
  Rat value = 0;
  ElementSet arg(n);
  for (int j = 0; j < m; ++j)
    if (x[j] <= 0) {
      value += x[j];
      arg.set(ids[j]);
    }
  check_internal(f(arg) == value, "min-norm certificate mismatch");
  return {arg, value};
}

}  // namespace

SubmodularMin minimize_submodular(
    int n, const ElementSet& ground,
    const std::function<Rat(const ElementSet&)>& f, SfmMethod method) {
  if (method == SfmMethod::kExhaustive ||
      (method == SfmMethod::kAuto && ground.count() <= kExhaustiveLimit))
    return minimize_exhaustive(n, ground, f);
  return minimize_min_norm(n, ground, f);
}

}  // namespace matsparse
