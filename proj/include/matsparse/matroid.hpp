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

#ifndef MATSPARSE_MATROID_HPP_
#define MATSPARSE_MATROID_HPP_

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "matsparse/element_set.hpp"

namespace matsparse {

// Tree normal form shared by the families whose independent sets are exactly
// the sets meeting a family of nested counting constraints. Node 0 is the
// root; every element is attached to its deepest enclosing node.
struct LaminarForm {
  std::vector<int> parent;   // per node; -1 for the root
  std::vector<int> capacity; // per node; root capacity bounds the total rank
  std::vector<int> node_of;  // per element
  std::vector<int> depth;    // per node; root has depth 0

  int node_count() const { return static_cast<int>(parent.size()); }
};

// Rank oracle over a fixed universe [0, n). Implementations must be
// thread-safe for concurrent rank queries.
class Matroid {
 public:
  virtual ~Matroid() = default;
  virtual int universe_size() const = 0;
  virtual int rank(const ElementSet& x) const = 0;
  virtual std::string family() const = 0;
  // Non-null for families that admit the tree normal form; enables the fast
  // decomposition route.
  virtual const LaminarForm* laminar_form() const { return nullptr; }
};

using MatroidPtr = std::shared_ptr<const Matroid>;

class UniformMatroid : public Matroid {
 public:
  UniformMatroid(int n, int r);
  int universe_size() const override { return n_; }
  int rank(const ElementSet& x) const override;
  std::string family() const override;
  const LaminarForm* laminar_form() const override { return &form_; }
  int limit() const { return r_; }

 private:
  int n_, r_;
  LaminarForm form_;
};

class PartitionMatroid : public Matroid {
 public:
  // blocks must be disjoint and cover [0, n); one capacity per block.
  PartitionMatroid(int n, const std::vector<std::vector<int>>& blocks,
                   const std::vector<int>& capacities);
  int universe_size() const override { return n_; }
  int rank(const ElementSet& x) const override;
  std::string family() const override;
  const LaminarForm* laminar_form() const override { return &form_; }

  int block_count() const { return static_cast<int>(capacity_.size()); }
  int block_of(int v) const { return block_of_[v]; }
  int block_capacity(int b) const { return capacity_[b]; }

 private:
  int n_;
  std::vector<int> block_of_;
  std::vector<int> capacity_;
  LaminarForm form_;
};

class LaminarMatroid : public Matroid {
 public:
  // Each constraint is (member set, capacity); the sets must be pairwise
  // nested or disjoint. A constraint on the whole universe acts as the root;
  // otherwise an unbounded implicit root is added.
  LaminarMatroid(int n, const std::vector<std::pair<ElementSet, int>>& constraints);
  int universe_size() const override { return n_; }
  int rank(const ElementSet& x) const override;
  std::string family() const override;
  const LaminarForm* laminar_form() const override { return &form_; }

 private:
  int n_;
  LaminarForm form_;
};

struct WordVecHash {
  std::size_t operator()(const std::vector<std::uint64_t>& w) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t x : w) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Bounded exact-key cache for rank oracles whose single query is costly.
using RankMemo = std::unordered_map<std::vector<std::uint64_t>, int, WordVecHash>;

class GraphicMatroid : public Matroid {
 public:
  // Element i is the edge (ends[i].first, ends[i].second) of a multigraph on
  // vertices [0, vertex_count). Self-loops are rejected.
  GraphicMatroid(int n, int vertex_count,
                 const std::vector<std::pair<int, int>>& ends);
  int universe_size() const override { return n_; }
  int rank(const ElementSet& x) const override;
  std::string family() const override;
  int vertex_count() const { return vertex_count_; }
  const std::vector<std::pair<int, int>>& edges() const { return ends_; }

 private:
  int rank_uncached(const ElementSet& x) const;

  int n_, vertex_count_;
  std::vector<std::pair<int, int>> ends_;
  mutable std::mutex memo_mu_;
  mutable RankMemo memo_;
};

class TransversalMatroid : public Matroid {
 public:
  // adjacency[v] lists the right-side vertices element v may be matched to.
  TransversalMatroid(int n, int right_count,
                     const std::vector<std::vector<int>>& adjacency);
  int universe_size() const override { return n_; }
  int rank(const ElementSet& x) const override;
  std::string family() const override;
  const std::vector<std::vector<int>>& adjacency() const { return adj_; }
  int right_count() const { return right_count_; }

 private:
  int rank_uncached(const ElementSet& x) const;

  int n_, right_count_;
  std::vector<std::vector<int>> adj_;
  mutable std::mutex memo_mu_;
  mutable RankMemo memo_;
};

class TruncatedMatroid : public Matroid {
 public:
  TruncatedMatroid(MatroidPtr inner, int limit);
  int universe_size() const override { return inner_->universe_size(); }
  int rank(const ElementSet& x) const override;
  std::string family() const override;
  const LaminarForm* laminar_form() const override {
    return form_ ? &*form_ : nullptr;
  }
  const MatroidPtr& inner() const { return inner_; }
  int limit() const { return limit_; }

 private:
  MatroidPtr inner_;
  int limit_;
  std::optional<LaminarForm> form_;
};

// Minor with a fixed set contracted; used only when view composition cannot
// stay in normalized fields. rank(X) = inner_rank(X | base) - |base| for a
// base of the contracted set.
class ContractedMatroid : public Matroid {
 public:
  ContractedMatroid(MatroidPtr inner, const ElementSet& contracted);
  int universe_size() const override { return inner_->universe_size(); }
  int rank(const ElementSet& x) const override;
  std::string family() const override;
  const ElementSet& contracted() const { return contracted_; }

 private:
  MatroidPtr inner_;
  ElementSet contracted_;
  ElementSet base_;
  int base_rank_;
};

// Greedy base in ascending id order; deterministic.
ElementSet greedy_base(const Matroid& m, const ElementSet& within);

}  // namespace matsparse

#endif  // MATSPARSE_MATROID_HPP_
