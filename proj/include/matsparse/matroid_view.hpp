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

#ifndef MATSPARSE_MATROID_VIEW_HPP_
#define MATSPARSE_MATROID_VIEW_HPP_

#include <optional>

#include "matsparse/matroid.hpp"

namespace matsparse {

// A matroid as seen through restriction, contraction and truncation, sharing
// one underlying rank engine. Consecutive contractions collapse into one set;
// truncation applies outermost, so contracting after truncating rebuilds the
// engine through adapters to keep the algebra exact.
class MatroidView {
 public:
  explicit MatroidView(MatroidPtr base);

  int universe_size() const { return base_->universe_size(); }
  const ElementSet& ground() const { return ground_; }
  const Matroid& base() const { return *base_; }
  const MatroidPtr& base_ptr() const { return base_; }
  const ElementSet& contracted() const { return contracted_; }
  bool has_contraction() const { return !contracted_.empty(); }
  std::optional<int> truncation() const { return trunc_; }

  // x must lie inside ground(); raises DomainError otherwise.
  int rank(const ElementSet& x) const;
  bool is_independent(const ElementSet& x) const;
  // {v in ground : rank(x + v) == rank(x)}; x must lie inside ground().
  ElementSet span(const ElementSet& x) const;
  int full_rank() const;

  MatroidView restrict_to(const ElementSet& s) const;
  MatroidView contract(const ElementSet& a) const;
  MatroidView truncate(int r) const;

  // True when the view can take the tree-normal-form decomposition route:
  // the base has a laminar form and nothing was contracted. An outstanding
  // truncation is folded into the root capacity by the caller.
  const LaminarForm* fast_laminar_form() const;

 private:
  void check_domain(const ElementSet& x, const char* op) const;

  MatroidPtr base_;
  ElementSet ground_;
  ElementSet contracted_;       // disjoint from ground_
  ElementSet contracted_base_;  // greedy base of contracted_
  int contracted_rank_ = 0;
  std::optional<int> trunc_;
  mutable std::optional<int> full_rank_cache_;
};

}  // namespace matsparse

#endif  // MATSPARSE_MATROID_VIEW_HPP_
