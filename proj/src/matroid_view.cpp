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

#include "matsparse/matroid_view.hpp"

#include <algorithm>

#include "matsparse/errors.hpp"

namespace matsparse {

MatroidView::MatroidView(MatroidPtr base)
    : base_(std::move(base)),
      ground_(ElementSet::full(base_->universe_size())),
      contracted_(base_->universe_size()),
      contracted_base_(base_->universe_size()) {}

void MatroidView::check_domain(const ElementSet& x, const char* op) const {
  if (!x.subset_of(ground_)) {
    ElementSet outside = x - ground_;
    throw DomainError(std::string(op) + ": elements " + outside.to_string() +
                      " are outside the ground set");
  }
}

int MatroidView::rank(const ElementSet& x) const {
  check_domain(x, "rank");
  int r = contracted_.empty()
              ? base_->rank(x)
              : base_->rank(x | contracted_base_) - contracted_rank_;
  if (trunc_) r = std::min(r, *trunc_);
  return r;
}

bool MatroidView::is_independent(const ElementSet& x) const {
  return rank(x) == x.count();
}

ElementSet MatroidView::span(const ElementSet& x) const {
  check_domain(x, "span");
  int rx = rank(x);
  ElementSet result(universe_size());
  ground_.for_each([&](int v) {
    if (x.test(v) || rank(x.with(v)) == rx) result.set(v);
  });
  return result;
}

int MatroidView::full_rank() const {
  if (!full_rank_cache_) full_rank_cache_ = rank(ground_);
  return *full_rank_cache_;
}

MatroidView MatroidView::restrict_to(const ElementSet& s) const {
  check_domain(s, "restrict");
  MatroidView v = *this;
  v.ground_ = s;
  v.full_rank_cache_.reset();
  return v;
}

MatroidView MatroidView::contract(const ElementSet& a) const {
  check_domain(a, "contract");
  if (a.empty()) return *this;
  MatroidView v(base_);
  if (trunc_) {
    // Truncation is outermost; push the current view into adapter form so
    // the new contraction applies to the truncated rank function.
    MatroidPtr engine = base_;
    if (!contracted_.empty())
      engine = std::make_shared<ContractedMatroid>(engine, contracted_);
    engine = std::make_shared<TruncatedMatroid>(engine, *trunc_);
    v.base_ = std::move(engine);
    v.contracted_ = a;
  } else {
    v.base_ = base_;
    v.contracted_ = contracted_ | a;
  }
  v.contracted_base_ = greedy_base(*v.base_, v.contracted_);
  v.contracted_rank_ = v.contracted_base_.count();
  v.ground_ = ground_ - a;
  return v;
}

MatroidView MatroidView::truncate(int r) const {
  if (r < 0) throw DomainError("truncate: negative rank limit");
  MatroidView v = *this;
  v.trunc_ = trunc_ ? std::min(*trunc_, r) : r;
  v.full_rank_cache_.reset();
  return v;
}

const LaminarForm* MatroidView::fast_laminar_form() const {
  if (!contracted_.empty()) return nullptr;
  return base_->laminar_form();
}

}  // namespace matsparse
