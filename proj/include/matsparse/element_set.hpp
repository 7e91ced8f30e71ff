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

#ifndef MATSPARSE_ELEMENT_SET_HPP_
#define MATSPARSE_ELEMENT_SET_HPP_

#include <bit>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace matsparse {

// Subset of a fixed universe [0, n). Value type backed by 64-bit words; the
// word encoding doubles as the canonical encoding for hashing and ordering.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(int universe)
      : n_(universe), w_((universe + 63) / 64, 0) {
    assert(universe >= 0);
  }

  static ElementSet of(int universe, std::initializer_list<int> ids) {
    ElementSet s(universe);
    for (int v : ids) s.set(v);
    return s;
  }

  static ElementSet from_ids(int universe, const std::vector<int>& ids) {
    ElementSet s(universe);
    for (int v : ids) s.set(v);
    return s;
  }

  static ElementSet full(int universe) {
    ElementSet s(universe);
    for (size_t i = 0; i < s.w_.size(); ++i) s.w_[i] = ~0ull;
    s.trim();
    return s;
  }

  int universe_size() const { return n_; }

  bool test(int v) const {
    assert(v >= 0 && v < n_);
    return (w_[v >> 6] >> (v & 63)) & 1;
  }

  void set(int v) {
    assert(v >= 0 && v < n_);
    w_[v >> 6] |= 1ull << (v & 63);
  }

  void reset(int v) {
    assert(v >= 0 && v < n_);
    w_[v >> 6] &= ~(1ull << (v & 63));
  }

  ElementSet with(int v) const {
    ElementSet s = *this;
    s.set(v);
    return s;
  }

  ElementSet without(int v) const {
    ElementSet s = *this;
    s.reset(v);
    return s;
  }

  int count() const {
    int c = 0;
    for (std::uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  bool empty() const {
    for (std::uint64_t w : w_)
      if (w) return false;
    return true;
  }

  bool subset_of(const ElementSet& o) const {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  bool intersects(const ElementSet& o) const {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  ElementSet& operator|=(const ElementSet& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }

  ElementSet& operator&=(const ElementSet& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }

  // Set difference.
  ElementSet& operator-=(const ElementSet& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  ElementSet& operator^=(const ElementSet& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }

  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }
  friend ElementSet operator^(ElementSet a, const ElementSet& b) { return a ^= b; }

  bool operator==(const ElementSet& o) const = default;

  // Total order on the canonical encoding; used only for determinism.
  bool operator<(const ElementSet& o) const {
    assert(n_ == o.n_);
    for (size_t i = w_.size(); i-- > 0;)
      if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
    return false;
  }

  // Lowest element, or -1 when empty.
  int first() const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return static_cast<int>(i * 64 + std::countr_zero(w_[i]));
    return -1;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t w = w_[i];
      while (w) {
        f(static_cast<int>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_ids() const {
    std::vector<int> ids;
    ids.reserve(count());
    for_each([&](int v) { ids.push_back(v); });
    return ids;
  }

  std::uint64_t content_hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t w : w_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h ^ static_cast<std::uint64_t>(n_);
  }

  const std::vector<std::uint64_t>& words() const { return w_; }

  std::string to_string() const {
    std::string s = "[";
    bool sep = false;
    for_each([&](int v) {
      if (sep) s += ",";
      s += std::to_string(v);
      sep = true;
    });
    return s + "]";
  }

 private:
  void trim() {
    int tail = n_ & 63;
    if (tail && !w_.empty()) w_.back() &= (1ull << tail) - 1;
  }

  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace matsparse

#endif  // MATSPARSE_ELEMENT_SET_HPP_
