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

#ifndef MATSPARSE_RATIONAL_HPP_
#define MATSPARSE_RATIONAL_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace matsparse {

// All density and potential arithmetic is exact; no floating point anywhere
// in the algorithms.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat rat(long long p, long long q = 1) { return Rat(p, q); }

// Canonical "p/q" in lowest terms, "q" always present ("5/1", "-3/2").
std::string rat_to_string(const Rat& r);

// Accepts "p/q", a plain integer, or a decimal literal like "0.25"
// (converted exactly). Throws ValidationError on malformed input.
Rat rat_parse(const std::string& text);

double rat_to_double(const Rat& r);

// |U| / rank(U) with the two distinguished values: 0 for the empty set and
// +infinity for a nonempty set of rank zero.
struct Density {
  bool infinite = false;
  Rat value = 0;

  static Density zero() { return {}; }
  static Density infinity() { return {true, 0}; }
  static Density ratio(long long size, long long rank);
  static Density finite(const Rat& v) { return {false, v}; }

  bool is_zero() const { return !infinite && value == 0; }

  bool operator==(const Density& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
  bool operator<(const Density& o) const {
    if (infinite) return false;
    if (o.infinite) return true;
    return value < o.value;
  }
  bool operator<=(const Density& o) const { return *this < o || *this == o; }

  std::string to_string() const;
};

}  // namespace matsparse

#endif  // MATSPARSE_RATIONAL_HPP_
