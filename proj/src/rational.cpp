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

#include "matsparse/rational.hpp"

#include <cctype>

#include "matsparse/errors.hpp"

namespace matsparse {

std::string rat_to_string(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

double rat_to_double(const Rat& r) { return r.template convert_to<double>(); }

namespace {

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat rat_parse(const std::string& text) {
  auto bad = [&] { throw ValidationError("malformed rational: '" + text + "'"); };
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string p = text.substr(0, slash), q = text.substr(slash + 1);
    if (!is_integer_literal(p) || !is_integer_literal(q)) bad();
    BigInt den(q);
    if (den == 0) bad();
    return Rat(BigInt(p), den);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!is_integer_literal(whole) || frac.empty() || !is_integer_literal(frac))
      bad();
    BigInt scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rat r{BigInt(whole)};
    Rat f{BigInt(frac), scale};
    if (whole[0] == '-') return Rat(r - f);
    return Rat(r + f);
  }
  if (!is_integer_literal(text)) bad();
  return Rat(BigInt(text));
}

Density Density::ratio(long long size, long long rank) {
  if (size == 0) return zero();
  if (rank == 0) return infinity();
  return finite(Rat(size, rank));
}

std::string Density::to_string() const {
  return infinite ? "inf" : rat_to_string(value);
}

}  // namespace matsparse
