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

#ifndef MATSPARSE_ERRORS_HPP_
#define MATSPARSE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace matsparse {

// Malformed or inconsistent input (bad descriptor, loops, id out of range in a
// file). Maps to CLI exit code 2 with the first violation in the message.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called with arguments outside its domain (element not in
// the ground set, overlapping restriction, ...).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A brute-force gate was exceeded; the request is refused rather than served
// slowly or approximately.
class GateError : public std::runtime_error {
 public:
  explicit GateError(const std::string& what) : std::runtime_error(what) {}
};

// A postcondition or internal invariant failed. Always a bug, never an input
// problem.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Always-on invariant check; these guard algebraic identities that are cheap
// relative to the surrounding work.
inline void check_internal(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

}  // namespace matsparse

#endif  // MATSPARSE_ERRORS_HPP_
