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

#ifndef MATSPARSE_INSTANCE_HPP_
#define MATSPARSE_INSTANCE_HPP_

#include <string>

#include <json.hpp>

#include "matsparse/matroid.hpp"
#include "matsparse/matroid_view.hpp"

namespace matsparse {

using Json = nlohmann::ordered_json;

// A shared universe with two loop-free matroids of equal rank. Loading
// truncates the larger-rank matroid down to the smaller rank, so downstream
// code never sees unequal ranks.
struct Instance {
  int n = 0;
  MatroidPtr m1, m2;
  int common_rank = 0;
  Json source;  // descriptor as loaded, for reporting

  MatroidView view1() const { return MatroidView(m1); }
  MatroidView view2() const { return MatroidView(m2); }
};

// Descriptor variants:
//   {"variant":"uniform","r":int}
//   {"variant":"partition","blocks":[[ids]...],"capacities":[ints]}
//   {"variant":"laminar","nodes":[{"members":[ids],"capacity":int}...]}
//   {"variant":"graphic","vertex_count":int,"edges":[[u,v]...]}
//   {"variant":"transversal","right_count":int,"adjacency":[[ids]...]}
//   {"variant":"truncated","r":int,"inner":<descriptor>}
MatroidPtr matroid_from_json(const Json& j, int n);
Json matroid_to_json(const Matroid& m);

// Instance files are {"n":int,"matroid1":<descriptor>,"matroid2":<descriptor>}.
Instance load_instance(const Json& j);
Instance load_instance_file(const std::string& path);

Json parse_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace matsparse

#endif  // MATSPARSE_INSTANCE_HPP_
