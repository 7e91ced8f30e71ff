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

#include "matsparse/instance.hpp"

#include <fstream>
#include <utility>
#include <vector>

#include "matsparse/errors.hpp"

namespace matsparse {

namespace {

const Json& get_field(const Json& j, const char* key, const std::string& ctx) {
  if (!j.is_object())
    throw ValidationError(ctx + ": expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw ValidationError(ctx + ": missing field \"" + key + "\"");
  return *it;
}

int get_int(const Json& j, const char* key, const std::string& ctx) {
  const Json& f = get_field(j, key, ctx);
  if (!f.is_number_integer())
    throw ValidationError(ctx + ": field \"" + key + "\" must be an integer");
  return f.get<int>();
}

std::vector<int> get_int_array(const Json& f, const std::string& ctx) {
  if (!f.is_array())
    throw ValidationError(ctx + ": expected an array of integers");
  std::vector<int> out;
  out.reserve(f.size());
  for (const Json& e : f) {
    if (!e.is_number_integer())
      throw ValidationError(ctx + ": expected an array of integers");
    out.push_back(e.get<int>());
  }
  return out;
}

void check_ids(const std::vector<int>& ids, int n, const std::string& ctx) {
  for (int v : ids)
    if (v < 0 || v >= n)
      throw ValidationError(ctx + ": element " + std::to_string(v) +
                            " is outside the universe [0," + std::to_string(n) +
                            ")");
}

MatroidPtr parse_uniform(const Json& j, int n) {
  int r = get_int(j, "r", "uniform");
  return std::make_shared<UniformMatroid>(n, r);
}

MatroidPtr parse_partition(const Json& j, int n) {
  const Json& jb = get_field(j, "blocks", "partition");
  if (!jb.is_array()) throw ValidationError("partition: blocks must be an array");
  std::vector<std::vector<int>> blocks;
  int idx = 0;
  for (const Json& b : jb) {
    std::string ctx = "partition block " + std::to_string(idx++);
    blocks.push_back(get_int_array(b, ctx));
    check_ids(blocks.back(), n, ctx);
  }
  std::vector<int> caps =
      get_int_array(get_field(j, "capacities", "partition"), "partition capacities");
  return std::make_shared<PartitionMatroid>(n, blocks, caps);
}

MatroidPtr parse_laminar(const Json& j, int n) {
  const Json& jn = get_field(j, "nodes", "laminar");
  if (!jn.is_array()) throw ValidationError("laminar: nodes must be an array");
  std::vector<std::pair<ElementSet, int>> constraints;
  int idx = 0;
  for (const Json& c : jn) {
    std::string ctx = "laminar node " + std::to_string(idx++);
    std::vector<int> ids =
        get_int_array(get_field(c, "members", ctx.c_str()), ctx);
    check_ids(ids, n, ctx);
    int cap = get_int(c, "capacity", ctx.c_str());
    constraints.emplace_back(ElementSet::from_ids(n, ids), cap);
  }
  return std::make_shared<LaminarMatroid>(n, constraints);
}

MatroidPtr parse_graphic(const Json& j, int n) {
  int vc = get_int(j, "vertex_count", "graphic");
  const Json& je = get_field(j, "edges", "graphic");
  if (!je.is_array()) throw ValidationError("graphic: edges must be an array");
  std::vector<std::pair<int, int>> ends;
  int idx = 0;
  for (const Json& e : je) {
    std::string ctx = "graphic edge " + std::to_string(idx++);
    std::vector<int> uv = get_int_array(e, ctx);
    if (uv.size() != 2)
      throw ValidationError(ctx + ": expected a pair [u,v]");
    ends.emplace_back(uv[0], uv[1]);
  }
  return std::make_shared<GraphicMatroid>(n, vc, ends);
}

MatroidPtr parse_transversal(const Json& j, int n) {
  int rc = get_int(j, "right_count", "transversal");
  const Json& ja = get_field(j, "adjacency", "transversal");
  if (!ja.is_array())
    throw ValidationError("transversal: adjacency must be an array");
  std::vector<std::vector<int>> adj;
  int idx = 0;
  for (const Json& row : ja) {
    std::string ctx = "transversal row " + std::to_string(idx++);
    adj.push_back(get_int_array(row, ctx));
  }
  return std::make_shared<TransversalMatroid>(n, rc, adj);
}

}  // namespace

MatroidPtr matroid_from_json(const Json& j, int n) {
  const Json& jv = get_field(j, "variant", "matroid descriptor");
  if (!jv.is_string())
    throw ValidationError("matroid descriptor: variant must be a string");
  std::string v = jv.get<std::string>();
  if (v == "uniform") return parse_uniform(j, n);
  if (v == "partition") return parse_partition(j, n);
  if (v == "laminar") return parse_laminar(j, n);
  if (v == "graphic") return parse_graphic(j, n);
  if (v == "transversal") return parse_transversal(j, n);
  if (v == "truncated") {
    int r = get_int(j, "r", "truncated");
    MatroidPtr inner = matroid_from_json(get_field(j, "inner", "truncated"), n);
    return std::make_shared<TruncatedMatroid>(std::move(inner), r);
  }
  throw ValidationError("matroid descriptor: unknown variant \"" + v + "\"");
}

Json matroid_to_json(const Matroid& m) {
  if (auto* u = dynamic_cast<const UniformMatroid*>(&m))
    return Json{{"variant", "uniform"}, {"r", u->limit()}};
  if (auto* p = dynamic_cast<const PartitionMatroid*>(&m)) {
    std::vector<std::vector<int>> blocks(p->block_count());
    for (int v = 0; v < p->universe_size(); ++v)
      blocks[p->block_of(v)].push_back(v);
    std::vector<int> caps(p->block_count());
    for (int b = 0; b < p->block_count(); ++b) caps[b] = p->block_capacity(b);
    return Json{{"variant", "partition"}, {"blocks", blocks},
                {"capacities", caps}};
  }
  if (auto* l = dynamic_cast<const LaminarMatroid*>(&m)) {
    // Rebuild each node's member set by walking element-to-node assignments
    // up through ancestors.
    const LaminarForm& f = *l->laminar_form();
    std::vector<std::vector<int>> members(f.node_count());
    for (int v = 0; v < l->universe_size(); ++v)
      for (int a = f.node_of[v]; a != -1; a = f.parent[a])
        members[a].push_back(v);
    Json nodes = Json::array();
    for (int a = 0; a < f.node_count(); ++a)
      nodes.push_back(Json{{"members", members[a]}, {"capacity", f.capacity[a]}});
    return Json{{"variant", "laminar"}, {"nodes", nodes}};
  }
  if (auto* g = dynamic_cast<const GraphicMatroid*>(&m)) {
    Json edges = Json::array();
    for (auto [u, v] : g->edges()) edges.push_back(Json::array({u, v}));
    return Json{{"variant", "graphic"}, {"vertex_count", g->vertex_count()},
                {"edges", edges}};
  }
  if (auto* t = dynamic_cast<const TransversalMatroid*>(&m))
    return Json{{"variant", "transversal"}, {"right_count", t->right_count()},
                {"adjacency", t->adjacency()}};
  if (auto* tr = dynamic_cast<const TruncatedMatroid*>(&m))
    return Json{{"variant", "truncated"}, {"r", tr->limit()},
                {"inner", matroid_to_json(*tr->inner())}};
  throw InternalError("matroid_to_json: unsupported family " + m.family());
}

Instance load_instance(const Json& j) {
  Instance inst;
  inst.n = get_int(j, "n", "instance");
  if (inst.n <= 0)
    throw ValidationError("instance: n must be positive");
  inst.m1 = matroid_from_json(get_field(j, "matroid1", "instance"), inst.n);
  inst.m2 = matroid_from_json(get_field(j, "matroid2", "instance"), inst.n);
  for (int which = 1; which <= 2; ++which) {
    const Matroid& m = which == 1 ? *inst.m1 : *inst.m2;
    for (int v = 0; v < inst.n; ++v)
      if (m.rank(ElementSet::of(inst.n, {v})) != 1)
        throw ValidationError("matroid" + std::to_string(which) +
                              " has a loop at element " + std::to_string(v));
  }
  ElementSet all = ElementSet::full(inst.n);
  int r1 = inst.m1->rank(all);
  int r2 = inst.m2->rank(all);
  // Equalize ranks by truncating the larger matroid; intersection cardinality
  // is unaffected and every rank-based bound below uses the common value.
  if (r1 > r2) inst.m1 = std::make_shared<TruncatedMatroid>(inst.m1, r2);
  if (r2 > r1) inst.m2 = std::make_shared<TruncatedMatroid>(inst.m2, r1);
  inst.common_rank = std::min(r1, r2);
  inst.source = j;
  return inst;
}

Instance load_instance_file(const std::string& path) {
  return load_instance(parse_json_file(path));
}

Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

}  // namespace matsparse
