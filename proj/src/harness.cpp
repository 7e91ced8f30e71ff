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

#include "matsparse/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "matsparse/dcs.hpp"
#include "matsparse/decomposition.hpp"
#include "matsparse/errors.hpp"
#include "matsparse/intersection.hpp"
#include "matsparse/protocols.hpp"
#include "matsparse/rng.hpp"

namespace matsparse {

namespace {

// -- Generators ---------------------------------------------------------------

Json partition_descriptor(int block_count,
                          const std::vector<int>& block_of,
                          const std::vector<int>& caps) {
  std::vector<std::vector<int>> blocks(block_count);
  for (int v = 0; v < (int)block_of.size(); ++v)
    blocks[block_of[v]].push_back(v);
  return Json{{"variant", "partition"},
              {"blocks", blocks},
              {"capacities", caps}};
}

// A pair of partition matroids induced by edge endpoints: common independent
// sets are exactly the matchings of the bipartite (multi)graph.
std::pair<Json, Json> bipartite_descriptors(
    int left, int right, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> bl(edges.size()), br(edges.size());
  for (int e = 0; e < (int)edges.size(); ++e) {
    bl[e] = edges[e].first;
    br[e] = edges[e].second;
  }
  return {partition_descriptor(left, bl, std::vector<int>(left, 1)),
          partition_descriptor(right, br, std::vector<int>(right, 1))};
}

std::vector<std::pair<int, int>> regular_bipartite_edges(Rng& rng, int m,
                                                         int d) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve((size_t)m * d);
  for (int t = 0; t < d; ++t) {
    std::vector<int> perm = rng.permutation(m);
    for (int i = 0; i < m; ++i) edges.emplace_back(i, perm[i]);
  }
  rng.shuffle(edges);
  return edges;
}

// Star gadget pairs: one left hub with three right leaves, then the mirror.
// Each pair contributes 4 to both ranks but only 2 to the matching, so the
// intersection size is half the common rank; parallel copies pad to n.
std::vector<std::pair<int, int>> gadget_edges(Rng& rng, int pairs, int n) {
  std::vector<std::pair<int, int>> base;
  base.reserve((size_t)pairs * 6);
  for (int g = 0; g < pairs; ++g) {
    for (int j = 0; j < 3; ++j) base.emplace_back(4 * g, 4 * g + j);
    for (int j = 0; j < 3; ++j) base.emplace_back(4 * g + 1 + j, 4 * g + 3);
  }
  std::vector<std::pair<int, int>> edges = base;
  while ((int)edges.size() < n)
    edges.push_back(base[(size_t)rng.below(base.size())]);
  rng.shuffle(edges);
  return edges;
}

Json laminar_descriptor_random(Rng& rng, int n) {
  std::vector<int> ids = rng.permutation(n);
  Json nodes = Json::array();
  std::function<void(int, int)> carve = [&](int lo, int hi) {
    std::vector<int> members(ids.begin() + lo, ids.begin() + hi);
    std::sort(members.begin(), members.end());
    int len = hi - lo;
    nodes.push_back(Json{{"members", members},
                         {"capacity", 1 + (int)rng.below(std::min(len, 4))}});
    if (len < 3) return;
    int parts = 2 + (int)rng.below(2);
    parts = std::min(parts, len);
    // Random cut points splitting [lo, hi) into nonempty chunks.
    std::vector<int> cuts = {lo, hi};
    while ((int)cuts.size() < parts + 1) {
      int c = lo + 1 + (int)rng.below(len - 1);
      if (std::find(cuts.begin(), cuts.end(), c) == cuts.end())
        cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
      if (cuts[i + 1] - cuts[i] >= 2 && rng.coin()) carve(cuts[i], cuts[i + 1]);
  };
  carve(0, n);
  return Json{{"variant", "laminar"}, {"nodes", nodes}};
}

Json graphic_descriptor_random(Rng& rng, int n, int vertices) {
  if (vertices < 2)
    throw ValidationError("graphic generation needs at least 2 vertices");
  Json edges = Json::array();
  std::vector<std::pair<int, int>> list;
  for (int e = 0; e < n; ++e) {
    if (e < vertices - 1) {
      list.emplace_back((int)rng.below(e + 1), e + 1);  // spanning tree part
    } else {
      int u = (int)rng.below(vertices);
      int w = (int)rng.below(vertices - 1);
      if (w >= u) ++w;
      list.emplace_back(u, w);
    }
  }
  rng.shuffle(list);
  for (auto [u, w] : list) edges.push_back(Json::array({u, w}));
  return Json{{"variant", "graphic"}, {"vertex_count", vertices},
              {"edges", edges}};
}

Json transversal_descriptor_random(Rng& rng, int n, int right) {
  if (right < 1)
    throw ValidationError("transversal generation needs a nonempty right side");
  Json adj = Json::array();
  for (int v = 0; v < n; ++v) {
    int deg = 1 + (int)rng.below((std::uint64_t)std::min(3, right));
    std::vector<int> row;
    while ((int)row.size() < deg) {
      int r = (int)rng.below(right);
      if (std::find(row.begin(), row.end(), r) == row.end()) row.push_back(r);
    }
    std::sort(row.begin(), row.end());
    adj.push_back(row);
  }
  return Json{{"variant", "transversal"}, {"right_count", right},
              {"adjacency", adj}};
}

Json mixed_descriptor_random(Rng& rng, int n) {
  switch (rng.below(5)) {
    case 0:
      return Json{{"variant", "uniform"}, {"r", 1 + (int)rng.below(n)}};
    case 1: {
      int b = 1 + (int)rng.below(n);
      std::vector<int> block_of(n), caps(b);
      for (int v = 0; v < n; ++v) block_of[v] = (int)rng.below(b);
      for (int& c : caps) c = 1 + (int)rng.below(2);
      return partition_descriptor(b, block_of, caps);
    }
    case 2:
      return laminar_descriptor_random(rng, n);
    case 3:
      return graphic_descriptor_random(rng, n,
                                       std::max(2, 2 + (int)rng.below(n)));
    default:
      return transversal_descriptor_random(rng, n,
                                           std::max(1, (n + 2) / 3));
  }
}

GenResult finish_instance(const GenSpec& spec, Json m1, Json m2,
                          std::optional<int> mu) {
  Json md{{"family", spec.family},
          {"seed", spec.seed},
          {"param", spec.param}};
  if (spec.slack) md["slack"] = true;
  if (mu) md["certified_mu"] = *mu;
  Json doc{{"n", spec.n},
           {"matroid1", std::move(m1)},
           {"matroid2", std::move(m2)},
           {"metadata", std::move(md)}};
  GenResult out;
  out.instance = load_instance(doc);
  out.document = std::move(doc);
  out.certified_mu = mu;
  return out;
}

Json fig_laminar_descriptor() {
  auto span = [](int lo, int hi) {
    std::vector<int> ids;
    for (int v = lo; v <= hi; ++v) ids.push_back(v);
    return ids;
  };
  Json nodes = Json::array();
  nodes.push_back(Json{{"members", span(0, 9)}, {"capacity", 2}});
  nodes.push_back(Json{{"members", span(0, 13)}, {"capacity", 3}});
  nodes.push_back(Json{{"members", span(15, 16)}, {"capacity", 1}});
  nodes.push_back(Json{{"members", span(0, 16)}, {"capacity", 4}});
  return Json{{"variant", "laminar"}, {"nodes", nodes}};
}

// -- Oracle helpers -----------------------------------------------------------

ElementSet random_subset(Rng& rng, int n) {
  ElementSet s(n);
  for (int v = 0; v < n; ++v)
    if (rng.coin()) s.set(v);
  return s;
}

struct Failing {
  OracleReport* rep;
  void operator()(const std::string& msg) {
    rep->pass = false;
    if (rep->failures.size() < 8) rep->failures.push_back(msg);
  }
};

// Maximum cardinality densest subset by full enumeration, as (set, density).
std::pair<ElementSet, Density> brute_densest(const MatroidView& view,
                                             const ElementSet& prefix) {
  std::vector<int> ids = view.ground().to_ids();
  for (int v : prefix.to_ids())
    ids.erase(std::remove(ids.begin(), ids.end(), v), ids.end());
  int m = (int)ids.size();
  if (m > 18) throw GateError("densest enumeration gate is 18 elements");
  int base = prefix.empty() ? 0 : view.rank(prefix);
  Density best = Density::zero();
  ElementSet arg(view.universe_size());
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    ElementSet s(view.universe_size());
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) s.set(ids[i]);
    ElementSet su = s;
    su |= prefix;
    int r = view.rank(su) - base;
    Density d = r == 0 ? Density::infinity()
                       : Density::finite(Rat(s.count()) / r);
    if (best < d) {
      best = d;
      arg = s;
    } else if (d == best) {
      arg |= s;  // densest sets are closed under union
    }
  }
  return {arg, best};
}

std::vector<DecompositionLayer> brute_layers(const MatroidView& view) {
  std::vector<DecompositionLayer> out;
  ElementSet prefix(view.universe_size());
  ElementSet remaining = view.ground();
  while (!remaining.empty()) {
    auto [members, density] = brute_densest(view, prefix);
    check_internal(!members.empty() && !density.infinite,
                   "brute peel hit an empty or degenerate layer");
    DecompositionLayer layer;
    layer.members = members;
    ElementSet su = members;
    su |= prefix;
    layer.rank =
        view.rank(su) - (prefix.empty() ? 0 : view.rank(prefix));
    layer.density = density.value;
    out.push_back(layer);
    prefix = su;
    remaining -= members;
  }
  return out;
}

bool same_layers(const std::vector<DecompositionLayer>& a,
                 const std::vector<DecompositionLayer>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!(a[i].members == b[i].members) || a[i].rank != b[i].rank ||
        a[i].density != b[i].density)
      return false;
  return true;
}

std::string describe_layers(const std::vector<DecompositionLayer>& ls) {
  std::ostringstream os;
  for (size_t i = 0; i < ls.size(); ++i)
    os << (i ? " " : "") << "layer" << i + 1 << "="
       << ls[i].members.to_string() << "@" << rat_to_string(ls[i].density);
  return os.str();
}

void check_lemma_clauses(Failing& fail, OracleReport& rep,
                         const MatroidView& view, const ElementSet& v_old,
                         int u, bool insert, const std::string& ctx) {
  Decomposition d_old = decompose(view.restrict_to(v_old));
  ElementSet v_new = v_old;
  if (insert)
    v_new.set(u);
  else
    v_new.reset(u);
  Decomposition d_new = decompose(view.restrict_to(v_new));
  std::vector<Rat> told = associated_density_table(view, d_old);
  std::vector<Rat> tnew = associated_density_table(view, d_new);

  // (i) members of old layer j keep at least (insert) or at most (delete)
  // the old layer density.
  for (const DecompositionLayer& layer : d_old.layers)
    for (int v : layer.members.to_ids()) {
      ++rep.checks;
      bool ok = insert ? tnew[v] >= layer.density : tnew[v] <= layer.density;
      if (!ok)
        fail(ctx + ": clause (i) failed at element " + std::to_string(v));
    }
  // (ii) monotone shift over the whole universe.
  for (int v = 0; v < view.universe_size(); ++v) {
    ++rep.checks;
    bool ok = insert ? tnew[v] >= told[v] : tnew[v] <= told[v];
    if (!ok) fail(ctx + ": clause (ii) failed at element " + std::to_string(v));
  }
  // (iii) the mutated element moves by at most one, in the right direction.
  ++rep.checks;
  bool ok3 = insert ? told[u] <= tnew[u] && tnew[u] <= told[u] + 1
                    : told[u] >= tnew[u] && tnew[u] >= Rat(told[u] - 1);
  if (!ok3) fail(ctx + ": clause (iii) failed at the mutated element");
  // (iv) members whose old density lies outside the unit window around the
  // mutated element's old density are untouched.
  for (int v : v_old.to_ids()) {
    bool outside = insert ? told[v] < told[u] || told[v] > Rat(told[u] + 1)
                          : told[v] > told[u] || told[v] < Rat(told[u] - 1);
    if (!outside) continue;
    ++rep.checks;
    if (!(tnew[v] == told[v]))
      fail(ctx + ": clause (iv) failed at element " + std::to_string(v));
  }
}

// -- Experiment plumbing ------------------------------------------------------

struct MaterializedSource {
  std::string name;
  Instance instance;
  std::optional<int> certified_mu;
};

struct Task {
  int source = 0;
  std::string algorithm;
  std::optional<Rat> epsilon;
  std::optional<std::uint64_t> seed;
};

// Writes lines strictly in task order regardless of completion order.
class OrderedSink {
 public:
  explicit OrderedSink(std::ofstream* out) : out_(out) {}

  void put(size_t idx, std::string line) {
    std::lock_guard<std::mutex> lk(mu_);
    pending_[idx] = std::move(line);
    while (!pending_.empty() && pending_.begin()->first == next_) {
      (*out_) << pending_.begin()->second << '\n';
      pending_.erase(pending_.begin());
      ++next_;
    }
    out_->flush();
  }

 private:
  std::ofstream* out_;
  std::mutex mu_;
  std::map<size_t, std::string> pending_;
  size_t next_ = 0;
};

DcsParams params_for(const ExperimentPlan& plan, const Rat& eps) {
  if (plan.beta && plan.beta_minus) {
    DcsParams p;
    p.beta = *plan.beta;
    p.beta_minus = *plan.beta_minus;
    p.epsilon = eps;
    return p;
  }
  return choose_params(eps);
}

std::string ratio_string(const Density& d) {
  return d.infinite ? "inf" : rat_to_string(d.value);
}

}  // namespace

int bipartite_matching_size(int left_count, int right_count,
                            const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(left_count);
  for (auto [l, r] : edges) {
    if (l < 0 || l >= left_count || r < 0 || r >= right_count)
      throw ValidationError("matching: endpoint out of range");
    adj[l].push_back(r);
  }
  std::vector<int> match_right(right_count, -1), match_left(left_count, -1);
  // Cheap greedy start, then augmenting paths for the rest.
  for (int l = 0; l < left_count; ++l)
    for (int r : adj[l])
      if (match_left[l] == -1 && match_right[r] == -1) {
        match_left[l] = r;
        match_right[r] = l;
      }
  std::vector<int> stamp(right_count, -1);
  std::function<bool(int, int)> try_augment = [&](int l, int round) {
    for (int r : adj[l]) {
      if (stamp[r] == round) continue;
      stamp[r] = round;
      if (match_right[r] == -1 || try_augment(match_right[r], round)) {
        match_right[r] = l;
        match_left[l] = r;
        return true;
      }
    }
    return false;
  };
  int size = 0, round = 0;
  for (int l = 0; l < left_count; ++l)
    if (match_left[l] != -1) ++size;
  for (int l = 0; l < left_count; ++l)
    if (match_left[l] == -1 && try_augment(l, round++)) ++size;
  return size;
}

GenResult gen_instance(const GenSpec& spec) {
  if (spec.n <= 0 && spec.family != "fig1")
    throw ValidationError("generation needs a positive element count");
  Rng rng(spec.seed);

  if (spec.family == "partition-bipartite") {
    std::vector<std::pair<int, int>> edges;
    int left, right;
    if (spec.slack) {
      int pairs = spec.param > 0 ? spec.param : std::max(1, spec.n / 12);
      if (spec.n < 6 * pairs)
        throw ValidationError(
            "slack spec needs at least 6 elements per gadget pair");
      edges = gadget_edges(rng, pairs, spec.n);
      left = right = 4 * pairs;
    } else {
      int d = spec.param > 0 ? spec.param : 3;
      if (spec.n % d != 0)
        throw ValidationError(
            "partition-bipartite needs n divisible by the degree");
      int m = spec.n / d;
      edges = regular_bipartite_edges(rng, m, d);
      left = right = m;
    }
    int mu = bipartite_matching_size(left, right, edges);
    auto [m1, m2] = bipartite_descriptors(left, right, edges);
    return finish_instance(spec, std::move(m1), std::move(m2), mu);
  }
  if (spec.family == "laminar")
    return finish_instance(spec, laminar_descriptor_random(rng, spec.n),
                           laminar_descriptor_random(rng, spec.n),
                           std::nullopt);
  if (spec.family == "graphic") {
    int vertices = spec.param > 0 ? spec.param : std::max(2, spec.n / 2 + 1);
    return finish_instance(
        spec, graphic_descriptor_random(rng, spec.n, vertices),
        graphic_descriptor_random(rng, spec.n, vertices), std::nullopt);
  }
  if (spec.family == "transversal") {
    int right = spec.param > 0 ? spec.param : std::max(2, (spec.n + 2) / 3);
    return finish_instance(
        spec, transversal_descriptor_random(rng, spec.n, right),
        transversal_descriptor_random(rng, spec.n, right), std::nullopt);
  }
  if (spec.family == "mixed")
    return finish_instance(spec, mixed_descriptor_random(rng, spec.n),
                           mixed_descriptor_random(rng, spec.n), std::nullopt);
  if (spec.family == "fig1") {
    GenSpec fixed = spec;
    fixed.n = 17;
    return finish_instance(fixed, fig_laminar_descriptor(),
                           Json{{"variant", "uniform"}, {"r", 4}}, 4);
  }
  throw ValidationError("unknown generator family \"" + spec.family + "\"");
}

std::optional<int> certified_mu_of(const Json& document) {
  auto md = document.find("metadata");
  if (md == document.end() || !md->is_object()) return std::nullopt;
  auto mu = md->find("certified_mu");
  if (mu == md->end() || !mu->is_number_integer()) return std::nullopt;
  return mu->get<int>();
}

const std::vector<std::string>& oracle_scopes() {
  static const std::vector<std::string> scopes = {
      "ranks", "densest", "decomposition", "intersection", "dual", "lemmas"};
  return scopes;
}

OracleReport oracle_check(const Instance& inst, const std::string& scope,
                          const OracleOptions& opts) {
  OracleReport rep;
  rep.scope = scope;
  rep.pass = true;
  Failing fail{&rep};
  Rng rng(opts.seed);
  MatroidView views[2] = {inst.view1(), inst.view2()};
  std::string replay = "seed=" + std::to_string(opts.seed);

  if (scope == "ranks") {
    for (const MatroidView& view : views) {
      ++rep.checks;
      if (view.rank(ElementSet(inst.n)) != 0)
        fail(replay + ": rank of the empty set is nonzero");
      for (int t = 0; t < opts.trials; ++t) {
        std::string ctx = replay + " trial=" + std::to_string(t);
        ElementSet x = random_subset(rng, inst.n);
        ElementSet y = random_subset(rng, inst.n);
        ElementSet xy = x, xi = x;
        xy |= y;
        xi &= y;
        int rx = view.rank(x), ry = view.rank(y);
        ++rep.checks;
        if (rx > (int)x.count())
          fail(ctx + ": rank exceeds cardinality on " + x.to_string());
        ++rep.checks;
        if (rx + ry < view.rank(xy) + view.rank(xi))
          fail(ctx + ": submodularity failed on " + x.to_string() + " and " +
               y.to_string());
        ++rep.checks;
        if (view.rank(xy) < std::max(rx, ry))
          fail(ctx + ": monotonicity failed on " + x.to_string() + " up to " +
               xy.to_string());
        int v = (int)rng.below(inst.n);
        int rxv = view.rank(x.with(v));
        ++rep.checks;
        if (rxv < rx || rxv > rx + 1)
          fail(ctx + ": unit increment failed adding " + std::to_string(v) +
               " to " + x.to_string());
      }
    }
    return rep;
  }

  if (scope == "densest" || scope == "decomposition" ||
      scope == "intersection") {
    if (inst.n > 18) {
      rep.pass = false;
      rep.refusal = scope + " enumerates subsets and is gated at 18 elements";
      return rep;
    }
  }
  if (scope == "dual" && inst.n > 16) {
    rep.pass = false;
    rep.refusal = "dual enumerates ground partitions and is gated at 16";
    return rep;
  }
  if (scope == "lemmas" && inst.n > 18) {
    rep.pass = false;
    rep.refusal = "lemmas re-decomposes subsets and is gated at 18 elements";
    return rep;
  }

  if (scope == "densest") {
    for (int side = 0; side < 2; ++side) {
      const MatroidView& view = views[side];
      std::string ctx = replay + " matroid=" + std::to_string(side + 1);
      auto [bset, bval] = brute_densest(view, ElementSet(inst.n));
      auto [fset, fval] = densest_subset(view);
      rep.checks += 2;
      if (!(Density(bval) == fval))
        fail(ctx + ": densest value " + fval.to_string() +
             " does not match enumeration " + bval.to_string());
      else if (!(bset == fset))
        fail(ctx + ": densest subset " + fset.to_string() +
             " does not match enumeration " + bset.to_string());
    }
    return rep;
  }

  if (scope == "decomposition") {
    for (int side = 0; side < 2; ++side) {
      const MatroidView& view = views[side];
      std::string ctx = replay + " matroid=" + std::to_string(side + 1);
      std::vector<DecompositionLayer> expect = brute_layers(view);
      Decomposition got = decompose(view);
      ++rep.checks;
      if (!same_layers(expect, got.layers)) {
        fail(ctx + ": decomposition mismatch; enumeration gives " +
             describe_layers(expect) + " but decompose gives " +
             describe_layers(got.layers));
        continue;
      }
      if (view.fast_laminar_form()) {
        Decomposition generic = decompose(view, DecomposeRoute::kGeneric);
        ++rep.checks;
        if (!same_layers(expect, generic.layers))
          fail(ctx + ": tree and generic routes disagree");
      }
      if (inst.n <= 12) {
        Decomposition mn = decompose(view, DecomposeRoute::kGeneric,
                                     SfmMethod::kMinNorm);
        ++rep.checks;
        if (!same_layers(expect, mn.layers))
          fail(ctx + ": min-norm route disagrees with enumeration");
      }
    }
    return rep;
  }

  if (scope == "intersection") {
    int brute = brute_common_independent_size(views[0], views[1]);
    IntersectionResult res = max_common_independent(views[0], views[1]);
    rep.checks += 2;
    if (res.size() != brute)
      fail(replay + ": solver size " + std::to_string(res.size()) +
           " differs from enumeration " + std::to_string(brute));
    if (!is_common_independent(views[0], views[1], res.solution))
      fail(replay + ": solver output is not common independent");
    return rep;
  }

  if (scope == "dual") {
    IntersectionResult res = max_common_independent(views[0], views[1]);
    auto [bset, bval] = brute_dual_cover(views[0], views[1]);
    ++rep.checks;
    if (bval != res.size())
      fail(replay + ": enumerated dual value " + std::to_string(bval) +
           " differs from the solver size " + std::to_string(res.size()));
    ElementSet uni = res.cover1;
    uni |= res.cover2;
    ++rep.checks;
    if (!(uni == ElementSet::full(inst.n)) || res.cover1.intersects(res.cover2))
      fail(replay + ": certificate covers do not partition the ground");
    ++rep.checks;
    if (views[0].rank(res.cover1) + views[1].rank(res.cover2) != res.size())
      fail(replay + ": certificate rank sum differs from the solver size");
    return rep;
  }

  if (scope == "lemmas") {
    ElementSet ground = ElementSet::full(inst.n);
    for (int t = 0; t < opts.trials; ++t) {
      ElementSet vp = random_subset(rng, inst.n);
      bool insert = t % 2 == 0;
      ElementSet candidates = insert ? (ground - vp) : vp;
      if (candidates.empty()) {
        insert = !insert;
        candidates = insert ? (ground - vp) : vp;
      }
      std::vector<int> ids = candidates.to_ids();
      int u = ids[(size_t)rng.below(ids.size())];
      std::string ctx = replay + " trial=" + std::to_string(t) +
                        (insert ? " insert " : " delete ") + std::to_string(u) +
                        " subset=" + vp.to_string();
      for (int side = 0; side < 2; ++side)
        check_lemma_clauses(fail, rep, views[side], vp, u, insert,
                            ctx + " matroid=" + std::to_string(side + 1));
    }
    return rep;
  }

  throw ValidationError("unknown oracle scope \"" + scope + "\"");
}

int worker_count_from_env() {
  if (const char* env = std::getenv("MATSPARSE_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 256) return (int)v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return (int)std::min(8u, std::max(1u, hw));
}

ExperimentPlan plan_from_json(const Json& j) {
  ExperimentPlan plan;
  if (!j.is_object()) throw ValidationError("plan: expected a JSON object");

  auto sources = j.find("instances");
  if (sources == j.end() || !sources->is_array() || sources->empty())
    throw ValidationError("plan: needs a nonempty \"instances\" array");
  int idx = 0;
  for (const Json& s : *sources) {
    ExperimentPlan::Source src;
    if (s.contains("path")) {
      src.path = s["path"].get<std::string>();
      src.name = s.value("name", src.path);
    } else if (s.contains("gen")) {
      const Json& g = s["gen"];
      GenSpec spec;
      spec.family = g.value("family", std::string());
      spec.n = g.value("n", 0);
      spec.param = g.value("param", 0);
      spec.slack = g.value("slack", false);
      spec.seed = g.value("seed", (std::uint64_t)0);
      src.gen = spec;
      src.name = s.value("name", spec.family + "#" + std::to_string(idx));
    } else {
      throw ValidationError("plan: instance entries need \"path\" or \"gen\"");
    }
    plan.sources.push_back(std::move(src));
    ++idx;
  }

  if (auto it = j.find("epsilons"); it != j.end()) {
    for (const Json& e : *it)
      plan.epsilons.push_back(e.is_string() ? rat_parse(e.get<std::string>())
                                            : Rat(e.get<long long>()));
  }
  if (auto it = j.find("seeds"); it != j.end() && it->is_array() &&
                                 it->size() == 2) {
    plan.seed_lo = (*it)[0].get<std::uint64_t>();
    plan.seed_hi = (*it)[1].get<std::uint64_t>();
  } else {
    plan.seed_lo = 1;
    plan.seed_hi = 0;  // empty range
  }

  auto algos = j.find("algorithms");
  if (algos == j.end() || !algos->is_array() || algos->empty())
    throw ValidationError("plan: needs a nonempty \"algorithms\" array");
  for (const Json& a : *algos) {
    std::string name = a.get<std::string>();
    if (name != "exact" && name != "greedy" && name != "dcs" &&
        name != "communicate" && name != "stream")
      throw ValidationError("plan: unknown algorithm \"" + name + "\"");
    plan.algorithms.push_back(name);
  }

  plan.output_path = j.value("output", std::string());
  if (plan.output_path.empty())
    throw ValidationError("plan: needs an \"output\" path");
  plan.enforce_cap = j.value("enforce_cap", false);
  if (j.contains("beta")) plan.beta = j["beta"].get<int>();
  if (j.contains("beta_minus")) plan.beta_minus = j["beta_minus"].get<int>();
  if (plan.beta.has_value() != plan.beta_minus.has_value())
    throw ValidationError("plan: beta and beta_minus must be given together");

  bool needs_eps = false;
  for (const std::string& a : plan.algorithms)
    needs_eps |= a == "dcs" || a == "communicate" || a == "stream";
  if (needs_eps && plan.epsilons.empty())
    throw ValidationError("plan: dcs/communicate/stream need an epsilon grid");
  for (const Rat& eps : plan.epsilons) {
    if (eps <= 0) throw ValidationError("plan: epsilons must be positive");
    validate_params(params_for(plan, eps));
  }
  return plan;
}

ExperimentOutcome run_experiment(const ExperimentPlan& plan) {
  std::vector<MaterializedSource> sources;
  for (const auto& src : plan.sources) {
    MaterializedSource ms;
    ms.name = src.name;
    if (src.gen) {
      GenResult g = gen_instance(*src.gen);
      ms.instance = std::move(g.instance);
      ms.certified_mu = g.certified_mu;
    } else {
      Json doc = parse_json_file(src.path);
      ms.instance = load_instance(doc);
      ms.certified_mu = certified_mu_of(doc);
    }
    sources.push_back(std::move(ms));
  }
  // One exact intersection size per instance, shared across every run.
  std::vector<int> mu(sources.size());
  for (size_t i = 0; i < sources.size(); ++i)
    mu[i] = sources[i].certified_mu
                ? *sources[i].certified_mu
                : max_common_independent(sources[i].instance.view1(),
                                         sources[i].instance.view2())
                      .size();

  std::vector<Task> tasks;
  bool have_seeds = plan.seed_lo <= plan.seed_hi;
  for (int s = 0; s < (int)sources.size(); ++s)
    for (const std::string& alg : plan.algorithms) {
      if (alg == "exact") {
        tasks.push_back({s, alg, std::nullopt, std::nullopt});
      } else if (alg == "greedy") {
        if (have_seeds)
          for (std::uint64_t sd = plan.seed_lo; sd <= plan.seed_hi; ++sd)
            tasks.push_back({s, alg, std::nullopt, sd});
      } else if (alg == "dcs") {
        for (const Rat& eps : plan.epsilons)
          tasks.push_back({s, alg, eps, std::nullopt});
      } else {
        if (have_seeds)
          for (const Rat& eps : plan.epsilons)
            for (std::uint64_t sd = plan.seed_lo; sd <= plan.seed_hi; ++sd)
              tasks.push_back({s, alg, eps, sd});
      }
    }

  std::ofstream out(plan.output_path);
  if (!out)
    throw ValidationError("cannot open " + plan.output_path + " for writing");
  Json header{{"schema", "matsparse.experiment/1"},
              {"kind", "header"},
              {"sources", (int)sources.size()},
              {"algorithms", plan.algorithms},
              {"tasks", (int)tasks.size()}};
  out << header.dump() << '\n';
  out.flush();

  OrderedSink sink(&out);
  std::mutex agg_mu;
  std::map<std::string, std::vector<double>> ratio_samples;
  std::atomic<long long> errors{0};

  auto run_task = [&](size_t idx) {
    const Task& t = tasks[idx];
    const MaterializedSource& src = sources[t.source];
    Json row{{"schema", "matsparse.experiment/1"},
             {"kind", "row"},
             {"task", (int)idx},
             {"instance", src.name},
             {"n", src.instance.n},
             {"algorithm", t.algorithm}};
    if (t.epsilon) row["epsilon"] = rat_to_string(*t.epsilon);
    if (t.seed) row["seed"] = *t.seed;
    try {
      MatroidView v1 = src.instance.view1();
      MatroidView v2 = src.instance.view2();
      int exact = mu[t.source];
      std::optional<double> ratio;
      if (t.algorithm == "exact") {
        IntersectionResult res = max_common_independent(v1, v2);
        row["mu"] = res.size();
        row["certified_match"] =
            !src.certified_mu || *src.certified_mu == res.size();
      } else if (t.algorithm == "greedy") {
        std::vector<int> order = stream_order(v1.ground().to_ids(), *t.seed);
        ElementSet g = greedy_common_independent(v1, v2, order);
        row["output"] = (int)g.count();
        row["mu"] = exact;
        Density r = g.count() > 0 ? Density::ratio(exact, (int)g.count())
                                  : (exact == 0 ? Density::finite(1)
                                                : Density::infinity());
        row["ratio"] = ratio_string(r);
        if (!r.infinite) ratio = rat_to_double(r.value);
      } else if (t.algorithm == "dcs") {
        DcsParams p = params_for(plan, *t.epsilon);
        DcsBuildOptions opts;
        opts.mu = exact;
        DcsState st = build_dcs(v1, v2, p, v1.ground(), opts);
        int sub = max_common_independent(v1.restrict_to(st.v_prime),
                                         v2.restrict_to(st.v_prime))
                      .size();
        row["beta"] = p.beta;
        row["beta_minus"] = p.beta_minus;
        row["v_prime"] = (int)st.v_prime.count();
        row["steps"] = st.step_count;
        row["subset_mu"] = sub;
        row["mu"] = exact;
        Density r = sub > 0 ? Density::ratio(exact, sub)
                            : (exact == 0 ? Density::finite(1)
                                          : Density::infinity());
        row["ratio"] = ratio_string(r);
        if (!r.infinite) ratio = rat_to_double(r.value);
      } else if (t.algorithm == "communicate") {
        DcsParams p = params_for(plan, *t.epsilon);
        Rng split_rng(*t.seed);
        ElementSet v_a(src.instance.n);
        for (int v : v1.ground().to_ids())
          if (split_rng.coin()) v_a.set(v);
        CommunicationTranscript tr = one_way_run(v1, v2, v_a, p);
        row["split"] = (int)v_a.count();
        row["message"] = tr.message_size;
        row["output"] = tr.output_size;
        row["mu"] = exact;
        row["message_bound_ok"] =
            tr.message_size <= (long long)p.beta * exact;
        Density r = tr.output_size > 0
                        ? Density::ratio(exact, tr.output_size)
                        : (exact == 0 ? Density::finite(1)
                                      : Density::infinity());
        row["ratio"] = ratio_string(r);
        if (!r.infinite) ratio = rat_to_double(r.value);
      } else {  // stream
        StreamConfig cfg;
        cfg.params = params_for(plan, *t.epsilon);
        cfg.seed = *t.seed;
        cfg.enforce_cap = plan.enforce_cap;
        cfg.known_mu = exact;
        StreamReport sr = stream_run(v1, v2, cfg);
        row["output"] = sr.output_size;
        row["mu"] = sr.mu_exact;
        row["peak"] = sr.stored_peak;
        row["fallback"] = sr.fallback_triggered ? 1 : 0;
        row["consumed"] = sr.phase1_consumed;
        row["within_budget"] = sr.phase1_within_budget;
        row["i_stop"] = sr.i_stop;
        row["ratio"] = ratio_string(sr.ratio);
        if (!sr.ratio.infinite) ratio = rat_to_double(sr.ratio.value);
      }
      row["ok"] = true;
      if (ratio) {
        std::lock_guard<std::mutex> lk(agg_mu);
        ratio_samples[t.algorithm].push_back(*ratio);
      }
    } catch (const std::exception& e) {
      row["ok"] = false;
      row["error"] = e.what();
      ++errors;
    }
    sink.put(idx, row.dump());
  };

  int workers = std::max(1, std::min<int>(worker_count_from_env(),
                                          (int)std::max<size_t>(tasks.size(), 1)));
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        size_t idx = next.fetch_add(1);
        if (idx >= tasks.size()) return;
        run_task(idx);
      }
    });
  for (std::thread& th : pool) th.join();

  ExperimentOutcome outcome;
  outcome.rows = (long long)tasks.size();
  outcome.errors = errors.load();
  std::ostringstream table;
  table << "algorithm     runs      mean       min       max       p95\n";
  for (auto& [alg, samples] : ratio_samples) {
    std::sort(samples.begin(), samples.end());
    RatioAggregate agg;
    agg.runs = (long long)samples.size();
    agg.min = samples.front();
    agg.max = samples.back();
    double sum = 0;
    for (double r : samples) sum += r;
    agg.mean = sum / (double)samples.size();
    size_t p95 = (size_t)std::ceil(0.95 * (double)samples.size());
    agg.p95 = samples[std::max<size_t>(p95, 1) - 1];
    outcome.ratios[alg] = agg;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-12s %6lld  %8.4f  %8.4f  %8.4f  %8.4f\n",
                  alg.c_str(), agg.runs, agg.mean, agg.min, agg.max, agg.p95);
    table << buf;
  }
  outcome.table = table.str();
  return outcome;
}

}  // namespace matsparse
