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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "matsparse/dcs.hpp"
#include "matsparse/decomposition.hpp"
#include "matsparse/errors.hpp"
#include "matsparse/harness.hpp"
#include "matsparse/instance.hpp"
#include "matsparse/intersection.hpp"
#include "matsparse/protocols.hpp"
#include "matsparse/rng.hpp"

namespace {

using namespace matsparse;

// Exit codes: 0 all checks pass, 1 check failure, 2 usage error.
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

std::vector<int> parse_csv_ids(const std::string& csv) {
  std::vector<int> ids;
  size_t pos = 0;
  while (pos < csv.size()) {
    size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    std::string tok = csv.substr(pos, comma - pos);
    try {
      size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      ids.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("malformed element list near '" + tok + "'");
    }
    pos = comma + 1;
  }
  if (ids.empty()) throw ValidationError("empty element list");
  return ids;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& s) {
  auto parse_one = [&](const std::string& tok) {
    try {
      size_t used = 0;
      unsigned long long v = std::stoull(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return (std::uint64_t)v;
    } catch (const std::exception&) {
      throw ValidationError("malformed seed '" + tok + "'");
    }
  };
  size_t dots = s.find("..");
  if (dots == std::string::npos) {
    std::uint64_t v = parse_one(s);
    return {v, v};
  }
  std::uint64_t lo = parse_one(s.substr(0, dots));
  std::uint64_t hi = parse_one(s.substr(dots + 2));
  if (hi < lo) throw ValidationError("seed range must satisfy S0 <= S1");
  return {lo, hi};
}

std::vector<int> ids_from_json_file(const std::string& path) {
  Json j = parse_json_file(path);
  if (!j.is_array())
    throw ValidationError(path + ": expected a JSON array of element ids");
  std::vector<int> ids;
  for (const Json& e : j) {
    if (!e.is_number_integer())
      throw ValidationError(path + ": expected a JSON array of element ids");
    ids.push_back(e.get<int>());
  }
  return ids;
}

DcsParams resolve_params(const std::string& eps_str, int beta,
                         int beta_minus) {
  Rat eps = rat_parse(eps_str);
  if (eps <= 0) throw ValidationError("epsilon must be positive");
  if ((beta >= 0) != (beta_minus >= 0))
    throw ValidationError("--beta and --beta-minus must be given together");
  DcsParams p;
  if (beta >= 0) {
    p.beta = beta;
    p.beta_minus = beta_minus;
    p.epsilon = eps;
  } else {
    p = choose_params(eps);
  }
  validate_params(p);
  for (const std::string& w : param_warnings(p))
    std::cerr << "warning: " << w << '\n';
  return p;
}

int instance_mu(const Instance& inst) {
  if (auto mu = certified_mu_of(inst.source)) return *mu;
  return max_common_independent(inst.view1(), inst.view2()).size();
}

std::string ratio_repr(const Density& d) {
  return d.infinite ? "inf" : rat_to_string(d.value);
}

int cmd_decompose(const std::string& path, int which,
                  const std::string& subset) {
  Instance inst = load_instance_file(path);
  MatroidView view = which == 1 ? inst.view1() : inst.view2();
  if (subset != "all") {
    std::vector<int> ids = parse_csv_ids(subset);
    for (int v : ids)
      if (v < 0 || v >= inst.n)
        throw ValidationError("subset element " + std::to_string(v) +
                              " is outside the universe");
    view = view.restrict_to(ElementSet::from_ids(inst.n, ids));
  }
  Decomposition d = decompose(view);
  for (int j = 0; j < d.layer_count(); ++j)
    std::cout << "layer=" << j + 1
              << " density=" << rat_to_string(d.layers[j].density)
              << " rank=" << d.layers[j].rank
              << " elements=" << d.layers[j].members.to_string() << '\n';
  return kOk;
}

int cmd_build_dcs(const std::string& path, const std::string& eps_str,
                  int beta, int beta_minus, const std::string& out_path) {
  Instance inst = load_instance_file(path);
  DcsParams p = resolve_params(eps_str, beta, beta_minus);
  MatroidView v1 = inst.view1(), v2 = inst.view2();
  DcsState st = build_dcs(v1, v2, p, v1.ground());
  Json out{{"params",
            Json{{"beta", p.beta},
                 {"beta_minus", p.beta_minus},
                 {"epsilon", rat_to_string(p.epsilon)}}},
           {"v_prime", st.v_prime.to_ids()},
           {"phi", rat_to_string(st.phi)},
           {"steps", st.step_count}};
  write_json_file(out_path, out);
  std::cout << "v_prime=" << st.v_prime.count() << " steps=" << st.step_count
            << " phi=" << rat_to_string(st.phi) << " out=" << out_path << '\n';
  return kOk;
}

int cmd_intersect(const std::string& path, bool certificate) {
  Instance inst = load_instance_file(path);
  MatroidView v1 = inst.view1(), v2 = inst.view2();
  IntersectionResult res = max_common_independent(v1, v2);
  std::cout << "mu=" << res.size() << " set=" << res.solution.to_string()
            << '\n';
  if (certificate) {
    int r1 = v1.rank(res.cover1), r2 = v2.rank(res.cover2);
    bool verified = r1 + r2 == res.size();
    std::cout << "cover1=" << res.cover1.to_string()
              << " cover2=" << res.cover2.to_string() << " rank1=" << r1
              << " rank2=" << r2 << " verified=" << (verified ? 1 : 0) << '\n';
    if (!verified) return kCheckFailed;
  }
  return kOk;
}

int cmd_communicate(const std::string& path, const std::string& split_file,
                    const std::string& random_split,
                    const std::string& eps_str, int beta, int beta_minus) {
  Instance inst = load_instance_file(path);
  DcsParams p = resolve_params(eps_str, beta, beta_minus);
  MatroidView v1 = inst.view1(), v2 = inst.view2();

  ElementSet v_a(inst.n);
  if (!split_file.empty()) {
    for (int v : ids_from_json_file(split_file)) {
      if (v < 0 || v >= inst.n)
        throw ValidationError("split element " + std::to_string(v) +
                              " is outside the universe");
      v_a.set(v);
    }
  } else {
    Rng rng(parse_seed_range(random_split).first);
    for (int v = 0; v < inst.n; ++v)
      if (rng.coin()) v_a.set(v);
  }

  CommunicationTranscript t = one_way_run(v1, v2, v_a, p);
  int mu = instance_mu(inst);
  Density ratio = t.output_size > 0
                      ? Density::ratio(mu, t.output_size)
                      : (mu == 0 ? Density::finite(1) : Density::infinity());
  bool bound_ok = t.message_size <= (long long)p.beta * mu;
  std::cout << "split=" << t.v_a.count() << " message=" << t.message_size
            << " output=" << t.output_size << " mu=" << mu
            << " ratio=" << ratio_repr(ratio)
            << " message_bound_ok=" << (bound_ok ? 1 : 0) << '\n';
  return bound_ok ? kOk : kCheckFailed;
}

int cmd_stream(const std::string& path, const std::string& eps_str, int beta,
               int beta_minus, const std::string& seeds_str,
               const std::string& order_file, bool enforce_cap) {
  Instance inst = load_instance_file(path);
  DcsParams p = resolve_params(eps_str, beta, beta_minus);
  MatroidView v1 = inst.view1(), v2 = inst.view2();
  auto [lo, hi] = parse_seed_range(seeds_str);
  std::optional<std::vector<int>> order;
  if (!order_file.empty()) order = ids_from_json_file(order_file);
  int mu = instance_mu(inst);

  Rat ratio_sum = 0;
  long long finite_runs = 0, infinite_runs = 0, fallback_runs = 0;
  bool budget_ok = true;
  std::optional<Rat> min_ratio, max_ratio;
  for (std::uint64_t seed = lo; seed <= hi; ++seed) {
    StreamConfig cfg;
    cfg.params = p;
    cfg.seed = seed;
    cfg.order = order;
    cfg.enforce_cap = enforce_cap;
    cfg.known_mu = mu;
    StreamReport rep = stream_run(v1, v2, cfg);
    std::cout << "seed=" << seed << " ratio=" << ratio_repr(rep.ratio)
              << " output=" << rep.output_size << " mu=" << rep.mu_exact
              << " peak=" << rep.stored_peak
              << " fallback=" << (rep.fallback_triggered ? 1 : 0) << '\n';
    if (rep.ratio.infinite) {
      ++infinite_runs;
    } else {
      ++finite_runs;
      ratio_sum += rep.ratio.value;
      if (!min_ratio || rep.ratio.value < *min_ratio)
        min_ratio = rep.ratio.value;
      if (!max_ratio || rep.ratio.value > *max_ratio)
        max_ratio = rep.ratio.value;
    }
    fallback_runs += rep.fallback_triggered ? 1 : 0;
    budget_ok = budget_ok && rep.phase1_within_budget;
  }
  long long runs = (long long)(hi - lo) + 1;
  std::string mean = infinite_runs > 0 || finite_runs == 0
                         ? "inf"
                         : rat_to_string(Rat(ratio_sum / finite_runs));
  std::cout << "seeds=" << runs << " mean_ratio=" << mean << " min_ratio="
            << (min_ratio ? rat_to_string(*min_ratio) : std::string("inf"))
            << " max_ratio="
            << (max_ratio && infinite_runs == 0 ? rat_to_string(*max_ratio)
                                                : std::string("inf"))
            << " fallback_runs=" << fallback_runs
            << " within_budget=" << (budget_ok ? 1 : 0) << '\n';
  return kOk;
}

int cmd_oracle_check(const std::string& path, const std::string& scope,
                     int trials, std::uint64_t seed) {
  Instance inst = load_instance_file(path);
  OracleOptions opts;
  opts.trials = trials;
  opts.seed = seed;
  std::vector<std::string> scopes;
  if (scope == "all")
    scopes = oracle_scopes();
  else
    scopes.push_back(scope);
  bool failed = false;
  for (const std::string& s : scopes) {
    OracleReport rep = oracle_check(inst, s, opts);
    if (!rep.refusal.empty()) {
      if (scope != "all") {
        std::cerr << "error: " << rep.refusal << '\n';
        return kUsage;
      }
      std::cout << "scope=" << s << " skipped: " << rep.refusal << '\n';
      continue;
    }
    std::cout << "scope=" << s << " checks=" << rep.checks
              << " pass=" << (rep.pass ? 1 : 0) << '\n';
    for (const std::string& f : rep.failures)
      std::cout << "  fail: " << f << '\n';
    failed = failed || !rep.pass;
  }
  return failed ? kCheckFailed : kOk;
}

int cmd_gen(const std::string& family, int n, int param, bool slack,
            std::uint64_t seed, const std::string& out_path) {
  GenSpec spec;
  spec.family = family;
  spec.n = n;
  spec.param = param;
  spec.slack = slack;
  spec.seed = seed;
  GenResult g = gen_instance(spec);
  write_json_file(out_path, g.document);
  std::cout << "family=" << family << " n=" << g.instance.n;
  if (g.certified_mu) std::cout << " certified_mu=" << *g.certified_mu;
  std::cout << " out=" << out_path << '\n';
  return kOk;
}

int cmd_experiment(const std::string& plan_path) {
  ExperimentPlan plan = plan_from_json(parse_json_file(plan_path));
  ExperimentOutcome outcome = run_experiment(plan);
  std::cout << outcome.table;
  std::cout << "rows=" << outcome.rows << " errors=" << outcome.errors
            << " output=" << plan.output_path << '\n';
  return outcome.errors > 0 ? kCheckFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matroid intersection sparsification toolkit"};
  app.require_subcommand(1);
  int rc = kOk;

  // decompose
  std::string de_instance, de_subset = "all";
  int de_matroid = 1;
  CLI::App* de = app.add_subcommand(
      "decompose", "Print the density-based decomposition of one matroid");
  de->add_option("--instance", de_instance, "Instance JSON file")->required();
  de->add_option("--matroid", de_matroid, "Which matroid to decompose (1|2)")
      ->check(CLI::Range(1, 2));
  de->add_option("--subset", de_subset,
                 "Comma separated element ids, or 'all'");
  de->callback([&] { rc = cmd_decompose(de_instance, de_matroid, de_subset); });

  // build-dcs
  std::string bd_instance, bd_eps, bd_out = "dcs.json";
  int bd_beta = -1, bd_beta_minus = -1;
  CLI::App* bd = app.add_subcommand(
      "build-dcs", "Build a density-constrained subset of the ground set");
  bd->add_option("--instance", bd_instance, "Instance JSON file")->required();
  bd->add_option("--epsilon", bd_eps, "Approximation parameter (rational)")
      ->required();
  bd->add_option("--beta", bd_beta, "Upper density bound override");
  bd->add_option("--beta-minus", bd_beta_minus, "Lower density bound override");
  bd->add_option("--out", bd_out, "Output JSON path");
  bd->callback([&] {
    rc = cmd_build_dcs(bd_instance, bd_eps, bd_beta, bd_beta_minus, bd_out);
  });

  // intersect
  std::string in_instance;
  bool in_cert = false;
  CLI::App* in = app.add_subcommand(
      "intersect", "Exact maximum common independent set");
  in->add_option("--instance", in_instance, "Instance JSON file")->required();
  in->add_flag("--certificate", in_cert, "Also print the dual cover pair");
  in->callback([&] { rc = cmd_intersect(in_instance, in_cert); });

  // communicate
  std::string co_instance, co_split, co_random, co_eps;
  int co_beta = -1, co_beta_minus = -1;
  CLI::App* co = app.add_subcommand(
      "communicate", "One-way protocol over a ground set split");
  co->add_option("--instance", co_instance, "Instance JSON file")->required();
  CLI::Option* co_sp = co->add_option(
      "--split", co_split, "JSON array file with the first party's ids");
  CLI::Option* co_rs = co->add_option(
      "--random-split", co_random, "Seed for a uniform random split");
  co_sp->excludes(co_rs);
  co->add_option("--epsilon", co_eps, "Approximation parameter (rational)")
      ->required();
  co->add_option("--beta", co_beta, "Upper density bound override");
  co->add_option("--beta-minus", co_beta_minus, "Lower density bound override");
  co->callback([&] {
    if (co_split.empty() && co_random.empty())
      throw ValidationError("communicate needs --split or --random-split");
    rc = cmd_communicate(co_instance, co_split, co_random, co_eps, co_beta,
                         co_beta_minus);
  });

  // stream
  std::string st_instance, st_eps, st_seeds, st_order;
  int st_beta = -1, st_beta_minus = -1;
  bool st_cap = false;
  CLI::App* st = app.add_subcommand(
      "stream", "Random-order streaming runs over a seed range");
  st->add_option("--instance", st_instance, "Instance JSON file")->required();
  st->add_option("--epsilon", st_eps, "Approximation parameter (rational)")
      ->required();
  st->add_option("--beta", st_beta, "Upper density bound override");
  st->add_option("--beta-minus", st_beta_minus, "Lower density bound override");
  st->add_option("--seeds", st_seeds, "Seed or inclusive range S0..S1")
      ->required();
  st->add_option("--order", st_order,
                 "JSON array file fixing the arrival order");
  st->add_flag("--enforce-cap", st_cap,
               "Stop buffering at the phase-two memory cap");
  st->callback([&] {
    rc = cmd_stream(st_instance, st_eps, st_beta, st_beta_minus, st_seeds,
                    st_order, st_cap);
  });

  // oracle-check
  std::string oc_instance, oc_scope = "all";
  int oc_trials = 200;
  std::uint64_t oc_seed = 1;
  CLI::App* oc = app.add_subcommand(
      "oracle-check", "Cross-check algorithms against brute-force oracles");
  oc->add_option("--instance", oc_instance, "Instance JSON file")->required();
  oc->add_option("--scope", oc_scope,
                 "ranks|densest|decomposition|intersection|dual|lemmas|all");
  oc->add_option("--trials", oc_trials, "Randomized trials per scope")
      ->check(CLI::PositiveNumber);
  oc->add_option("--seed", oc_seed, "Oracle RNG seed");
  oc->callback(
      [&] { rc = cmd_oracle_check(oc_instance, oc_scope, oc_trials, oc_seed); });

  // gen
  std::string ge_family, ge_out;
  int ge_n = 0, ge_param = 0;
  bool ge_slack = false;
  std::uint64_t ge_seed = 0;
  CLI::App* ge = app.add_subcommand("gen", "Generate a random instance file");
  ge->add_option("--family", ge_family,
                 "partition-bipartite|laminar|graphic|transversal|mixed|fig1")
      ->required();
  ge->add_option("--n", ge_n, "Element count");
  ge->add_option("--param", ge_param, "Family-specific size knob");
  ge->add_flag("--slack", ge_slack,
               "partition-bipartite: gadgets with mu = k/2");
  ge->add_option("--seed", ge_seed, "Generator seed");
  ge->add_option("--out", ge_out, "Output instance path")->required();
  ge->callback([&] {
    rc = cmd_gen(ge_family, ge_n, ge_param, ge_slack, ge_seed, ge_out);
  });

  // experiment
  std::string ex_plan;
  CLI::App* ex = app.add_subcommand(
      "experiment", "Run an experiment plan and aggregate ratios");
  ex->add_option("--plan", ex_plan, "Plan JSON file")->required();
  ex->callback([&] { rc = cmd_experiment(ex_plan); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const InternalError& e) {
    std::cerr << "internal check failed: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return rc;
}
