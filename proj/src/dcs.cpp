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

#include "matsparse/dcs.hpp"

#include <utility>

#include "matsparse/errors.hpp"

namespace matsparse {

Rat dcs_potential_value(int beta, int subset_size, const Decomposition& d1,
                        const Decomposition& d2) {
  Rat phi = Rat(2 * beta - 7) * subset_size;
  for (const Decomposition* d : {&d1, &d2})
    for (const DecompositionLayer& layer : d->layers)
      phi -= Rat(layer.rank) * layer.density * layer.density;
  return phi;
}

namespace {

// Fresh decompositions and density tables for the current subset.
void evaluate(const MatroidView& m1, const MatroidView& m2,
              const DcsParams& p, DcsState* st) {
  st->decomp1 = decompose(m1.restrict_to(st->v_prime));
  st->decomp2 = decompose(m2.restrict_to(st->v_prime));
  st->table1 = associated_density_table(m1, st->decomp1);
  st->table2 = associated_density_table(m2, st->decomp2);
  st->phi = dcs_potential_value(p.beta, (int)st->v_prime.count(), st->decomp1,
                                st->decomp2);
}

}  // namespace

DcsParams choose_params(const Rat& epsilon) {
  if (epsilon <= 0) throw DomainError("epsilon must be positive");
  BigInt p = numerator(epsilon), q = denominator(epsilon);
  // ceil(11/epsilon) = ceil(11q / p)
  BigInt t = (11 * q + p - 1) / p;
  DcsParams out;
  out.beta_minus = t.convert_to<int>() + 4;
  out.beta = out.beta_minus + 7;
  out.epsilon = epsilon;
  Rat certified = Rat(out.beta_minus - 4) * (Rat(1) + epsilon);
  check_internal(certified >= out.beta,
                 "chosen parameters must certify the approximation ratio");
  return out;
}

void validate_params(const DcsParams& p) {
  if (p.beta < p.beta_minus + 7)
    throw ValidationError("beta must be at least beta_minus + 7 (got beta=" +
                          std::to_string(p.beta) + ", beta_minus=" +
                          std::to_string(p.beta_minus) + ")");
}

std::vector<std::string> param_warnings(const DcsParams& p) {
  std::vector<std::string> out;
  if (p.beta_minus <= 0)
    out.push_back("beta_minus <= 0 makes the lower density bound vacuous");
  if (p.epsilon > 0 &&
      Rat(p.beta_minus - 4) * (Rat(1) + p.epsilon) < Rat(p.beta))
    out.push_back("parameters do not certify the approximation ratio");
  return out;
}

DcsCheck check_dcs(const MatroidView& m1, const MatroidView& m2,
                   const ElementSet& v_prime, const DcsParams& p) {
  validate_params(p);
  check_internal(m1.ground() == m2.ground(), "views must share their ground");
  check_internal(v_prime.subset_of(m1.ground()), "subset outside the ground");
  DcsState st;
  st.v_prime = v_prime;
  evaluate(m1, m2, p, &st);
  DcsCheck out;
  m1.ground().for_each([&](int v) {
    Rat sum = st.table1[v] + st.table2[v];
    if (v_prime.test(v)) {
      if (sum > p.beta) out.over.push_back(v);
    } else {
      if (sum < p.beta_minus) out.under.push_back(v);
    }
  });
  out.ok = out.over.empty() && out.under.empty();
  return out;
}

DcsState build_dcs(const MatroidView& m1, const MatroidView& m2,
                   const DcsParams& p, const ElementSet& ground,
                   const DcsBuildOptions& opts) {
  validate_params(p);
  check_internal(m1.universe_size() == m2.universe_size(),
                 "views must share their universe");
  MatroidView v1 = m1.restrict_to(ground);
  MatroidView v2 = m2.restrict_to(ground);
  int n = v1.universe_size();

  // mu(ground) never exceeds either full rank, so this budget is implied by
  // the theorem bound even when mu itself is not available.
  long long safety = 2LL * p.beta * p.beta *
                     std::min(v1.full_rank(), v2.full_rank());

  DcsState st;
  st.v_prime = ElementSet(n);
  evaluate(v1, v2, p, &st);
  check_internal(st.phi == 0, "empty subset must have zero potential");

  std::vector<int> ground_ids = ground.to_ids();
  for (;;) {
    int victim = -1;
    for (int v : ground_ids) {
      if (!st.v_prime.test(v)) continue;
      if (st.table1[v] + st.table2[v] > p.beta) {
        victim = v;
        break;
      }
    }
    int joiner = -1;
    if (victim < 0) {
      // Deletions are exhausted, so property (i) holds here; scan for the
      // lowest-id insertion candidate.
      for (int v : ground_ids) {
        if (st.v_prime.test(v)) continue;
        if (st.table1[v] + st.table2[v] < p.beta_minus) {
          joiner = v;
          break;
        }
      }
      if (joiner < 0) break;  // stable: a DCS
    }

    Rat phi_before = st.phi;
    if (victim >= 0) {
      st.v_prime.reset(victim);
      ++st.deletions;
    } else {
      st.v_prime.set(joiner);
      ++st.insertions;
    }
    evaluate(v1, v2, p, &st);
    ++st.step_count;
    check_internal(st.phi >= phi_before + 1,
                   "local improvement must raise the potential by 1");
    check_internal(st.step_count <= safety, "local search step budget blown");
  }

  if (opts.mu) {
    check_internal(st.step_count <= 2LL * p.beta * p.beta * *opts.mu,
                   "step count exceeded the theorem budget");
    check_internal(st.v_prime.count() <= p.beta * *opts.mu,
                   "subset size exceeded the theorem bound");
  }
  return st;
}

Rat dcs_potential(const MatroidView& m1, const MatroidView& m2,
                  const ElementSet& v_prime, int beta) {
  Decomposition d1 = decompose(m1.restrict_to(v_prime));
  Decomposition d2 = decompose(m2.restrict_to(v_prime));
  return dcs_potential_value(beta, (int)v_prime.count(), d1, d2);
}

}  // namespace matsparse
