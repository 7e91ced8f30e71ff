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

#include "matsparse/protocols.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "matsparse/decomposition.hpp"
#include "matsparse/errors.hpp"
#include "matsparse/intersection.hpp"
#include "matsparse/rng.hpp"

namespace matsparse {

namespace {

void check_shared_ground(const MatroidView& m1, const MatroidView& m2) {
  if (m1.universe_size() != m2.universe_size() ||
      !(m1.ground() == m2.ground()))
    throw ValidationError("the two views must share universe and ground");
}

IntersectionResult solve_restricted(const MatroidView& m1,
                                    const MatroidView& m2,
                                    const ElementSet& subset) {
  MatroidView r1 = m1.restrict_to(subset);
  MatroidView r2 = m2.restrict_to(subset);
  ElementSet warm = greedy_common_independent(r1, r2, subset.to_ids());
  return max_common_independent(r1, r2, &warm);
}

}  // namespace

CommunicationTranscript one_way_run(const MatroidView& m1,
                                    const MatroidView& m2,
                                    const ElementSet& v_a,
                                    const DcsParams& params) {
  check_shared_ground(m1, m2);
  validate_params(params);
  if (!v_a.subset_of(m1.ground()))
    throw ValidationError("the first party's share must lie in the ground");

  CommunicationTranscript t;
  t.params = params;
  t.v_a = v_a;
  t.v_b = m1.ground();
  t.v_b -= v_a;

  DcsState st = build_dcs(m1, m2, params, v_a);
  t.message = st.v_prime;
  t.message_size = (int)t.message.count();
  t.dcs_steps = st.step_count;

  ElementSet received = t.message;
  received |= t.v_b;
  t.output = solve_restricted(m1, m2, received).solution;
  t.output_size = (int)t.output.count();
  return t;
}

std::vector<int> stream_order(std::vector<int> ids, std::uint64_t seed) {
  Rng rng(seed);
  rng.shuffle(ids);
  return ids;
}

StreamReport stream_run(const MatroidView& m1, const MatroidView& m2,
                        const StreamConfig& cfg) {
  check_shared_ground(m1, m2);
  validate_params(cfg.params);
  if (cfg.params.epsilon <= 0)
    throw ValidationError("streaming needs a positive epsilon");

  const ElementSet& ground = m1.ground();
  const int n = (int)ground.count();
  const int beta = cfg.params.beta;
  const int beta_minus = cfg.params.beta_minus;
  const Rat eps = cfg.params.epsilon;

  std::vector<int> order;
  if (cfg.order) {
    order = *cfg.order;
    ElementSet seen(m1.universe_size());
    for (int v : order) {
      if (v < 0 || v >= m1.universe_size() || !ground.test(v) || seen.test(v))
        throw ValidationError("order must be a permutation of the ground ids");
      seen.set(v);
    }
    if ((int)order.size() != n)
      throw ValidationError("order must be a permutation of the ground ids");
  } else {
    order = stream_order(ground.to_ids(), cfg.seed);
  }

  const int k = std::max(1, std::min(m1.full_rank(), m2.full_rank()));
  // Number of size guesses: ceil(log2(k)), at least 1.
  const int guesses = std::bit_width((unsigned)(std::max(k, 2) - 1));
  const Rat budget = eps * n;

  // alpha(i) = floor(eps n / (guesses (2^{i+2} beta^2 + 1))), and the
  // interval count 2^{i+2} beta^2 + 1 for the same guess.
  auto intervals_of = [&](int i) -> BigInt {
    return (BigInt(1) << (i + 2)) * beta * beta + 1;
  };
  auto alpha_of = [&](int i) -> long long {
    Rat a = budget / (Rat(guesses) * Rat(intervals_of(i)));
    BigInt fl = numerator(a) / denominator(a);
    return fl.convert_to<long long>();
  };

  StreamReport rep;
  rep.seed = cfg.seed;

  ElementSet vp(m1.universe_size());
  Decomposition d1 = decompose(m1.restrict_to(vp));
  Decomposition d2 = decompose(m2.restrict_to(vp));
  Rat phi = 0;

  auto recompute = [&] {
    d1 = decompose(m1.restrict_to(vp));
    d2 = decompose(m2.restrict_to(vp));
    Rat next = dcs_potential_value(beta, (int)vp.count(), d1, d2);
    check_internal(next - phi >= 1, "stream potential failed to rise");
    phi = next;
    ++rep.mutations;
  };
  auto density_sum = [&](int v) -> Rat {
    return associated_density(m1, d1, v) + associated_density(m2, d2, v);
  };
  ElementSet buffered(m1.universe_size());
  auto note_peak = [&] {
    rep.stored_peak =
        std::max(rep.stored_peak, (int)(vp.count() + buffered.count()));
  };

  std::size_t pos = 0;
  bool stopped = false;

  for (int i = 0; i <= guesses && !stopped; ++i) {
    rep.i_stop = i;
    long long alpha = alpha_of(i);
    if (alpha == 0) {
      // Too little headroom for intervals at this guess: keep everything
      // that is still unseen and answer exactly over it.
      rep.fallback_triggered = true;
      break;
    }
    // alpha >= 1 bounds the interval count by eps n / guesses.
    long long intervals = intervals_of(i).convert_to<long long>();
    for (long long interval = 0; interval < intervals && !stopped;
         ++interval) {
      bool found_underfull = false;
      for (long long t = 0; t < alpha && pos < order.size(); ++t) {
        int v = order[pos++];
        if (density_sum(v) < beta_minus) {
          found_underfull = true;
          vp.set(v);
          recompute();
          for (;;) {
            int victim = -1;
            for (int u : vp.to_ids()) {
              Rat s = d1.member_density(u) + d2.member_density(u);
              if (s > beta) {
                victim = u;
                break;
              }
            }
            if (victim < 0) break;
            vp.reset(victim);
            recompute();
          }
          note_peak();
        }
      }
      if (!found_underfull || pos >= order.size()) stopped = true;
    }
  }

  rep.phase1_consumed = (int)pos;
  rep.phase1_within_budget =
      rep.fallback_triggered || Rat(rep.phase1_consumed) <= budget;

  if (rep.fallback_triggered) {
    while (pos < order.size()) buffered.set(order[pos++]);
    note_peak();
  } else {
    long long cap = std::numeric_limits<long long>::max();
    if (cfg.enforce_cap && pos < order.size()) {
      long long alpha = alpha_of(rep.i_stop);
      check_internal(alpha >= 1, "phase two reached with a zero interval");
      cap = (long long)std::ceil(4.0 * std::log((double)n) * (double)n /
                                 (double)alpha);
      rep.cap_limit = cap;
    }
    while (pos < order.size()) {
      int v = order[pos++];
      if (density_sum(v) < beta_minus) {
        if ((long long)buffered.count() >= cap) {
          rep.cap_truncated = true;
          break;
        }
        buffered.set(v);
        ++rep.underfull_collected;
        note_peak();
      }
    }
  }

  ElementSet kept = vp;
  kept |= buffered;
  IntersectionResult res = solve_restricted(m1, m2, kept);
  rep.v_prime = vp;
  rep.buffered = buffered;
  rep.solution = res.solution;
  rep.output_size = res.size();
  rep.mu_exact =
      cfg.known_mu ? *cfg.known_mu : max_common_independent(m1, m2).size();
  if (rep.output_size > 0)
    rep.ratio = Density::ratio(rep.mu_exact, rep.output_size);
  else
    rep.ratio = rep.mu_exact == 0 ? Density::finite(1) : Density::infinity();
  return rep;
}

UnderfullCheck underfull_ratio_check(const MatroidView& m1,
                                     const MatroidView& m2,
                                     const ElementSet& v_prime,
                                     const ElementSet& x,
                                     const DcsParams& params) {
  check_shared_ground(m1, m2);
  if (!v_prime.subset_of(m1.ground()) || !x.subset_of(m1.ground()))
    throw ValidationError("both subsets must lie in the ground");

  UnderfullCheck out;
  Decomposition d1 = decompose(m1.restrict_to(v_prime));
  Decomposition d2 = decompose(m2.restrict_to(v_prime));
  for (int v : v_prime.to_ids()) {
    Rat s = d1.member_density(v) + d2.member_density(v);
    if (s > params.beta) out.density_violations.push_back(v);
  }
  ElementSet outside = m1.ground();
  outside -= v_prime;
  outside -= x;
  for (int v : outside.to_ids()) {
    Rat s = associated_density(m1, d1, v) + associated_density(m2, d2, v);
    if (s < params.beta_minus) out.missing_underfull.push_back(v);
  }
  out.preconditions_ok =
      out.density_violations.empty() && out.missing_underfull.empty();

  ElementSet kept = v_prime;
  kept |= x;
  out.mu_subset = solve_restricted(m1, m2, kept).size();
  out.mu_full = max_common_independent(m1, m2).size();
  Rat bound = (Rat(3) / 2 + params.epsilon) * out.mu_subset;
  out.inequality_ok = bound >= out.mu_full;
  out.ok = out.preconditions_ok && out.inequality_ok;
  return out;
}

}  // namespace matsparse
