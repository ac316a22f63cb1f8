// Copyright 2026 The ia3 Authors
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

#include "ia3/pipeline.hpp"

#include "ia3/certify.hpp"
#include "ia3/error.hpp"

namespace ia3 {

SchemePlan plan_scheme(int m, int n, const PlanRequest& req) {
  if (req.l) return chain_plan(m, n, *req.l, req.dtilde, req.t.value_or(1));
  if (req.dtilde) fail(ErrorKind::invalid_input, "dtilde can only be forced together with L");
  AchievableOptions opts;
  opts.t_max = req.t_max;
  opts.t = req.t;
  opts.extend_nullspace_intersection = req.extend_nullspace_intersection;
  return achievable(m, n, opts).plan;
}

Scheme synthesize(const ChannelSet& base, const SchemePlan& plan, const Tolerance& tol) {
  tol.validate();
  if (base.t() != 1) fail(ErrorKind::invalid_input, "synthesis expects an unextended channel");
  if (base.m() != plan.m || base.n() != plan.n)
    fail(ErrorKind::invalid_input, "plan was made for a different antenna configuration");
  if (!plan.synthesis_supported)
    fail(ErrorKind::infeasible, std::string("no synthesis available for regime ") + to_string(plan.regime));

  const ChannelSet design = extend(plan.reciprocal ? reciprocal(base) : base, plan.t);
  PrecoderSet designed;
  switch (plan.regime) {
    case Regime::zero_forcing:
      designed = synth_zero_forcing(design, tol);
      break;
    case Regime::nullspace_intersection:
      designed = synth_nullspace_intersection(design, plan.per_user_streams,
                                              derive_seed(base.seed(), 7), tol)
                     .first;
      break;
    case Regime::chain:
    case Regime::mixed_chain:
      if (plan.instances.empty())
        fail(ErrorKind::infeasible, "plan carries no chain instances");
      // A single forced instance skips plan validation so that oversubscribed
      // requests reach the certificate instead of failing here.
      designed = plan.instances.size() == 1
                     ? solve_chain(design, plan.instances[0].l, plan.instances[0].dtilde, tol)
                     : synth_mixed(design, plan, tol);
      break;
    case Regime::equal_antennas:
      fail(ErrorKind::infeasible, "no synthesis available for M = N");
  }

  Scheme out{extend(base, plan.t), {}};
  if (plan.reciprocal) {
    // Unusable reciprocal decoders still become precoders; certification of
    // the original link reports the failure.
    std::string ignored;
    const DecoderSet dec = build_decoders_relaxed(design, designed, tol, &ignored);
    for (int u = 0; u < kUsers; ++u) {
      out.precoders.v[u] = dec.u[u].conjugate();
      out.precoders.block_map.push_back({u, 0, out.precoders.v[u].cols(), 0, 0, 1, 0});
    }
  } else {
    out.precoders = std::move(designed);
  }
  out.precoders.plan = plan;
  return out;
}

}  // namespace ia3
