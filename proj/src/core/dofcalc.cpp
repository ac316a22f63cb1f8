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

#include "ia3/dofcalc.hpp"

#include "ia3/error.hpp"

#include <algorithm>
#include <sstream>

namespace ia3 {

namespace {

void require_dims(int m, int n) {
  if (m < 1 || n < 1) fail(ErrorKind::invalid_input, "antenna counts must be positive");
}

Rational per_slot_total(int per_user_streams, int t) { return Rational(3LL * per_user_streams, t); }

}  // namespace

Rational general_upperbound(const Rational& m, const Rational& n) {
  return std::min({3 * m, 3 * n, std::max(2 * m, n), std::max(m, 2 * n),
                   Rational(3, 2) * std::max(m, n)});
}

Rational general_upperbound(int m, int n) {
  require_dims(m, n);
  return general_upperbound(Rational(m), Rational(n));
}

Rational beamforming_upperbound(const Rational& m, const Rational& n) {
  return Rational(3, 4) * (m + n);
}

Rational beamforming_upperbound(int m, int n) {
  require_dims(m, n);
  return beamforming_upperbound(Rational(m), Rational(n));
}

Rational baseline_khandani(int m, int n) {
  require_dims(m, n);
  return Rational(3LL * m * n, m + n);
}

long long chain_nullspace_dim(int m, int n, int l) {
  return (l + 1LL) * m - (l + 2LL) * n;
}

Rational chain_dof(int m, int n, int l) {
  require_dims(m, n);
  if (l < 1) fail(ErrorKind::invalid_input, "chain depth L must be at least 1");
  const Rational nullspace_term(3LL * (l + 1) * std::max(0LL, chain_nullspace_dim(m, n, l)));
  const Rational receiver_term(3LL * (l + 1) * n, 2LL * l + 1);
  return std::min(nullspace_term, receiver_term);
}

Rational chain_dof_normalized(const Rational& ratio, int l) {
  if (l < 1) fail(ErrorKind::invalid_input, "chain depth L must be at least 1");
  const Rational nullspace_term =
      Rational(3LL * (l + 1)) * positive_part(Rational(l + 1) * ratio - Rational(l + 2));
  const Rational receiver_term(3LL * (l + 1), 2LL * l + 1);
  return std::min(nullspace_term, receiver_term);
}

int min_feasible_l(int m, int n) {
  require_dims(m, n);
  if (!(n < m && m < 2 * n)) fail(ErrorKind::regime, "chain schemes need N < M < 2N");
  int l = 1;
  while (chain_nullspace_dim(m, n, l) < 1) ++l;
  return l;
}

SchemePlan greedy_plan_at(int m, int n, int t) {
  if (t < 1) fail(ErrorKind::invalid_input, "extension factor must be at least 1");
  SchemePlan plan;
  plan.m = m;
  plan.n = n;
  plan.t = t;
  long long remaining = static_cast<long long>(n) * t;
  for (int l = min_feasible_l(m, n); remaining >= 2LL * l + 1; ++l) {
    const long long cap = t * chain_nullspace_dim(m, n, l);
    const long long dtilde = std::min(cap, remaining / (2LL * l + 1));
    if (dtilde <= 0) continue;
    plan.instances.push_back({l, static_cast<int>(dtilde)});
    plan.per_user_streams += static_cast<int>((l + 1) * dtilde);
    remaining -= (2LL * l + 1) * dtilde;
  }
  plan.regime = plan.instances.size() > 1 ? Regime::mixed_chain : Regime::chain;
  plan.per_slot_dof_total = per_slot_total(plan.per_user_streams, t);
  return plan;
}

SchemePlan greedy_plan(int m, int n, int t_max) {
  if (t_max < 1) fail(ErrorKind::invalid_input, "t_max must be at least 1");
  SchemePlan best = greedy_plan_at(m, n, 1);
  for (int t = 2; t <= t_max; ++t) {
    SchemePlan candidate = greedy_plan_at(m, n, t);
    // Ascending t with a strict comparison keeps the smallest t on ties.
    if (candidate.per_slot_dof_total > best.per_slot_dof_total) best = std::move(candidate);
  }
  return best;
}

SchemePlan chain_plan(int m, int n, int l, std::optional<int> dtilde, int t) {
  require_dims(m, n);
  if (l < 0) fail(ErrorKind::invalid_input, "chain depth L must be non-negative");
  if (t < 1) fail(ErrorKind::invalid_input, "extension factor must be at least 1");
  if (m == n) fail(ErrorKind::regime, "chain schemes need M != N");
  SchemePlan plan;
  plan.m = m;
  plan.n = n;
  plan.reciprocal = m < n;
  plan.t = t;
  plan.regime = Regime::chain;
  const int dm = plan.design_m();
  const int dn = plan.design_n();
  const long long cap = t * chain_nullspace_dim(dm, dn, l);
  const long long fit = static_cast<long long>(dn) * t / (2LL * l + 1);
  const long long d = dtilde ? *dtilde : std::min(cap, fit);
  if (d < 1) fail(ErrorKind::infeasible, "no streams fit a chain of depth L=" + std::to_string(l));
  if (d > cap)
    fail(ErrorKind::infeasible, "dtilde=" + std::to_string(d) + " exceeds the chain nullspace dimension " +
                                    std::to_string(std::max(0LL, cap)));
  plan.instances.push_back({l, static_cast<int>(d)});
  plan.per_user_streams = static_cast<int>((l + 1) * d);
  plan.per_slot_dof_total = per_slot_total(plan.per_user_streams, t);
  return plan;
}

BoundsReport achievable(int m, int n, const AchievableOptions& opts) {
  require_dims(m, n);
  if (opts.t_max < 1) fail(ErrorKind::invalid_input, "t_max must be at least 1");
  if (opts.t && *opts.t < 1) fail(ErrorKind::invalid_input, "extension factor must be at least 1");

  BoundsReport report;
  report.m = m;
  report.n = n;
  report.general_ub = general_upperbound(m, n);
  report.beamforming_ub = beamforming_upperbound(m, n);
  report.baseline = baseline_khandani(m, n);

  if (m < n) {
    // Reciprocity: the (n, m) scheme run in reverse achieves the same DoF.
    const BoundsReport mirrored = achievable(n, m, opts);
    report.plan = mirrored.plan;
    report.plan.m = m;
    report.plan.n = n;
    report.plan.reciprocal = true;
    report.achievable = mirrored.achievable;
  } else {
    SchemePlan& plan = report.plan;
    plan.m = m;
    plan.n = n;
    if (m == n) {
      plan.regime = Regime::equal_antennas;
      plan.synthesis_supported = false;
      plan.t = opts.t.value_or(1);
      plan.per_slot_dof_total = Rational(3LL * m, 2);
    } else if (m >= 3 * n) {
      plan.regime = Regime::zero_forcing;
      plan.t = opts.t.value_or(1);
      plan.per_user_streams = n * plan.t;
      plan.per_slot_dof_total = per_slot_total(plan.per_user_streams, plan.t);
    } else if (m >= 2 * n) {
      plan.regime = Regime::nullspace_intersection;
      const int default_t = (m % 3 == 0 || !opts.extend_nullspace_intersection) ? 1 : 3;
      plan.t = opts.t.value_or(default_t);
      plan.per_user_streams = m * plan.t / 3;
      plan.per_slot_dof_total = per_slot_total(plan.per_user_streams, plan.t);
    } else {
      plan = opts.t ? greedy_plan_at(m, n, *opts.t) : greedy_plan(m, n, opts.t_max);
    }
    report.achievable = plan.per_slot_dof_total;
  }
  report.meets_general = report.achievable == report.general_ub;
  report.meets_beamforming = report.achievable == report.beamforming_ub;
  return report;
}

std::vector<Fig2Row> sweep_fig2(int n, int m_lo, int m_hi, int t_max) {
  if (n < 1 || m_lo < 1 || m_hi < m_lo) fail(ErrorKind::invalid_input, "invalid sweep range");
  AchievableOptions opts;
  opts.t_max = t_max;
  std::vector<Fig2Row> rows;
  for (int m = m_lo; m <= m_hi; ++m) {
    const BoundsReport r = achievable(m, n, opts);
    rows.push_back({m, n, r.plan.t, r.plan.regime, r.achievable, r.general_ub, r.beamforming_ub, r.baseline});
  }
  return rows;
}

std::vector<Rational> ratio_grid(int steps) {
  if (steps < 1) fail(ErrorKind::invalid_input, "ratio grid needs at least one step");
  std::vector<Rational> out;
  for (int k = 1; k <= steps; ++k) out.push_back(Rational(1) + Rational(k, steps));
  return out;
}

std::vector<Fig1Row> sweep_fig1(std::span<const int> ls, std::span<const Rational> ratios) {
  std::vector<Fig1Row> rows;
  for (const Rational& r : ratios) {
    if (!(r > 1 && r <= 2)) fail(ErrorKind::invalid_input, "ratios must lie in (1, 2]");
    Fig1Row row;
    row.ratio = r;
    for (int l : ls) row.chain.push_back(chain_dof_normalized(r, l));
    row.general_ub = general_upperbound(r, Rational(1));
    row.beamforming_ub = beamforming_upperbound(r, Rational(1));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string fig2_csv(const std::vector<Fig2Row>& rows) {
  std::ostringstream out;
  out << "m,n,t,regime,achievable,achievable_dec,general_ub,general_ub_dec,"
         "beamforming_ub,beamforming_ub_dec,baseline,baseline_dec\n";
  for (const auto& r : rows) {
    out << r.m << ',' << r.n << ',' << r.t << ',' << to_string(r.regime);
    for (const Rational* v : {&r.achievable, &r.general_ub, &r.beamforming_ub, &r.baseline})
      out << ',' << to_string(*v) << ',' << to_decimal(*v);
    out << '\n';
  }
  return out.str();
}

std::string fig1_csv(std::span<const int> ls, const std::vector<Fig1Row>& rows) {
  std::ostringstream out;
  out << "ratio,ratio_dec";
  for (int l : ls) out << ",L" << l << ",L" << l << "_dec";
  out << ",general_ub,general_ub_dec,beamforming_ub,beamforming_ub_dec\n";
  for (const auto& r : rows) {
    out << to_string(r.ratio) << ',' << to_decimal(r.ratio);
    for (const auto& v : r.chain) out << ',' << to_string(v) << ',' << to_decimal(v);
    out << ',' << to_string(r.general_ub) << ',' << to_decimal(r.general_ub);
    out << ',' << to_string(r.beamforming_ub) << ',' << to_decimal(r.beamforming_ub) << '\n';
  }
  return out.str();
}

}  // namespace ia3
