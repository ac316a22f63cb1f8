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

#pragma once

// Exact bookkeeping of DoF bounds and achievability. Nothing here touches
// floating point except the decimal column of rendered tables.

#include "ia3/plan.hpp"
#include "ia3/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ia3 {

constexpr int kDefaultTMax = 24;

/// min{3M, 3N, max(2M, N), max(M, 2N), 3/2 max(M, N)}.
Rational general_upperbound(const Rational& m, const Rational& n);
Rational general_upperbound(int m, int n);

/// 3(M + N)/4, the limit for linear beamforming without extension tricks.
Rational beamforming_upperbound(const Rational& m, const Rational& n);
Rational beamforming_upperbound(int m, int n);

/// 3MN/(M + N).
Rational baseline_khandani(int m, int n);

/// Per-slot total DoF of the single-L chain scheme:
/// min{3(L+1)((L+1)M - (L+2)N)^+, 3(L+1)N/(2L+1)}.
Rational chain_dof(int m, int n, int l);

/// Same quantity normalized by N for a ratio r = M/N.
Rational chain_dof_normalized(const Rational& ratio, int l);

/// Nullspace dimension (L+1)M - (L+2)N of one chain group (may be <= 0).
long long chain_nullspace_dim(int m, int n, int l);

/// Smallest L >= 1 with (L+1)M - (L+2)N >= 1. Requires N < M < 2N.
int min_feasible_l(int m, int n);

/// Greedy mixed-L allocation at a fixed extension factor t.
SchemePlan greedy_plan_at(int m, int n, int t);

/// Best greedy plan over t = 1..t_max (ties: smallest t).
SchemePlan greedy_plan(int m, int n, int t_max = kDefaultTMax);

/// A single forced chain instance. dtilde defaults to
/// min(t((L+1)M - (L+2)N), floor(N t / (2L+1))).
SchemePlan chain_plan(int m, int n, int l, std::optional<int> dtilde, int t);

struct AchievableOptions {
  int t_max = kDefaultTMax;
  /// Use a 3-slot extension in the 2 <= M/N < 3 regime when 3 does not
  /// divide M; otherwise floor(M/3) streams per user at t = 1.
  bool extend_nullspace_intersection = true;
  /// Forces the extension factor (chain regimes restrict the greedy search
  /// to exactly this t).
  std::optional<int> t;
};

struct BoundsReport {
  int m = 0;
  int n = 0;
  Rational general_ub{0};
  Rational beamforming_ub{0};
  Rational baseline{0};
  Rational achievable{0};
  SchemePlan plan;
  bool meets_general = false;
  bool meets_beamforming = false;
};

BoundsReport achievable(int m, int n, const AchievableOptions& opts = {});

struct Fig2Row {
  int m = 0;
  int n = 0;
  int t = 1;
  Regime regime = Regime::chain;
  Rational achievable{0};
  Rational general_ub{0};
  Rational beamforming_ub{0};
  Rational baseline{0};
};

std::vector<Fig2Row> sweep_fig2(int n, int m_lo, int m_hi, int t_max = kDefaultTMax);

struct Fig1Row {
  Rational ratio{0};
  /// One normalized chain value per requested L, in request order.
  std::vector<Rational> chain;
  Rational general_ub{0};
  Rational beamforming_ub{0};
};

std::vector<Fig1Row> sweep_fig1(std::span<const int> ls, std::span<const Rational> ratios);

/// Ratios 1 + k/steps for k = 1..steps, i.e. an even grid on (1, 2].
std::vector<Rational> ratio_grid(int steps);

std::string fig2_csv(const std::vector<Fig2Row>& rows);
std::string fig1_csv(std::span<const int> ls, const std::vector<Fig1Row>& rows);

}  // namespace ia3
