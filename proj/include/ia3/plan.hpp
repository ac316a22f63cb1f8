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

#include "ia3/rational.hpp"

#include <string>
#include <vector>

namespace ia3 {

enum class Regime {
  zero_forcing,
  nullspace_intersection,
  chain,
  mixed_chain,
  /// M = N: only the known 3M/2 reference value is reported.
  equal_antennas,
};

const char* to_string(Regime r) noexcept;
Regime regime_from_string(const std::string& s);

struct ChainInstance {
  int l = 0;
  int dtilde = 0;

  friend bool operator==(const ChainInstance&, const ChainInstance&) = default;
};

/// A recipe for one achievable scheme. `m`/`n` are the antenna counts of the
/// channel the user asked about; when `reciprocal` is set the scheme is
/// designed on the (n, m) reciprocal channel and mapped back.
struct SchemePlan {
  Regime regime = Regime::chain;
  int m = 0;
  int n = 0;
  bool reciprocal = false;
  int t = 1;
  std::vector<ChainInstance> instances;
  /// Streams per user over all t slots.
  int per_user_streams = 0;
  Rational per_slot_dof_total{0};
  bool synthesis_supported = true;

  int design_m() const noexcept { return reciprocal ? n : m; }
  int design_n() const noexcept { return reciprocal ? m : n; }

  friend bool operator==(const SchemePlan&, const SchemePlan&) = default;
};

/// Throws invalid_input when a chain instance exceeds its nullspace
/// dimension or the instances overrun the receive dimensions.
void validate_plan(const SchemePlan& plan);

}  // namespace ia3
