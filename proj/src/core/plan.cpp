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

#include "ia3/plan.hpp"

#include "ia3/error.hpp"

#include <algorithm>
#include <string>

namespace ia3 {

const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::zero_forcing: return "zero_forcing";
    case Regime::nullspace_intersection: return "nullspace_intersection";
    case Regime::chain: return "chain";
    case Regime::mixed_chain: return "mixed_chain";
    case Regime::equal_antennas: return "equal_antennas";
  }
  return "unknown";
}

Regime regime_from_string(const std::string& s) {
  for (Regime r : {Regime::zero_forcing, Regime::nullspace_intersection, Regime::chain,
                   Regime::mixed_chain, Regime::equal_antennas})
    if (s == to_string(r)) return r;
  fail(ErrorKind::invalid_input, "unknown regime '" + s + "'");
}

void validate_plan(const SchemePlan& plan) {
  if (plan.m < 1 || plan.n < 1 || plan.t < 1)
    fail(ErrorKind::invalid_input, "plan has non-positive dimensions");
  const long long m = plan.design_m();
  const long long n = plan.design_n();
  const long long t = plan.t;
  long long used = 0;
  for (const auto& inst : plan.instances) {
    if (inst.l < 0 || inst.dtilde < 0) fail(ErrorKind::invalid_input, "negative chain parameters");
    const long long cap = std::max(0LL, ((inst.l + 1) * m - (inst.l + 2) * n) * t);
    if (inst.dtilde > cap)
      fail(ErrorKind::invalid_input, "chain instance L=" + std::to_string(inst.l) +
                                         " asks for more streams than its nullspace holds");
    used += (2LL * inst.l + 1) * inst.dtilde;
  }
  if (used > n * t) fail(ErrorKind::invalid_input, "chain instances overrun the receive dimensions");
}

}  // namespace ia3
