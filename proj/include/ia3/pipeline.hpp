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

#include "ia3/alignment.hpp"
#include "ia3/channel.hpp"
#include "ia3/dofcalc.hpp"
#include "ia3/plan.hpp"

#include <optional>

namespace ia3 {

inline constexpr const char* kToolVersion = "0.1.0";

/// A channel together with precoders designed for it. `channel` is already
/// extended to the plan's t and in the orientation the caller asked about.
struct Scheme {
  ChannelSet channel;
  PrecoderSet precoders;
};

struct PlanRequest {
  std::optional<int> l;
  std::optional<int> dtilde;
  std::optional<int> t;
  int t_max = kDefaultTMax;
  bool extend_nullspace_intersection = true;
};

/// Auto-selects the regime through achievable() unless a chain depth is
/// forced, in which case a single chain instance is planned.
SchemePlan plan_scheme(int m, int n, const PlanRequest& req = {});

/// Realizes a plan on an unextended channel: applies reciprocity and symbol
/// extension as the plan demands, then runs the regime's synthesis. For
/// reciprocal plans the precoders are the conjugated zero-forcing decoders of
/// the reciprocal design.
Scheme synthesize(const ChannelSet& base, const SchemePlan& plan, const Tolerance& tol = {});

}  // namespace ia3
