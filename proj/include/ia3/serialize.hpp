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

// JSON documents exchanged through the CLI and the C API. Matrices are
// encoded row-major as arrays of [re, im] pairs.

#include "ia3/alignment.hpp"
#include "ia3/certify.hpp"
#include "ia3/channel.hpp"
#include "ia3/dofcalc.hpp"
#include "ia3/plan.hpp"

#include <json.hpp>

#include <span>

namespace ia3 {

using Json = nlohmann::ordered_json;

Json matrix_entries(const Mat& a);
Mat matrix_from_entries(const Json& entries, Eigen::Index rows, Eigen::Index cols);

Json tolerance_to_json(const Tolerance& tol);
Tolerance tolerance_from_json(const Json& j);

/// {m, n, t, field_mode, seed, h}
Json channel_to_json(const ChannelSet& ch);
ChannelSet channel_from_json(const Json& j);

Json plan_to_json(const SchemePlan& plan);
SchemePlan plan_from_json(const Json& j);

/// {m, n, t, seed, per_user_streams, v, block_map, plan}
Json precoders_to_json(const ChannelSet& ch, const PrecoderSet& v);
PrecoderSet precoders_from_json(const Json& j);

Json certificate_to_json(const DofCertificate& cert);
Json bounds_to_json(const BoundsReport& report);
Json rate_curve_to_json(const RateCurve& curve);
Json fig2_to_json(const std::vector<Fig2Row>& rows);
Json fig1_to_json(std::span<const int> ls, const std::vector<Fig1Row>& rows);

/// {"p/q", decimal}
Json rational_to_json(const Rational& x);

/// Parses text, mapping parse failures onto invalid_input.
Json parse_json(const std::string& text);

}  // namespace ia3
