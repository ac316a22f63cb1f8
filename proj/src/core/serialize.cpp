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

#include "ia3/serialize.hpp"

#include "ia3/error.hpp"
#include "ia3/pipeline.hpp"

namespace ia3 {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::invalid_input, std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json matrix_entries(const Mat& a) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.push_back({a(r, c).real(), a(r, c).imag()});
  return out;
}

Mat matrix_from_entries(const Json& entries, Eigen::Index rows, Eigen::Index cols) {
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != rows * cols)
    fail(ErrorKind::invalid_input, "matrix entry count does not match its shape");
  Mat a(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = entries[static_cast<std::size_t>(r * cols + c)];
      if (!e.is_array() || e.size() != 2) fail(ErrorKind::invalid_input, "matrix entries must be [re, im]");
      a(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  return a;
}

Json tolerance_to_json(const Tolerance& tol) {
  Json j;
  if (tol.rel_rank)
    j["rel_rank"] = *tol.rel_rank;
  else
    j["rel_rank"] = "auto";
  j["leakage"] = tol.leakage;
  return j;
}

Tolerance tolerance_from_json(const Json& j) {
  return guarded("tolerances", [&] {
    Tolerance tol;
    if (j.contains("rel_rank") && j["rel_rank"].is_number()) tol.rel_rank = j["rel_rank"].get<double>();
    if (j.contains("leakage")) tol.leakage = j["leakage"].get<double>();
    tol.validate();
    return tol;
  });
}

Json rational_to_json(const Rational& x) {
  return Json{{"value", to_string(x)}, {"decimal", to_double(x)}};
}

Json channel_to_json(const ChannelSet& ch) {
  Json j;
  j["format"] = "ia3.channel";
  j["tool_version"] = kToolVersion;
  j["m"] = ch.m();
  j["n"] = ch.n();
  j["t"] = ch.t();
  j["field_mode"] = to_string(ch.field());
  j["seed"] = ch.seed();
  Json h = Json::array();
  for (int i = 0; i < kUsers; ++i) {
    Json row = Json::array();
    for (int k = 0; k < kUsers; ++k) row.push_back(matrix_entries(ch.h(i, k)));
    h.push_back(std::move(row));
  }
  j["h"] = std::move(h);
  return j;
}

ChannelSet channel_from_json(const Json& j) {
  return guarded("channel", [&] {
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    const int t = j.at("t").get<int>();
    if (m < 1 || n < 1 || t < 1) fail(ErrorKind::invalid_input, "channel dimensions must be positive");
    const Json& h = j.at("h");
    if (!h.is_array() || h.size() != kUsers) fail(ErrorKind::invalid_input, "h must be a 3x3 array");
    ChannelSet::Grid grid;
    for (int i = 0; i < kUsers; ++i) {
      if (!h[i].is_array() || h[i].size() != kUsers) fail(ErrorKind::invalid_input, "h must be a 3x3 array");
      for (int k = 0; k < kUsers; ++k)
        grid[i][k] = matrix_from_entries(h[i][k], Eigen::Index{n} * t, Eigen::Index{m} * t);
    }
    return ChannelSet(m, n, t, field_mode_from_string(j.at("field_mode").get<std::string>()),
                      j.at("seed").get<std::uint64_t>(), std::move(grid));
  });
}

Json plan_to_json(const SchemePlan& plan) {
  Json j;
  j["regime"] = to_string(plan.regime);
  j["m"] = plan.m;
  j["n"] = plan.n;
  j["reciprocal"] = plan.reciprocal;
  j["t"] = plan.t;
  Json inst = Json::array();
  for (const auto& c : plan.instances) inst.push_back({{"l", c.l}, {"dtilde", c.dtilde}});
  j["instances"] = std::move(inst);
  j["per_user_streams"] = plan.per_user_streams;
  j["per_slot_dof_total"] = rational_to_json(plan.per_slot_dof_total);
  j["synthesis_supported"] = plan.synthesis_supported;
  return j;
}

SchemePlan plan_from_json(const Json& j) {
  return guarded("plan", [&] {
    SchemePlan plan;
    plan.regime = regime_from_string(j.at("regime").get<std::string>());
    plan.m = j.at("m").get<int>();
    plan.n = j.at("n").get<int>();
    plan.reciprocal = j.at("reciprocal").get<bool>();
    plan.t = j.at("t").get<int>();
    for (const auto& c : j.at("instances")) plan.instances.push_back({c.at("l").get<int>(), c.at("dtilde").get<int>()});
    plan.per_user_streams = j.at("per_user_streams").get<int>();
    plan.per_slot_dof_total = parse_rational(j.at("per_slot_dof_total").at("value").get<std::string>());
    plan.synthesis_supported = j.value("synthesis_supported", true);
    return plan;
  });
}

Json precoders_to_json(const ChannelSet& ch, const PrecoderSet& v) {
  Json j;
  j["format"] = "ia3.precoders";
  j["tool_version"] = kToolVersion;
  j["m"] = ch.m();
  j["n"] = ch.n();
  j["t"] = ch.t();
  j["seed"] = ch.seed();
  j["per_user_streams"] = {v.streams(0), v.streams(1), v.streams(2)};
  Json mats = Json::array();
  for (const auto& p : v.v) mats.push_back({{"rows", p.rows()}, {"cols", p.cols()}, {"entries", matrix_entries(p)}});
  j["v"] = std::move(mats);
  Json blocks = Json::array();
  for (const auto& b : v.block_map)
    blocks.push_back({{"user", b.user + 1},
                      {"col_begin", b.col_begin},
                      {"width", b.width},
                      {"instance", b.instance},
                      {"group", b.group},
                      {"block_index", b.block_index},
                      {"l", b.l}});
  j["block_map"] = std::move(blocks);
  j["plan"] = v.plan ? plan_to_json(*v.plan) : Json(nullptr);
  return j;
}

PrecoderSet precoders_from_json(const Json& j) {
  return guarded("precoders", [&] {
    PrecoderSet v;
    const Json& mats = j.at("v");
    if (!mats.is_array() || mats.size() != kUsers) fail(ErrorKind::invalid_input, "v must hold 3 matrices");
    for (int u = 0; u < kUsers; ++u)
      v.v[u] = matrix_from_entries(mats[u].at("entries"), mats[u].at("rows").get<Eigen::Index>(),
                                   mats[u].at("cols").get<Eigen::Index>());
    for (const auto& b : j.at("block_map"))
      v.block_map.push_back({b.at("user").get<int>() - 1, b.at("col_begin").get<Eigen::Index>(),
                             b.at("width").get<Eigen::Index>(), b.at("instance").get<int>(),
                             b.at("group").get<int>(), b.at("block_index").get<int>(), b.at("l").get<int>()});
    if (j.contains("plan") && !j["plan"].is_null()) v.plan = plan_from_json(j["plan"]);
    return v;
  });
}

Json certificate_to_json(const DofCertificate& cert) {
  Json j;
  j["format"] = "ia3.certificate";
  j["tool_version"] = kToolVersion;
  j["m"] = cert.m;
  j["n"] = cert.n;
  j["t"] = cert.t;
  j["seed"] = cert.seed;
  j["tolerances"] = tolerance_to_json(cert.tolerances);
  Json rx = Json::array();
  for (const auto& r : cert.receivers)
    rx.push_back({{"receiver", r.receiver},
                  {"streams", r.streams},
                  {"signal_rank", r.signal_rank},
                  {"interference_rank", r.interference_rank},
                  {"max_leakage", r.max_leakage},
                  {"pass", r.pass}});
  j["receivers"] = std::move(rx);
  j["streams_per_user"] = {cert.streams_per_user[0], cert.streams_per_user[1], cert.streams_per_user[2]};
  j["total_streams"] = cert.total_streams;
  j["per_slot_dof_total"] = rational_to_json(cert.per_slot_dof_total);
  j["max_leakage"] = cert.max_leakage();
  j["decoder_fallback"] = cert.decoder_fallback;
  j["note"] = cert.note;
  j["pass"] = cert.pass;
  return j;
}

Json bounds_to_json(const BoundsReport& r) {
  Json j;
  j["m"] = r.m;
  j["n"] = r.n;
  j["general_ub"] = rational_to_json(r.general_ub);
  j["beamforming_ub"] = rational_to_json(r.beamforming_ub);
  j["baseline"] = rational_to_json(r.baseline);
  j["achievable"] = rational_to_json(r.achievable);
  j["meets_general"] = r.meets_general;
  j["meets_beamforming"] = r.meets_beamforming;
  j["plan"] = plan_to_json(r.plan);
  return j;
}

Json rate_curve_to_json(const RateCurve& curve) {
  return Json{{"snr_db", curve.snr_db}, {"sum_rates", curve.sum_rates}, {"fitted_slope", curve.fitted_slope}};
}

Json fig2_to_json(const std::vector<Fig2Row>& rows) {
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back({{"m", r.m},
                   {"n", r.n},
                   {"t", r.t},
                   {"regime", to_string(r.regime)},
                   {"achievable", rational_to_json(r.achievable)},
                   {"general_ub", rational_to_json(r.general_ub)},
                   {"beamforming_ub", rational_to_json(r.beamforming_ub)},
                   {"baseline", rational_to_json(r.baseline)}});
  return out;
}

Json fig1_to_json(std::span<const int> ls, const std::vector<Fig1Row>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json chain = Json::array();
    for (std::size_t k = 0; k < ls.size(); ++k)
      chain.push_back({{"l", ls[k]}, {"dof_per_n", rational_to_json(r.chain[k])}});
    out.push_back({{"ratio", rational_to_json(r.ratio)},
                   {"chain", std::move(chain)},
                   {"general_ub", rational_to_json(r.general_ub)},
                   {"beamforming_ub", rational_to_json(r.beamforming_ub)}});
  }
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::invalid_input, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace ia3
