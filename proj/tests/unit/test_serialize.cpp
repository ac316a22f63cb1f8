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

#include "ia3/error.hpp"
#include "ia3/pipeline.hpp"
#include "ia3/rational.hpp"
#include "ia3/serialize.hpp"

#include <doctest.h>

using namespace ia3;

TEST_CASE("rational helpers") {
  CHECK(to_string(Rational(48, 5)) == "48/5");
  CHECK(to_string(Rational(10)) == "10");
  CHECK(to_decimal(Rational(90, 11)) == "8.181818");
  CHECK(parse_rational("16/5") == Rational(16, 5));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("3.2") == Rational(16, 5));
  CHECK_THROWS_AS(parse_rational("x/2"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK(positive_part(Rational(-1, 3)) == Rational(0));
}

TEST_CASE("matrices round-trip exactly through row-major entries") {
  const Mat a = complex_gaussian(3, 4, 1);
  const Json j = matrix_entries(a);
  REQUIRE(j.size() == 12);
  CHECK(j[1][0].get<double>() == a(0, 1).real());
  CHECK(matrix_from_entries(j, 3, 4) == a);
  CHECK_THROWS_AS(matrix_from_entries(j, 4, 4), Error);
}

TEST_CASE("channel documents round-trip") {
  const ChannelSet ch = extend(generate(5, 3, 99, FieldMode::real), 2);
  const Json j = channel_to_json(ch);
  CHECK(j["m"] == 5);
  CHECK(j["t"] == 2);
  CHECK(j["seed"] == 99);
  CHECK(j["field_mode"] == "real");
  CHECK(j.contains("tool_version"));
  CHECK(channel_from_json(j) == ch);
  CHECK(channel_from_json(parse_json(j.dump())) == ch);

  Json broken = j;
  broken["h"][0][0].erase(0);
  CHECK_THROWS_AS(channel_from_json(broken), Error);
  CHECK_THROWS_AS(parse_json("{not json"), Error);
}

TEST_CASE("plans and precoders round-trip") {
  const ChannelSet base = generate(8, 5, 4);
  const Scheme s = synthesize(base, plan_scheme(8, 5));
  const Json pj = precoders_to_json(s.channel, s.precoders);
  const PrecoderSet back = precoders_from_json(pj);
  for (int u = 0; u < 3; ++u) CHECK(back.v[u] == s.precoders.v[u]);
  CHECK(back.block_map == s.precoders.block_map);
  REQUIRE(back.plan.has_value());
  CHECK(*back.plan == *s.precoders.plan);
  CHECK(plan_from_json(plan_to_json(*s.precoders.plan)) == *s.precoders.plan);
}

TEST_CASE("certificate and tolerance documents") {
  const ChannelSet ch = generate(5, 3, 0);
  const DofCertificate c = certify(ch, synthesize(ch, plan_scheme(5, 3)).precoders);
  const Json j = certificate_to_json(c);
  CHECK(j["pass"] == true);
  CHECK(j["per_slot_dof_total"]["value"] == "6");
  CHECK(j["tolerances"]["rel_rank"] == "auto");
  CHECK(j["receivers"].size() == 3);
  Tolerance t;
  t.rel_rank = 1e-9;
  CHECK(tolerance_from_json(tolerance_to_json(t)).rel_rank == 1e-9);
  CHECK_FALSE(tolerance_from_json(tolerance_to_json(Tolerance{})).rel_rank.has_value());
}
