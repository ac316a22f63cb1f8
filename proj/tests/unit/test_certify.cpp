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

#include "ia3/alignment.hpp"
#include "ia3/certify.hpp"
#include "ia3/dofcalc.hpp"
#include "ia3/error.hpp"
#include "ia3/pipeline.hpp"

#include <doctest.h>

#include <cmath>

using namespace ia3;

namespace {

PrecoderSet random_precoders(const ChannelSet& ch, Eigen::Index d, std::uint64_t seed) {
  PrecoderSet v;
  for (int u = 0; u < kUsers; ++u) {
    v.v[u] = complex_gaussian(ch.tx_dim(), d, derive_seed(seed, u)).colwise().normalized();
    v.block_map.push_back({u, 0, d, 0, 0, 1, 0});
  }
  return v;
}

}  // namespace

TEST_CASE("aligned chain scheme passes with tiny leakage") {
  const ChannelSet ch = generate(5, 3, 12);
  const PrecoderSet v = solve_chain(ch, 1, 1);
  const DofCertificate c = certify(ch, v);
  CHECK(c.pass);
  CHECK_FALSE(c.decoder_fallback);
  CHECK(c.max_leakage() <= 1e-10);
  CHECK(c.per_slot_dof_total == Rational(6));
  for (const auto& r : c.receivers) {
    CHECK(r.signal_rank == 2);
    CHECK(r.interference_rank == 1);
  }
  const std::string table = certificate_table(c);
  CHECK(table.find("receiver  streams  signal_rank  interference_rank") == 0);
  CHECK(table.find("certificate PASS") != std::string::npos);
}

TEST_CASE("unaligned precoders fail with large leakage") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ChannelSet ch = generate(5, 3, seed);
    const PrecoderSet v = random_precoders(ch, 2, seed);
    const DofCertificate c = certify(ch, v);
    CHECK_FALSE(c.pass);
    CHECK(c.decoder_fallback);
    CHECK(c.max_leakage() > 0.1);
    CHECK_THROWS_AS(build_decoders(ch, v), Error);
  }
}

TEST_CASE("leakage is scale invariant and zero precoders are rejected") {
  const ChannelSet ch = generate(5, 3, 1);
  const PrecoderSet v = solve_chain(ch, 1, 1);
  const DecoderSet u = build_decoders(ch, v);
  const Eigen::MatrixXd a = leakage(ch, v, u);
  DecoderSet scaled = u;
  for (auto& m : scaled.u) m *= 3.0;
  CHECK((leakage(ch, v, scaled) - a).norm() <= 1e-12);
  PrecoderSet zero = v;
  zero.v[1].setZero();
  CHECK_THROWS_AS(leakage(ch, zero, u), Error);
  // Decoders returned by build_decoders are orthonormal.
  for (const Mat& d : u.u) CHECK(is_orthonormal(d, 1e-10));
}

TEST_CASE("interference matrix skips the receiver's own user") {
  const ChannelSet ch = generate(5, 3, 2);
  const PrecoderSet v = solve_chain(ch, 1, 1);
  const Mat g = interference_matrix(ch, v, 0);
  CHECK(g.cols() == v.streams(1) + v.streams(2));
  CHECK(g.leftCols(v.streams(1)).isApprox(ch.h(0, 1) * v.v[1]));
}

TEST_CASE("receive-dimension oversubscription reaches the certificate and fails") {
  // (9,5) L=1 has a 3-dimensional chain nullspace but only 5 receive
  // dimensions, so three streams per block cannot be separated.
  const ChannelSet ch = generate(9, 5, 3);
  const Scheme s = synthesize(ch, chain_plan(9, 5, 1, 3, 1));
  const DofCertificate c = certify(s.channel, s.precoders);
  CHECK_FALSE(c.pass);
  CHECK(c.decoder_fallback);
  CHECK_FALSE(c.note.empty());
  CHECK_THROWS_AS(solve_chain(generate(8, 5, 3), 1, 2), Error);
}

TEST_CASE("sum-rate slope tracks the certified DoF") {
  const ChannelSet ch = generate(5, 3, 5);
  const PrecoderSet v = solve_chain(ch, 1, 1);
  const DecoderSet u = build_decoders(ch, v);
  std::vector<double> grid;
  for (double s = 40.0; s <= 60.0; s += 2.0) grid.push_back(s);
  const RateCurve curve = estimate_dof_slope(ch, v, u, NoiseModel{}, grid);
  REQUIRE(curve.sum_rates.size() == grid.size());
  for (std::size_t k = 1; k < grid.size(); ++k) CHECK(curve.sum_rates[k] > curve.sum_rates[k - 1]);
  CHECK(std::abs(curve.fitted_slope - 6.0) <= 0.3);
  CHECK_THROWS_AS(estimate_dof_slope(ch, v, u, NoiseModel{}, {40.0}), Error);
  CHECK_THROWS_AS(estimate_dof_slope(ch, v, u, NoiseModel{0.0}, grid), Error);
}

TEST_CASE("unaligned schemes saturate") {
  const ChannelSet ch = generate(5, 3, 6);
  const PrecoderSet v = random_precoders(ch, 1, 6);
  DecoderSet u;
  for (int i = 0; i < kUsers; ++i) u.u[i] = complex_gaussian(3, 1, 50 + i).normalized();
  std::vector<double> grid = {40, 45, 50, 55, 60};
  const RateCurve curve = estimate_dof_slope(ch, v, u, NoiseModel{}, grid);
  CHECK(curve.fitted_slope < 0.5);
}
