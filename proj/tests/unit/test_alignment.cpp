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
#include "support/oracles.hpp"

#include <doctest.h>

using namespace ia3;

TEST_CASE("L = 1 schedule reproduces the explicit nine-constraint system") {
  const ChainSchedule s = chain_block_schedule(1);
  // (user, block_index) per group, zero-based users.
  const std::vector<ScheduledBlock> g0 = {{0, 1}, {1, 1}};
  const std::vector<ScheduledBlock> g1 = {{1, 2}, {2, 1}};
  const std::vector<ScheduledBlock> g2 = {{2, 2}, {0, 2}};
  CHECK(s.groups[0] == g0);
  CHECK(s.groups[1] == g1);
  CHECK(s.groups[2] == g2);
  CHECK(s.receiver_of_constraint[0] == std::vector<int>{1, 2, 0});
  CHECK(s.receiver_of_constraint[1] == std::vector<int>{2, 0, 1});
  CHECK(s.receiver_of_constraint[2] == std::vector<int>{0, 1, 2});
}

TEST_CASE("deeper schedules keep their shape") {
  for (int l = 1; l <= 6; ++l) {
    const ChainSchedule s = chain_block_schedule(l);
    std::array<int, kUsers> blocks{};
    for (int g = 0; g < kUsers; ++g) {
      REQUIRE(s.groups[g].size() == static_cast<std::size_t>(l + 1));
      CHECK(s.receiver_of_constraint[g].size() == static_cast<std::size_t>(l + 2));
      for (int k = 0; k <= l; ++k) {
        CHECK(s.groups[g][k].user == (g + k) % 3);
        ++blocks[s.groups[g][k].user];
      }
      // A block never has to vanish at its own receiver.
      CHECK(s.receiver_of_constraint[g].front() != s.groups[g].front().user);
      CHECK(s.receiver_of_constraint[g].back() != s.groups[g].back().user);
    }
    CHECK(blocks[0] + blocks[1] + blocks[2] == 3 * (l + 1));
  }
}

TEST_CASE("stacked chain system has the predicted nullspace dimension") {
  for (auto [m, n, l] : {std::tuple{5, 3, 1}, {7, 5, 2}, {8, 5, 1}, {9, 7, 3}, {4, 3, 2}}) {
    const ChannelSet ch = generate(m, n, 3);
    const ChainSchedule s = chain_block_schedule(l);
    for (int g = 0; g < kUsers; ++g) {
      const Mat a = build_chain_system(ch, s, g);
      CHECK(a.rows() == (l + 2) * n);
      CHECK(a.cols() == (l + 1) * m);
      CHECK(a.cols() - oracle::lu_rank(a) == chain_nullspace_dim(m, n, l));
    }
  }
}

TEST_CASE("chain solutions satisfy every constraint and certify") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ChannelSet ch = generate(7, 5, seed);
    const PrecoderSet v = solve_chain(ch, 2, 1);
    CHECK(v.streams(0) == 3);
    for (double r : chain_constraint_residuals(ch, v, 0)) CHECK(r <= 1e-10);
    const DofCertificate c = certify(ch, v);
    CHECK(c.pass);
    CHECK(c.total_streams == 9);
  }
  CHECK_THROWS_AS(solve_chain(generate(5, 3, 0), 1, 2), Error);
  CHECK_THROWS_AS(solve_chain(generate(3, 5, 0), 1, 1), Error);
}

TEST_CASE("pseudo-inverse route spans the same blocks as the stacked route") {
  for (auto [m, n, l] : {std::tuple{5, 3, 1}, {8, 5, 1}, {7, 5, 2}}) {
    const ChannelSet ch = generate(m, n, 21);
    const int d = static_cast<int>(chain_nullspace_dim(m, n, l));
    const PrecoderSet a = solve_chain(ch, l, d);
    const PrecoderSet b = solve_chain_xi(ch, l, d);
    CHECK(max_block_angle(a, b) <= 1e-6);
    const Mat xi = build_xi_system(ch, chain_block_schedule(l), 0);
    CHECK(xi.rows() == m);
  }
}

TEST_CASE("zero-forcing and nullspace-intersection constructions") {
  const ChannelSet zf = generate(9, 3, 4);
  const PrecoderSet v = synth_zero_forcing(zf);
  CHECK(v.total_streams() == 9);
  CHECK(certify(zf, v).pass);
  CHECK_THROWS_AS(synth_zero_forcing(generate(8, 3, 0)), Error);

  const ChannelSet ni = generate(12, 5, 4);
  const auto [p, u] = synth_nullspace_intersection(ni, 4, 9);
  CHECK(p.total_streams() == 12);
  CHECK(certify(ni, p).pass);
  // The designed decoders already null the interference.
  const Eigen::MatrixXd leak = leakage(ni, p, u);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(leak(i, j) <= 1e-10);
  CHECK_THROWS_AS(synth_nullspace_intersection(ni, 5, 9), Error);
  CHECK_THROWS_AS(synth_nullspace_intersection(generate(9, 3, 0), 3, 9), Error);
}

TEST_CASE("precoder validation") {
  const ChannelSet ch = generate(5, 3, 0);
  PrecoderSet v = solve_chain(ch, 1, 1);
  CHECK_NOTHROW(validate_precoders(ch, v));
  PrecoderSet scaled = v;
  scaled.v[0] *= 2.0;
  CHECK_THROWS_AS(validate_precoders(ch, scaled), Error);
  PrecoderSet gap = v;
  gap.block_map.pop_back();
  CHECK_THROWS_AS(validate_precoders(ch, gap), Error);
}

TEST_CASE("mixed allocations stack instance blocks") {
  const ChannelSet base = generate(30, 19, 2);
  const SchemePlan plan = greedy_plan(30, 19, 1);
  const PrecoderSet v = synth_mixed(base, plan);
  CHECK(v.streams(1) == 12);
  CHECK(v.block_map.size() == 15u);
  const DofCertificate c = certify(base, v);
  CHECK(c.pass);
  CHECK(c.total_streams == 36);
}

TEST_CASE("symbol-extended mixed plan") {
  const SchemePlan plan = greedy_plan(8, 5);
  const Scheme s = synthesize(generate(8, 5, 6), plan);
  CHECK(s.channel.t() == 5);
  const DofCertificate c = certify(s.channel, s.precoders);
  CHECK(c.pass);
  CHECK(c.per_slot_dof_total == Rational(48, 5));
}

TEST_CASE("reciprocal synthesis serves the original link") {
  const ChannelSet base = generate(3, 5, 1);
  const Scheme s = synthesize(base, plan_scheme(3, 5, {}));
  CHECK(s.channel == base);
  const DofCertificate c = certify(s.channel, s.precoders);
  CHECK(c.pass);
  CHECK(c.total_streams == 6);
}
