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

#include "ia3/channel.hpp"
#include "ia3/error.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

using namespace ia3;

TEST_CASE("generated channels have the right shapes and are seed-reproducible") {
  const ChannelSet a = generate(5, 3, 17);
  CHECK(a.m() == 5);
  CHECK(a.n() == 3);
  CHECK(a.t() == 1);
  for (int i = 0; i < kUsers; ++i)
    for (int j = 0; j < kUsers; ++j) {
      CHECK(a.h(i, j).rows() == 3);
      CHECK(a.h(i, j).cols() == 5);
      CHECK(oracle::lu_rank(a.h(i, j)) == 3);
    }
  CHECK(a == generate(5, 3, 17));
  CHECK(!(a == generate(5, 3, 18)));
  CHECK(a.h(0, 1) != a.h(1, 0));
}

TEST_CASE("real field mode draws real entries") {
  const ChannelSet a = generate(4, 2, 3, FieldMode::real);
  for (const auto& row : a.grid())
    for (const Mat& h : row) CHECK(h.imag().norm() == 0.0);
  CHECK(field_mode_from_string("real") == FieldMode::real);
  CHECK(std::string(to_string(FieldMode::complex)) == "complex");
  CHECK_THROWS_AS(field_mode_from_string("quaternion"), Error);
}

TEST_CASE("symbol extension builds exact block-diagonal copies") {
  const ChannelSet base = generate(5, 3, 2);
  const ChannelSet ext = extend(base, 3);
  CHECK(ext.t() == 3);
  CHECK(ext.m() == 5);
  for (int i = 0; i < kUsers; ++i)
    for (int j = 0; j < kUsers; ++j) {
      const Mat& h = ext.h(i, j);
      REQUIRE(h.rows() == 9);
      REQUIRE(h.cols() == 15);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const Mat blk = h.block(3 * a, 5 * b, 3, 5);
          if (a == b)
            CHECK(blk == base.h(i, j));
          else
            CHECK(blk.cwiseAbs().maxCoeff() == 0.0);
        }
      // Rank adds across diagonal blocks.
      CHECK(oracle::lu_rank(h) == 3 * oracle::lu_rank(base.h(i, j)));
    }
  CHECK(ext.block(0, 1) == base.h(0, 1));
  CHECK(extend(base, 1) == base);
  CHECK_THROWS_AS(extend(ext, 2), Error);
  CHECK_THROWS_AS(extend(base, 0), Error);
}

TEST_CASE("reciprocal channel transposes without conjugation and is an involution") {
  const ChannelSet a = generate(5, 3, 8);
  const ChannelSet r = reciprocal(a);
  CHECK(r.m() == 3);
  CHECK(r.n() == 5);
  for (int i = 0; i < kUsers; ++i)
    for (int j = 0; j < kUsers; ++j) CHECK(r.h(i, j) == a.h(j, i).transpose());
  CHECK(reciprocal(r) == a);
}

TEST_CASE("constructor rejects malformed grids") {
  const ChannelSet a = generate(3, 2, 0);
  ChannelSet::Grid g = a.grid();
  g[1][2] = Mat::Zero(2, 4);
  CHECK_THROWS_AS(ChannelSet(3, 2, 1, FieldMode::complex, 0, g), Error);

  // t = 2 grid that is not block diagonal.
  ChannelSet::Grid d;
  for (int i = 0; i < kUsers; ++i)
    for (int j = 0; j < kUsers; ++j) d[i][j] = block_diagonal(a.h(i, j), 2);
  CHECK_NOTHROW(ChannelSet(3, 2, 2, FieldMode::complex, 0, d));
  d[0][0](0, 4) = 1.0;
  CHECK_THROWS_AS(ChannelSet(3, 2, 2, FieldMode::complex, 0, d), Error);

  CHECK_THROWS_AS(generate(0, 2, 0), Error);
  CHECK_THROWS_AS(NoiseModel{-1.0}.validate(), Error);
}
