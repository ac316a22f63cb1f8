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

#include <cmath>
#include <random>
#include <string>

namespace ia3 {

const char* to_string(FieldMode mode) noexcept {
  return mode == FieldMode::real ? "real" : "complex";
}

FieldMode field_mode_from_string(const std::string& s) {
  if (s == "real") return FieldMode::real;
  if (s == "complex") return FieldMode::complex;
  fail(ErrorKind::invalid_input, "unknown field mode '" + s + "'");
}

ChannelSet::ChannelSet(int m, int n, int t, FieldMode field, std::uint64_t seed, Grid h)
    : m_(m), n_(n), t_(t), field_(field), seed_(seed), h_(std::move(h)) {
  if (m_ < 1 || n_ < 1) fail(ErrorKind::invalid_input, "antenna counts must be positive");
  if (t_ < 1) fail(ErrorKind::invalid_input, "extension factor must be at least 1");
  for (int i = 0; i < kUsers; ++i)
    for (int j = 0; j < kUsers; ++j) {
      const Mat& a = h_[i][j];
      if (a.rows() != rx_dim() || a.cols() != tx_dim())
        fail(ErrorKind::invalid_input, "channel matrix (" + std::to_string(i + 1) + "," +
                                           std::to_string(j + 1) + ") has the wrong shape");
      require_finite(a, "channel");
      if (t_ > 1 && a != block_diagonal(a.topLeftCorner(n_, m_), t_))
        fail(ErrorKind::invalid_input, "extended channel is not block-diagonal with identical blocks");
    }
}

bool operator==(const ChannelSet& a, const ChannelSet& b) {
  return a.m_ == b.m_ && a.n_ == b.n_ && a.t_ == b.t_ && a.field_ == b.field_ &&
         a.seed_ == b.seed_ && a.h_ == b.h_;
}

void NoiseModel::validate() const {
  if (!(variance > 0.0) || !std::isfinite(variance))
    fail(ErrorKind::invalid_input, "noise variance must be positive");
}

ChannelSet generate(int m, int n, std::uint64_t seed, FieldMode field) {
  if (m < 1 || n < 1) fail(ErrorKind::invalid_input, "antenna counts must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(2.0);
  ChannelSet::Grid h;
  for (auto& row : h)
    for (auto& a : row) {
      a.resize(n, m);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < m; ++c) {
          if (field == FieldMode::real) {
            a(r, c) = cplx(normal(rng), 0.0);
          } else {
            const double re = normal(rng);
            const double im = normal(rng);
            a(r, c) = cplx(re * scale, im * scale);
          }
        }
    }
  return ChannelSet(m, n, 1, field, seed, std::move(h));
}

Mat block_diagonal(const Mat& block, int t) {
  Mat out = Mat::Zero(block.rows() * t, block.cols() * t);
  for (int s = 0; s < t; ++s)
    out.block(s * block.rows(), s * block.cols(), block.rows(), block.cols()) = block;
  return out;
}

ChannelSet extend(const ChannelSet& ch, int t) {
  if (ch.t() != 1) fail(ErrorKind::invalid_input, "channel set is already extended");
  if (t < 1) fail(ErrorKind::invalid_input, "extension factor must be at least 1");
  if (t == 1) return ch;
  ChannelSet::Grid h;
  for (int i = 0; i < kUsers; ++i)
    for (int j = 0; j < kUsers; ++j) h[i][j] = block_diagonal(ch.h(i, j), t);
  return ChannelSet(ch.m(), ch.n(), t, ch.field(), ch.seed(), std::move(h));
}

ChannelSet reciprocal(const ChannelSet& ch) {
  ChannelSet::Grid h;
  for (int i = 0; i < kUsers; ++i)
    for (int j = 0; j < kUsers; ++j) h[i][j] = ch.h(j, i).transpose();
  return ChannelSet(ch.n(), ch.m(), ch.t(), ch.field(), ch.seed(), std::move(h));
}

}  // namespace ia3
