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

#include "ia3/matkit.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace ia3 {

constexpr int kUsers = 3;

enum class FieldMode { real, complex };

const char* to_string(FieldMode mode) noexcept;
FieldMode field_mode_from_string(const std::string& s);

/// The nine channel matrices of the 3-user M x N interference channel.
/// h(rx, tx) maps transmitter tx to receiver rx (both zero-based) and has
/// shape (n*t) x (m*t). With t > 1 every matrix is block-diagonal with t
/// identical n x m blocks (a constant channel seen over t slots).
class ChannelSet {
 public:
  using Grid = std::array<std::array<Mat, kUsers>, kUsers>;

  ChannelSet(int m, int n, int t, FieldMode field, std::uint64_t seed, Grid h);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  int t() const noexcept { return t_; }
  FieldMode field() const noexcept { return field_; }
  std::uint64_t seed() const noexcept { return seed_; }

  Eigen::Index tx_dim() const noexcept { return Eigen::Index{m_} * t_; }
  Eigen::Index rx_dim() const noexcept { return Eigen::Index{n_} * t_; }

  const Mat& h(int rx, int tx) const { return h_.at(rx).at(tx); }
  const Grid& grid() const noexcept { return h_; }

  /// The single-slot n x m block of h(rx, tx).
  Mat block(int rx, int tx) const { return h(rx, tx).topLeftCorner(n_, m_); }

  friend bool operator==(const ChannelSet& a, const ChannelSet& b);

 private:
  int m_;
  int n_;
  int t_;
  FieldMode field_;
  std::uint64_t seed_;
  Grid h_;
};

struct NoiseModel {
  double variance = 1.0;
  void validate() const;
};

/// i.i.d. unit-variance Gaussian entries (circularly symmetric in complex
/// mode), drawn in receiver-major, transmitter-minor, row-major order from a
/// stream owned by this call.
ChannelSet generate(int m, int n, std::uint64_t seed, FieldMode field = FieldMode::complex);

/// Symbol extension over t slots. Only unextended sets may be extended.
ChannelSet extend(const ChannelSet& ch, int t);

/// h'(i, j) = transpose(h(j, i)); transmit and receive roles swap.
ChannelSet reciprocal(const ChannelSet& ch);

/// Block-diagonal matrix with t copies of `block`.
Mat block_diagonal(const Mat& block, int t);

}  // namespace ia3
