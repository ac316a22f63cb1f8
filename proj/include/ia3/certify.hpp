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
#include "ia3/matkit.hpp"
#include "ia3/rational.hpp"

#include <array>
#include <string>
#include <vector>

namespace ia3 {

struct ReceiverReport {
  int receiver = 0;
  Eigen::Index streams = 0;
  std::size_t signal_rank = 0;
  std::size_t interference_rank = 0;
  double max_leakage = 0.0;
  bool pass = false;
};

/// Rank-based evidence that a precoder set delivers its streams
/// interference-free. pass holds iff every receiver has full signal rank,
/// its interference fits in the remaining dimensions and leakage stays
/// under the tolerance.
struct DofCertificate {
  int m = 0;
  int n = 0;
  int t = 1;
  std::uint64_t seed = 0;
  Tolerance tolerances;
  std::array<ReceiverReport, kUsers> receivers{};
  std::array<Eigen::Index, kUsers> streams_per_user{};
  Eigen::Index total_streams = 0;
  Rational per_slot_dof_total{0};
  /// Set when the zero-forcing decoder could not be formed and the
  /// minimum-leakage decoder was used instead.
  bool decoder_fallback = false;
  std::string note;
  bool pass = false;

  double max_leakage() const;
};

struct RateCurve {
  std::vector<double> snr_db;
  std::vector<double> sum_rates;
  double fitted_slope = 0.0;
};

/// [H_{i,j} V_j for j != i], skipping users without streams.
Mat interference_matrix(const ChannelSet& ch, const PrecoderSet& v, int receiver);

/// Projects onto the orthogonal complement of each receiver's interference
/// and keeps the d_i strongest directions of the projected direct channel.
/// Throws not_certifiable when the complement is too small or the effective
/// direct channel is rank deficient.
DecoderSet build_decoders(const ChannelSet& ch, const PrecoderSet& v, const Tolerance& tol = {});

/// Like build_decoders, but a receiver that cannot be zero-forced gets the d_i
/// directions of least interference energy. Reasons are appended to *note.
DecoderSet build_decoders_relaxed(const ChannelSet& ch, const PrecoderSet& v, const Tolerance& tol,
                                  std::string* note);

/// Entry (i, j), i != j: ||U_i^H H_ij V_j||_F / (||U_i||_2 ||H_ij||_F ||V_j||_F).
/// Diagonal entries carry the same ratio for the desired signal.
Eigen::MatrixXd leakage(const ChannelSet& ch, const PrecoderSet& v, const DecoderSet& u);

DofCertificate certify(const ChannelSet& ch, const PrecoderSet& v, const Tolerance& tol = {});

/// Sum over users of log2 det(I + Q^-1 S) with equal power per stream,
/// interference residue counted as noise. The slope is a least-squares fit
/// of sum rate against log2(SNR) over the top decade of the grid.
RateCurve estimate_dof_slope(const ChannelSet& ch, const PrecoderSet& v, const DecoderSet& u,
                             const NoiseModel& noise, const std::vector<double>& snr_db,
                             const Tolerance& tol = {});

/// Fixed-order human-readable table of a certificate.
std::string certificate_table(const DofCertificate& cert);

}  // namespace ia3
