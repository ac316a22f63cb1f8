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

// Precoder synthesis for every regime of the 3-user M x N channel:
// zero-forcing (M >= 3N), nullspace intersection (2N <= M < 3N), the L-chain
// scheme (N < M < 2N) and mixed-L combinations of chains.
//
// Users, receivers and groups are zero-based in code; block indices are
// one-based to match the V_u^(k) partition of a user's precoder.

#include "ia3/channel.hpp"
#include "ia3/matkit.hpp"
#include "ia3/plan.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace ia3 {

struct ScheduledBlock {
  int user = 0;
  int block_index = 1;

  friend bool operator==(const ScheduledBlock&, const ScheduledBlock&) = default;
};

/// Which block each chain position fills and which receiver each of the
/// L + 2 constraints of a group acts on.
///
/// Group i visits users <i>, <i+1>, ..., <i+L> (mod 3). Constraint 0 puts the
/// first block in the nullspace of receiver <i+1>; constraint k (1..L) aligns
/// blocks k and k-1 at receiver <i+k+1>, the one user the pair does not
/// serve; constraint L+1 puts the last block in the nullspace of receiver
/// <i+L-1>.
struct ChainSchedule {
  int l = 0;
  std::array<std::vector<ScheduledBlock>, kUsers> groups;
  std::array<std::vector<int>, kUsers> receiver_of_constraint;
};

ChainSchedule chain_block_schedule(int l);

/// Provenance of a contiguous column range of one user's precoder.
struct BlockInfo {
  int user = 0;
  Eigen::Index col_begin = 0;
  Eigen::Index width = 0;
  int instance = 0;
  /// Chain group 1..3; 0 for blocks that do not come from a chain.
  int group = 0;
  int block_index = 1;
  int l = 0;

  friend bool operator==(const BlockInfo&, const BlockInfo&) = default;
};

struct PrecoderSet {
  std::array<Mat, kUsers> v;
  std::vector<BlockInfo> block_map;
  std::optional<SchemePlan> plan;

  Eigen::Index streams(int user) const { return v.at(user).cols(); }
  Eigen::Index total_streams() const { return streams(0) + streams(1) + streams(2); }
};

struct DecoderSet {
  std::array<Mat, kUsers> u;
};

/// Checks shapes against the channel, unit-norm columns and that the block
/// map partitions every user's columns. Throws invalid_input.
void validate_precoders(const ChannelSet& ch, const PrecoderSet& v);

/// Stacked homogeneous system of one chain group: a vector (v_0; ...; v_L)
/// of per-block columns satisfies every constraint of the group iff it lies
/// in the nullspace of the returned ((L+2) N t) x ((L+1) M t) matrix.
Mat build_chain_system(const ChannelSet& ch, const ChainSchedule& sched, int group);

/// Sequential nullspace/pseudo-inverse form of the same group: an
/// (M t) x ((L+2)(M t - N t)) matrix whose nullspace parameterizes the
/// solutions through the per-constraint nullspace bases.
Mat build_xi_system(const ChannelSet& ch, const ChainSchedule& sched, int group,
                    const Tolerance& tol = {});

/// Chain scheme of depth l with dtilde streams per block, solved through the
/// stacked system. `instance` tags the block map and salts the seeded
/// selection used when dtilde is below the nullspace dimension.
PrecoderSet solve_chain(const ChannelSet& ch, int l, int dtilde, const Tolerance& tol = {},
                        int instance = 0);

/// The same scheme recovered through the nullspace/pseudo-inverse chain.
PrecoderSet solve_chain_xi(const ChannelSet& ch, int l, int dtilde, const Tolerance& tol = {},
                           int instance = 0);

/// Scale-invariant residual of every constraint of every group of one chain
/// instance inside `v`, relative to channel norm times block norm.
std::vector<double> chain_constraint_residuals(const ChannelSet& ch, const PrecoderSet& v,
                                               int instance);

/// Largest principal angle between matching blocks of two precoder sets
/// that share a block map.
double max_block_angle(const PrecoderSet& a, const PrecoderSet& b, const Tolerance& tol = {});

PrecoderSet synth_zero_forcing(const ChannelSet& ch, const Tolerance& tol = {});

/// Draws random decoders from `seed` and precodes every user into the
/// intersection of the nullspaces of the two projected cross channels.
std::pair<PrecoderSet, DecoderSet> synth_nullspace_intersection(const ChannelSet& ch, int d,
                                                                std::uint64_t seed,
                                                                const Tolerance& tol = {});

/// Runs solve_chain once per plan instance and concatenates the columns.
PrecoderSet synth_mixed(const ChannelSet& ch, const SchemePlan& plan, const Tolerance& tol = {});

}  // namespace ia3
