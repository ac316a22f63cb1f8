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

#include "ia3/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ia3 {

namespace {

int mod3(int x) { return ((x % kUsers) + kUsers) % kUsers; }

constexpr double kUnitNormTol = 1e-8;

void require_chain_regime(const ChannelSet& ch) {
  if (ch.tx_dim() <= ch.rx_dim())
    fail(ErrorKind::regime, "chain schemes need more transmit than receive dimensions; "
                            "use the reciprocal channel");
}

void require_group(int group) {
  if (group < 0 || group >= kUsers) fail(ErrorKind::invalid_input, "group index out of range");
}

void require_dtilde(const ChannelSet& ch, int l, int dtilde) {
  if (l < 0) fail(ErrorKind::invalid_input, "chain depth L must be non-negative");
  if (dtilde < 1) fail(ErrorKind::invalid_input, "dtilde must be at least 1");
  const long long cap = (l + 1LL) * ch.tx_dim() - (l + 2LL) * ch.rx_dim();
  if (dtilde > cap)
    fail(ErrorKind::infeasible, "dtilde=" + std::to_string(dtilde) +
                                    " exceeds the chain nullspace dimension " +
                                    std::to_string(std::max(0LL, cap)));
}

std::uint64_t selection_seed(const ChannelSet& ch, int instance, int group) {
  return derive_seed(ch.seed(), 1000ULL + 16ULL * static_cast<std::uint64_t>(instance) +
                                    static_cast<std::uint64_t>(group));
}

Mat normalize_columns(const Mat& block, const char* what) {
  Mat out = block;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    const double norm = out.col(c).norm();
    if (!(norm > 1e-13)) fail(ErrorKind::not_certifiable, std::string(what) + ": degenerate zero column");
    out.col(c) /= norm;
  }
  return out;
}

struct UserBlock {
  int block_index;
  int group;
  Mat columns;
};

// Splits each group's stacked solution into per-block precoders and places
// them into the users' matrices in block-index order.
PrecoderSet assemble_chain(const ChannelSet& ch, const ChainSchedule& sched,
                           const std::array<Mat, kUsers>& solutions, int instance) {
  const Eigen::Index tx = ch.tx_dim();
  std::array<std::vector<UserBlock>, kUsers> per_user;
  for (int g = 0; g < kUsers; ++g)
    for (int k = 0; k <= sched.l; ++k) {
      const ScheduledBlock& sb = sched.groups[g][k];
      per_user[sb.user].push_back(
          {sb.block_index, g + 1, normalize_columns(solutions[g].middleRows(k * tx, tx), "chain block")});
    }

  PrecoderSet out;
  for (int u = 0; u < kUsers; ++u) {
    auto& blocks = per_user[u];
    std::sort(blocks.begin(), blocks.end(),
              [](const UserBlock& a, const UserBlock& b) { return a.block_index < b.block_index; });
    Eigen::Index width = 0;
    for (const auto& b : blocks) width += b.columns.cols();
    out.v[u].resize(tx, width);
    Eigen::Index col = 0;
    for (const auto& b : blocks) {
      out.v[u].middleCols(col, b.columns.cols()) = b.columns;
      out.block_map.push_back({u, col, b.columns.cols(), instance, b.group, b.block_index, sched.l});
      col += b.columns.cols();
    }
  }
  return out;
}

double relative_residual(const Mat& system, const Mat& x) {
  const double denom = system.norm() * x.norm();
  return denom > 0.0 ? (system * x).norm() / denom : 0.0;
}

// Pieces of the sequential construction: block k is
// v_k = P_k v_{k-1} + Xi_k a_k with v_0 = Xi_0 a_0, and v_L must also equal
// Xi_last a_last.
struct XiChain {
  std::vector<Mat> xi;       // Xi_0 .. Xi_L
  std::vector<Mat> transfer; // P_1 .. P_L (index k-1)
  Mat xi_last;
  Mat system;
};

Mat full_row_rank_nullspace(const Mat& h, const Tolerance& tol) {
  if (rank(h, tol) != static_cast<std::size_t>(h.rows()))
    fail(ErrorKind::not_certifiable, "cross channel is not of full row rank");
  return nullspace_basis(h, tol);
}

XiChain build_xi_chain(const ChannelSet& ch, const ChainSchedule& sched, int group,
                       const Tolerance& tol) {
  require_chain_regime(ch);
  require_group(group);
  const int l = sched.l;
  const auto& users = sched.groups[group];
  const auto& rx = sched.receiver_of_constraint[group];
  const Eigen::Index tx = ch.tx_dim();

  XiChain chain;
  chain.xi.push_back(full_row_rank_nullspace(ch.h(rx[0], users[0].user), tol));
  for (int k = 1; k <= l; ++k) {
    const Mat& h_new = ch.h(rx[k], users[k].user);
    const Mat& h_prev = ch.h(rx[k], users[k - 1].user);
    chain.xi.push_back(full_row_rank_nullspace(h_new, tol));
    chain.transfer.push_back(pseudo_inverse(h_new, tol) * h_prev);
  }
  chain.xi_last = full_row_rank_nullspace(ch.h(rx[l + 1], users[l].user), tol);

  // Map every free parameter block onto v_L: T_k = P_L ... P_{k+1}.
  std::vector<Mat> to_last(l + 1);
  to_last[l] = Mat::Identity(tx, tx);
  for (int k = l; k >= 1; --k) to_last[k - 1] = to_last[k] * chain.transfer[k - 1];

  const Eigen::Index w = chain.xi_last.cols();
  chain.system.resize(tx, w * (l + 2));
  chain.system.leftCols(w) = -chain.xi_last;
  for (int k = 0; k <= l; ++k) chain.system.middleCols(w * (k + 1), w) = to_last[k] * chain.xi[k];
  return chain;
}

}  // namespace

ChainSchedule chain_block_schedule(int l) {
  if (l < 0) fail(ErrorKind::invalid_input, "chain depth L must be non-negative");
  ChainSchedule sched;
  sched.l = l;
  std::array<int, kUsers> seen{};
  for (int g = 0; g < kUsers; ++g) {
    for (int k = 0; k <= l; ++k) {
      const int user = mod3(g + k);
      sched.groups[g].push_back({user, ++seen[user]});
    }
    auto& rx = sched.receiver_of_constraint[g];
    rx.push_back(mod3(g + 1));
    for (int k = 1; k <= l; ++k) rx.push_back(mod3(g + k + 1));
    rx.push_back(mod3(g + l - 1));
  }
  return sched;
}

void validate_precoders(const ChannelSet& ch, const PrecoderSet& v) {
  for (int u = 0; u < kUsers; ++u) {
    const Mat& p = v.v[u];
    if (p.rows() != ch.tx_dim())
      fail(ErrorKind::invalid_input, "precoder of user " + std::to_string(u + 1) + " has " +
                                         std::to_string(p.rows()) + " rows, expected " +
                                         std::to_string(ch.tx_dim()));
    if (!p.allFinite()) fail(ErrorKind::invalid_input, "precoder has non-finite entries");
    for (Eigen::Index c = 0; c < p.cols(); ++c)
      if (std::abs(p.col(c).norm() - 1.0) > kUnitNormTol)
        fail(ErrorKind::invalid_input, "precoder columns must have unit norm");

    std::vector<BlockInfo> mine;
    for (const auto& b : v.block_map)
      if (b.user == u) mine.push_back(b);
    std::sort(mine.begin(), mine.end(),
              [](const BlockInfo& a, const BlockInfo& b) { return a.col_begin < b.col_begin; });
    Eigen::Index next = 0;
    for (const auto& b : mine) {
      if (b.col_begin != next || b.width < 0)
        fail(ErrorKind::invalid_input, "block map does not partition the precoder columns");
      next += b.width;
    }
    if (next != p.cols()) fail(ErrorKind::invalid_input, "block map does not cover every precoder column");
  }
  for (const auto& b : v.block_map)
    if (b.user < 0 || b.user >= kUsers) fail(ErrorKind::invalid_input, "block map user out of range");
}

Mat build_chain_system(const ChannelSet& ch, const ChainSchedule& sched, int group) {
  require_chain_regime(ch);
  require_group(group);
  const int l = sched.l;
  const auto& users = sched.groups[group];
  const auto& rx = sched.receiver_of_constraint[group];
  const Eigen::Index nr = ch.rx_dim();
  const Eigen::Index nt = ch.tx_dim();

  Mat c = Mat::Zero(nr * (l + 2), nt * (l + 1));
  c.block(0, 0, nr, nt) = ch.h(rx[0], users[0].user);
  for (int k = 1; k <= l; ++k) {
    c.block(nr * k, nt * k, nr, nt) = ch.h(rx[k], users[k].user);
    c.block(nr * k, nt * (k - 1), nr, nt) = -ch.h(rx[k], users[k - 1].user);
  }
  c.block(nr * (l + 1), nt * l, nr, nt) = ch.h(rx[l + 1], users[l].user);
  return c;
}

Mat build_xi_system(const ChannelSet& ch, const ChainSchedule& sched, int group, const Tolerance& tol) {
  return build_xi_chain(ch, sched, group, tol).system;
}

PrecoderSet solve_chain(const ChannelSet& ch, int l, int dtilde, const Tolerance& tol, int instance) {
  require_chain_regime(ch);
  require_dtilde(ch, l, dtilde);
  const ChainSchedule sched = chain_block_schedule(l);
  std::array<Mat, kUsers> solutions;
  for (int g = 0; g < kUsers; ++g) {
    const Mat system = build_chain_system(ch, sched, g);
    const Mat basis = nullspace_basis(system, tol);
    if (basis.cols() < dtilde)
      fail(ErrorKind::infeasible, "group " + std::to_string(g + 1) + " nullspace has dimension " +
                                      std::to_string(basis.cols()) + " < dtilde=" + std::to_string(dtilde));
    solutions[g] = select_subspace(basis, dtilde, selection_seed(ch, instance, g));
    if (relative_residual(system, solutions[g]) > tol.leakage)
      fail(ErrorKind::not_certifiable, "chain constraints not met to tolerance");
  }
  return assemble_chain(ch, sched, solutions, instance);
}

PrecoderSet solve_chain_xi(const ChannelSet& ch, int l, int dtilde, const Tolerance& tol, int instance) {
  require_chain_regime(ch);
  require_dtilde(ch, l, dtilde);
  const ChainSchedule sched = chain_block_schedule(l);
  const Eigen::Index tx = ch.tx_dim();
  std::array<Mat, kUsers> solutions;
  for (int g = 0; g < kUsers; ++g) {
    const XiChain chain = build_xi_chain(ch, sched, g, tol);
    const Mat basis = nullspace_basis(chain.system, tol);
    if (basis.cols() < dtilde)
      fail(ErrorKind::infeasible, "group " + std::to_string(g + 1) + " nullspace has dimension " +
                                      std::to_string(basis.cols()) + " < dtilde=" + std::to_string(dtilde));
    const Mat coeffs = select_subspace(basis, dtilde, selection_seed(ch, instance, g));
    const Eigen::Index w = chain.xi_last.cols();

    Mat stacked(tx * (l + 1), dtilde);
    Mat block = chain.xi[0] * coeffs.middleRows(w, w);
    stacked.topRows(tx) = block;
    for (int k = 1; k <= l; ++k) {
      block = chain.transfer[k - 1] * block + chain.xi[k] * coeffs.middleRows(w * (k + 1), w);
      stacked.middleRows(tx * k, tx) = block;
    }
    if (relative_residual(chain.system, coeffs) > tol.leakage)
      fail(ErrorKind::not_certifiable, "pseudo-inverse chain does not close onto the final nullspace");
    solutions[g] = std::move(stacked);
  }
  return assemble_chain(ch, sched, solutions, instance);
}

std::vector<double> chain_constraint_residuals(const ChannelSet& ch, const PrecoderSet& v, int instance) {
  int l = -1;
  for (const auto& b : v.block_map)
    if (b.instance == instance && b.group > 0) l = b.l;
  if (l < 0) fail(ErrorKind::invalid_input, "no chain blocks for instance " + std::to_string(instance));
  const ChainSchedule sched = chain_block_schedule(l);

  auto find_block = [&](int group, const ScheduledBlock& sb) -> Mat {
    for (const auto& b : v.block_map)
      if (b.instance == instance && b.group == group + 1 && b.user == sb.user &&
          b.block_index == sb.block_index)
        return v.v[sb.user].middleCols(b.col_begin, b.width);
    fail(ErrorKind::invalid_input, "block map is missing a chain block");
  };
  auto null_residual = [](const Mat& h, const Mat& x) {
    return (h * x).norm() / (h.norm() * x.norm());
  };

  std::vector<double> out;
  for (int g = 0; g < kUsers; ++g) {
    const auto& users = sched.groups[g];
    const auto& rx = sched.receiver_of_constraint[g];
    std::vector<Mat> blocks;
    for (const auto& sb : users) blocks.push_back(find_block(g, sb));

    out.push_back(null_residual(ch.h(rx[0], users[0].user), blocks[0]));
    for (int k = 1; k <= l; ++k) {
      const Mat& h_new = ch.h(rx[k], users[k].user);
      const Mat& h_prev = ch.h(rx[k], users[k - 1].user);
      double worst = 0.0;
      for (Eigen::Index c = 0; c < blocks[k].cols(); ++c) {
        const Vec a = h_new * blocks[k].col(c);
        const Vec b = h_prev * blocks[k - 1].col(c);
        const cplx scale = b.squaredNorm() > 0.0 ? b.dot(a) / b.squaredNorm() : cplx(0.0);
        worst = std::max(worst, (a - scale * b).norm() / (h_new.norm() * blocks[k].col(c).norm()));
      }
      out.push_back(worst);
    }
    out.push_back(null_residual(ch.h(rx[l + 1], users[l].user), blocks[l]));
  }
  return out;
}

double max_block_angle(const PrecoderSet& a, const PrecoderSet& b, const Tolerance& tol) {
  if (a.block_map.size() != b.block_map.size())
    fail(ErrorKind::invalid_input, "precoder sets have different block maps");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.block_map.size(); ++k) {
    const BlockInfo& x = a.block_map[k];
    const BlockInfo& y = b.block_map[k];
    if (x.user != y.user || x.col_begin != y.col_begin || x.width != y.width ||
        x.group != y.group || x.block_index != y.block_index)
      fail(ErrorKind::invalid_input, "precoder sets have different block maps");
    const Mat bx = range_basis(a.v[x.user].middleCols(x.col_begin, x.width), tol);
    const Mat by = range_basis(b.v[y.user].middleCols(y.col_begin, y.width), tol);
    worst = std::max(worst, max_principal_angle(bx, by, tol));
  }
  return worst;
}

PrecoderSet synth_zero_forcing(const ChannelSet& ch, const Tolerance& tol) {
  if (ch.tx_dim() < 3 * ch.rx_dim()) fail(ErrorKind::regime, "zero-forcing needs M >= 3N");
  const Eigen::Index nr = ch.rx_dim();
  PrecoderSet out;
  for (int u = 0; u < kUsers; ++u) {
    Mat stacked(2 * nr, ch.tx_dim());
    stacked << ch.h(mod3(u + 1), u), ch.h(mod3(u + 2), u);
    const Mat basis = nullspace_basis(stacked, tol);
    out.v[u] = select_subspace(basis, nr, selection_seed(ch, 0, u));
    out.block_map.push_back({u, 0, nr, 0, 0, 1, 0});
  }
  return out;
}

std::pair<PrecoderSet, DecoderSet> synth_nullspace_intersection(const ChannelSet& ch, int d,
                                                                std::uint64_t seed,
                                                                const Tolerance& tol) {
  if (ch.m() < 2 * ch.n() || ch.m() >= 3 * ch.n())
    fail(ErrorKind::regime, "nullspace intersection needs 2N <= M < 3N");
  if (d < 1) fail(ErrorKind::invalid_input, "stream count must be at least 1");
  if (d > ch.tx_dim() - 2 * d)
    fail(ErrorKind::infeasible, "d=" + std::to_string(d) + " exceeds the " +
                                    std::to_string(std::max<Eigen::Index>(0, ch.tx_dim() - 2 * d)) +
                                    " dimensions left by the two projected cross channels");
  if (d > ch.rx_dim()) fail(ErrorKind::infeasible, "d exceeds the receive dimension");

  DecoderSet dec;
  for (int i = 0; i < kUsers; ++i) {
    const Mat draw = complex_gaussian(ch.rx_dim(), d, derive_seed(seed, 100 + i));
    Eigen::HouseholderQR<Mat> qr(draw);
    dec.u[i] = qr.householderQ() * Mat::Identity(ch.rx_dim(), d);
  }

  PrecoderSet pre;
  for (int i = 0; i < kUsers; ++i) {
    const int j = mod3(i + 1);
    const int k = mod3(i + 2);
    Mat stacked(2 * d, ch.tx_dim());
    stacked << dec.u[j].adjoint() * ch.h(j, i), dec.u[k].adjoint() * ch.h(k, i);
    const Mat basis = nullspace_basis(stacked, tol);
    if (basis.cols() < d) fail(ErrorKind::infeasible, "nullspace intersection is too small");
    pre.v[i] = select_subspace(basis, d, derive_seed(seed, 200 + i));
    pre.block_map.push_back({i, 0, d, 0, 0, 1, 0});
  }
  return {std::move(pre), std::move(dec)};
}

PrecoderSet synth_mixed(const ChannelSet& ch, const SchemePlan& plan, const Tolerance& tol) {
  validate_plan(plan);
  if (ch.m() != plan.design_m() || ch.n() != plan.design_n() || ch.t() != plan.t)
    fail(ErrorKind::invalid_input, "plan does not match the channel dimensions");
  PrecoderSet out;
  for (auto& v : out.v) v.resize(ch.tx_dim(), 0);
  for (std::size_t idx = 0; idx < plan.instances.size(); ++idx) {
    const ChainInstance& inst = plan.instances[idx];
    const PrecoderSet part = solve_chain(ch, inst.l, inst.dtilde, tol, static_cast<int>(idx));
    std::array<Eigen::Index, kUsers> offset{};
    for (int u = 0; u < kUsers; ++u) {
      offset[u] = out.v[u].cols();
      Mat joined(ch.tx_dim(), offset[u] + part.v[u].cols());
      joined << out.v[u], part.v[u];
      out.v[u] = std::move(joined);
    }
    for (BlockInfo b : part.block_map) {
      b.col_begin += offset[b.user];
      out.block_map.push_back(b);
    }
  }
  out.plan = plan;
  return out;
}

}  // namespace ia3
